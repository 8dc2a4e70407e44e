#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "bellkit/states.hpp"
#include "test_helpers.hpp"

using namespace bellkit;

namespace {

double binomial(int n, int k) {
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out *= static_cast<double>(n - k + i) / i;
    return out;
}

}  // namespace

TEST_CASE("dicke_state amplitudes") {
    SUBCASE("two qubits, one excitation") {
        const StateVector s = dicke_state(2, 1);
        const double a = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(s.amplitudes[0b01] - a) < 1e-15);
        CHECK(std::abs(s.amplitudes[0b10] - a) < 1e-15);
        CHECK(std::abs(s.amplitudes[0b00]) == 0.0);
        CHECK(std::abs(s.amplitudes[0b11]) == 0.0);
    }
    SUBCASE("five qubits, two excitations") {
        const StateVector s = dicke_state(5, 2);
        int nonzero = 0;
        for (int b = 0; b < s.dim(); ++b)
            if (std::abs(s.amplitudes[b]) > 0) {
                ++nonzero;
                CHECK(std::abs(s.amplitudes[b] - 1.0 / std::sqrt(10.0)) < 1e-15);
            }
        CHECK(nonzero == 10);
        CHECK(nonzero == static_cast<int>(binomial(5, 2)));
    }
    SUBCASE("no excitations") {
        const StateVector s = dicke_state(3, 0);
        CHECK(std::abs(s.amplitudes[0] - 1.0) < 1e-15);
        CHECK(std::abs(s.amplitudes.tail(7).norm()) == 0.0);
    }
    SUBCASE("normalization") {
        for (int n = 1; n <= 8; ++n)
            for (int e = 0; e <= n; ++e) CHECK(is_valid_state(dicke_state(n, e)));
    }
    SUBCASE("parameter errors") {
        CHECK_THROWS_AS(dicke_state(5, 6), std::invalid_argument);
        CHECK_THROWS_AS(dicke_state(5, -1), std::invalid_argument);
        CHECK_THROWS_AS(dicke_state(0, 0), std::invalid_argument);
        CHECK_THROWS_AS(dicke_state(9, 1), std::invalid_argument);
    }
}

TEST_CASE("flip_all") {
    SUBCASE("maps Dicke to anti-Dicke") {
        const StateVector a = flip_all(dicke_state(3, 1));
        const StateVector b = dicke_state(3, 2);
        CHECK((a.amplitudes - b.amplitudes).norm() < 1e-15);
    }
    SUBCASE("all zeros to all ones") {
        StateVector zero;
        zero.num_qubits = 3;
        zero.amplitudes = Eigen::VectorXcd::Zero(8);
        zero.amplitudes[0] = 1.0;
        const StateVector flipped = flip_all(zero);
        CHECK(std::abs(flipped.amplitudes[7] - 1.0) < 1e-15);
    }
    SUBCASE("involution on random states") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 100; ++i) {
            const StateVector s = test::random_state(1 + i % 5, rng);
            const StateVector t = flip_all(flip_all(s));
            CHECK((s.amplitudes - t.amplitudes).norm() < 1e-14);
        }
    }
}

TEST_CASE("dicke_mixture") {
    SUBCASE("rank two with eigenvalues one half") {
        const DensityMatrix rho = dicke_mixture(5, 2);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries, Eigen::EigenvaluesOnly);
        int half = 0, zero = 0;
        for (int i = 0; i < rho.dim(); ++i) {
            if (std::abs(es.eigenvalues()[i] - 0.5) < 1e-12) ++half;
            if (std::abs(es.eigenvalues()[i]) < 1e-12) ++zero;
        }
        CHECK(half == 2);
        CHECK(zero == rho.dim() - 2);
    }
    SUBCASE("mixes the stated projectors") {
        for (auto [n, e] : {std::pair{5, 1}, {7, 3}}) {
            const DensityMatrix rho = dicke_mixture(n, e);
            const DensityMatrix a = projector(dicke_state(n, e));
            const DensityMatrix b = projector(dicke_state(n, n - e));
            const Eigen::MatrixXcd expect = 0.5 * (a.entries + b.entries);
            CHECK((rho.entries - expect).cwiseAbs().maxCoeff() < 1e-15);
        }
    }
    SUBCASE("state invariants for the five standard mixtures") {
        for (auto [n, e] :
             {std::pair{5, 1}, {5, 2}, {7, 1}, {7, 2}, {7, 3}}) {
            const DensityMatrix rho = dicke_mixture(n, e);
            CHECK_NOTHROW(validate_density_matrix(rho));
            // permutation symmetry via adjacent swaps (they generate S_N)
            for (int q = 1; q < n; ++q) {
                const DensityMatrix swapped = swap_qubits(rho, q, q + 1);
                CHECK((swapped.entries - rho.entries).cwiseAbs().maxCoeff() < 1e-14);
            }
        }
    }
    SUBCASE("spec validation") {
        CHECK_THROWS_AS(dicke_mixture(4, 1), std::invalid_argument);  // even N
        CHECK_THROWS_AS(dicke_mixture(5, 0), std::invalid_argument);
        CHECK_THROWS_AS(dicke_mixture(5, 3), std::invalid_argument);  // above (N-1)/2
        CHECK_NOTHROW(dicke_mixture(7, 3));
    }
}

TEST_CASE("mix_with_white_noise") {
    const DensityMatrix rho = dicke_mixture(5, 2);
    SUBCASE("p = 1 leaves the state unchanged") {
        const DensityMatrix out = mix_with_white_noise(rho, 1.0);
        CHECK((out.entries - rho.entries).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("p = 0 gives the maximally mixed state") {
        const DensityMatrix out = mix_with_white_noise(rho, 0.0);
        for (int r = 0; r < out.dim(); ++r)
            for (int c = 0; c < out.dim(); ++c) {
                if (r == c)
                    CHECK(std::abs(out.entries(r, c) - 1.0 / 32.0) < 1e-15);
                else
                    CHECK(std::abs(out.entries(r, c)) == 0.0);
            }
    }
    SUBCASE("affine in p") {
        const DensityMatrix p03 = mix_with_white_noise(rho, 0.3);
        const DensityMatrix p05 = mix_with_white_noise(rho, 0.5);
        const DensityMatrix p00 = mix_with_white_noise(rho, 0.0);
        const Eigen::MatrixXcd combo = 0.6 * p05.entries + 0.4 * p00.entries;
        CHECK((p03.entries - combo).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("parameter errors") {
        CHECK_THROWS_AS(mix_with_white_noise(rho, -0.1), std::invalid_argument);
        CHECK_THROWS_AS(mix_with_white_noise(rho, 1.1), std::invalid_argument);
    }
}

TEST_CASE("partial_trace") {
    SUBCASE("six-qubit Dicke state reduces to the five-qubit mixture") {
        const DensityMatrix six = projector(dicke_state(6, 3));
        const DensityMatrix reduced = partial_trace(six, 1);
        const DensityMatrix expect = dicke_mixture(5, 2);
        CHECK((reduced.entries - expect.entries).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("product state recovers the factor") {
        std::mt19937_64 rng(3);
        const DensityMatrix tau = test::random_density_matrix(2, rng);
        DensityMatrix prod;  // |0><0| on qubit 1 times tau
        prod.num_qubits = 3;
        prod.entries = Eigen::MatrixXcd::Zero(8, 8);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) prod.entries(r, c) = tau.entries(r, c);
        const DensityMatrix reduced = partial_trace(prod, 1);
        CHECK((reduced.entries - tau.entries).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("trace preserved for every traced qubit") {
        std::mt19937_64 rng(4);
        const DensityMatrix rho = test::random_density_matrix(4, rng);
        for (int q = 1; q <= 4; ++q) {
            const DensityMatrix reduced = partial_trace(rho, q);
            CHECK(std::abs(reduced.entries.trace().real() - 1.0) < 1e-13);
            CHECK(reduced.num_qubits == 3);
        }
    }
    SUBCASE("index errors") {
        const DensityMatrix rho = white_noise(3);
        CHECK_THROWS_AS(partial_trace(rho, 0), std::out_of_range);
        CHECK_THROWS_AS(partial_trace(rho, 4), std::out_of_range);
    }
}

TEST_CASE("density matrix validation catches bad inputs") {
    DensityMatrix bad = white_noise(2);
    bad.entries(0, 1) = 0.5;  // not Hermitian
    CHECK_THROWS_AS(validate_density_matrix(bad), std::invalid_argument);

    DensityMatrix scaled = white_noise(2);
    scaled.entries *= 2.0;  // trace 2
    CHECK_THROWS_AS(validate_density_matrix(scaled), std::invalid_argument);

    DensityMatrix negative = white_noise(2);
    negative.entries(0, 0) = -0.25;
    negative.entries(1, 1) = 0.75;  // trace fixed, negative eigenvalue
    CHECK_THROWS_AS(validate_density_matrix(negative), std::invalid_argument);
}
