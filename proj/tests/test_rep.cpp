#include <doctest.h>

#include "awlab/rep.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

using namespace awlab;
using cd = std::complex<double>;

namespace {

    rep::RepSpec two_block() {
        return rep::parse_rep_spec(
            R"({"blocks":[{"frequency":{"num":1,"den":1,"log_base":2},"multiplicity":1},)"
            R"({"frequency":{"num":1,"den":1,"log_base":3},"multiplicity":1}]})");
    }

    Eigen::VectorXcd random_vec(int n, std::uint64_t seed) {
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i)
            v(i) = cd(std::sin(1.0 + static_cast<double>(seed) + i),
                      std::cos(2.0 + static_cast<double>(seed) + 3.0 * i));
        return v;
    }

} // namespace

TEST_SUITE("rep") {

    TEST_CASE("parse / serialize round trip") {
        const rep::RepSpec spec = two_block();
        CHECK(spec.trivial_dim == 0);
        REQUIRE(spec.blocks.size() == 2);
        CHECK(spec.blocks[0].frequency == doctest::Approx(std::log(2.0)).epsilon(1e-15));
        CHECK(spec.blocks[1].frequency == doctest::Approx(std::log(3.0)).epsilon(1e-15));
        CHECK(spec.complex_dim() == 4);

        const rep::RepSpec again = rep::parse_rep_spec(rep::rep_to_json(spec));
        CHECK(again.blocks.size() == spec.blocks.size());
        CHECK(again.blocks[0].frequency == spec.blocks[0].frequency);
        CHECK(again.blocks[1].frequency == spec.blocks[1].frequency);
        CHECK(again.trivial_dim == spec.trivial_dim);
    }

    TEST_CASE("parse validation and merging") {
        CHECK_THROWS_AS((void)rep::parse_rep_spec("not json"), std::invalid_argument);
        CHECK_THROWS_AS((void)rep::parse_rep_spec(R"({"trivial_dim":0})"), std::invalid_argument);
        CHECK_THROWS_AS((void)rep::parse_rep_spec(
                            R"({"blocks":[{"frequency":-1.0,"multiplicity":1}]})"),
                        std::invalid_argument);
        CHECK_THROWS_AS((void)rep::parse_rep_spec(
                            R"({"blocks":[{"frequency":1.0,"multiplicity":0}]})"),
                        std::invalid_argument);
        const rep::RepSpec merged = rep::parse_rep_spec(
            R"({"blocks":[{"frequency":1.0,"multiplicity":1},{"frequency":1.0,"multiplicity":2}]})");
        REQUIRE(merged.blocks.size() == 1);
        CHECK(merged.blocks[0].multiplicity == 3);
    }

    TEST_CASE("classification table") {
        const rep::TypeLabel t1 = rep::classify(rep::parse_rep_spec(R"({"trivial_dim":3})"));
        CHECK(t1.type == rep::FactorType::II_1);

        const rep::TypeLabel t2 = rep::classify(rep::parse_rep_spec(
            R"({"blocks":[{"frequency":{"num":1,"den":1,"log_base":2},"multiplicity":1}]})"));
        CHECK(t2.type == rep::FactorType::III_lambda);
        CHECK(t2.lambda == doctest::Approx(0.5).epsilon(1e-15));
        REQUIRE(t2.s_generators.size() == 1);
        CHECK(t2.s_generators[0] == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(t2.method == "exact-rational");

        const rep::TypeLabel t3 = rep::classify(two_block());
        CHECK(t3.type == rep::FactorType::III_1);

        const rep::TypeLabel t4 = rep::classify(rep::parse_rep_spec(R"({"trivial_dim":1})"));
        CHECK(t4.type == rep::FactorType::NonFactor_dim1);
    }

    TEST_CASE("classification from float frequencies") {
        // ln 2 and ln 4 generate the same group as ln 2: III_{1/2}.
        const double l2 = std::log(2.0);
        rep::RepSpec spec;
        spec.blocks.push_back({l2, 1, std::nullopt});
        spec.blocks.push_back({2.0 * l2, 1, std::nullopt});
        const rep::TypeLabel t = rep::classify(spec);
        CHECK(t.type == rep::FactorType::III_lambda);
        CHECK(t.lambda == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(t.method == "float-ratio");

        // Frequencies with an irrational ratio give a dense group: III_1.
        rep::RepSpec dense;
        dense.blocks.push_back({1.0, 1, std::nullopt});
        dense.blocks.push_back({M_PI, 1, std::nullopt});
        CHECK(rep::classify(dense).type == rep::FactorType::III_1);
    }

    TEST_CASE("declared-continuous short-circuits to III_1") {
        rep::RepSpec spec = two_block();
        spec.declared_continuous = true;
        const rep::TypeLabel t = rep::classify(spec);
        CHECK(t.type == rep::FactorType::III_1);
        CHECK(t.method == "declared-continuous");
        CHECK_FALSE(t.almost_periodic);
    }

    TEST_CASE("generator spectrum is inversion-symmetric") {
        const rep::SpectralData sd = rep::generator_spectrum(two_block());
        for (const auto& [a, m] : sd.eigen_pairs) {
            bool found = false;
            for (const auto& [b, mb] : sd.eigen_pairs)
                if (std::abs(b - 1.0 / a) < 1e-12 && mb == m) found = true;
            CHECK(found);
        }
    }

    TEST_CASE("A and U matrices: spectra, unitarity, group law") {
        const rep::RepSpec spec = two_block();
        const int n = spec.complex_dim();
        const Eigen::MatrixXcd A = rep::A_matrix(spec);

        // Plane eigenvectors diagonalize A with eigenvalues e^{±θ}.
        for (int blk = 0; blk < 2; ++blk) {
            const double th = spec.blocks[static_cast<std::size_t>(blk)].frequency;
            for (const int which : {+1, -1}) {
                const Eigen::VectorXcd v = rep::plane_eigenvector(spec, blk, 0, which);
                CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-14));
                const double mu = std::exp(which * th);
                CHECK((A * v - mu * v).norm() < 1e-12);
            }
        }

        const Eigen::MatrixXcd Us = rep::U_matrix(spec, 0.7);
        const Eigen::MatrixXcd Ut = rep::U_matrix(spec, -1.3);
        const Eigen::MatrixXcd Ust = rep::U_matrix(spec, 0.7 - 1.3);
        CHECK((Us * Us.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((Us * Ut - Ust).cwiseAbs().maxCoeff() < 1e-12);

        // a_power_apply agrees with the materialized matrix.
        const Eigen::VectorXcd x = random_vec(n, 5);
        const cd z(0.3, -0.8);
        CHECK((rep::a_power_apply(spec, z, x) - rep::A_power_matrix(spec, z) * x).norm() < 1e-12);
    }

    TEST_CASE("embed is isometric into the T-fixed real subspace") {
        const rep::RepSpec spec = two_block();
        const int n = spec.complex_dim();
        for (std::uint64_t s = 0; s < 5; ++s) {
            Eigen::VectorXd xi(n);
            for (int i = 0; i < n; ++i) xi(i) = std::sin(0.7 * (i + 1) + static_cast<double>(s));
            const Eigen::VectorXcd zeta = rep::embed(spec, xi);
            CHECK(zeta.norm() == doctest::Approx(xi.norm()).epsilon(1e-13));
            CHECK((rep::involution_T(spec, zeta) - zeta).norm() < 1e-12);
        }
    }

    TEST_CASE("T is a conjugate-linear involution intertwining A^{iz}") {
        const rep::RepSpec spec = two_block();
        const int n = spec.complex_dim();
        const Eigen::VectorXcd v = random_vec(n, 11);
        CHECK((rep::involution_T(spec, rep::involution_T(spec, v)) - v).norm() < 1e-12);

        // T(c·v) = conj(c)·T(v).
        const cd c(0.4, 1.7);
        CHECK((rep::involution_T(spec, c * v) - std::conj(c) * rep::involution_T(spec, v)).norm() <
              1e-12);

        // A^{i z̄} T = T A^{iz}.
        const cd z(0.6, 0.25);
        const Eigen::VectorXcd lhs =
            rep::a_power_apply(spec, cd(0.0, 1.0) * std::conj(z), rep::involution_T(spec, v));
        const Eigen::VectorXcd rhs =
            rep::involution_T(spec, rep::a_power_apply(spec, cd(0.0, 1.0) * z, v));
        CHECK((lhs - rhs).norm() < 1e-12);
    }
}
