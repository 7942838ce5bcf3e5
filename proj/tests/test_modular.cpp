#include <doctest.h>

#include "awlab/modular.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace awlab;
using cd = std::complex<double>;

namespace {

    rep::RepSpec lambda_half() {
        return rep::parse_rep_spec(
            R"({"blocks":[{"frequency":{"num":1,"den":1,"log_base":2},"multiplicity":1}]})");
    }

    rep::RepSpec two_block() {
        return rep::parse_rep_spec(
            R"({"blocks":[{"frequency":{"num":1,"den":1,"log_base":2},"multiplicity":1},)"
            R"({"frequency":{"num":1,"den":1,"log_base":3},"multiplicity":1}]})");
    }

    rep::RepSpec trivial2() { return rep::parse_rep_spec(R"({"trivial_dim":2})"); }

    Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
        Eigen::MatrixXcd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = cd(std::sin(1.0 + static_cast<double>(seed) + 7.0 * i + j),
                             std::cos(2.0 + static_cast<double>(seed) + i + 3.0 * j));
        return Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
    }

    double dense_dist(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
        return (a - b).cwiseAbs().maxCoeff();
    }

} // namespace

TEST_SUITE("modular") {

    TEST_CASE("second quantization is a unitary representation") {
        const fock::FockSpace F = fock::FockSpace::build(2, 3);
        const Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(2, 2);
        const Eigen::MatrixXcd u = random_unitary(2, 11);
        const Eigen::MatrixXcd w = random_unitary(2, 23);

        const Eigen::MatrixXcd gi = modular::second_quantize(F, id2, "id").to_dense();
        CHECK(dense_dist(gi, Eigen::MatrixXcd::Identity(F.total_dim, F.total_dim)) == 0.0);

        const Eigen::MatrixXcd gu = modular::second_quantize(F, u, "u").to_dense();
        const Eigen::MatrixXcd gw = modular::second_quantize(F, w, "w").to_dense();
        const Eigen::MatrixXcd guw = modular::second_quantize(F, u * w, "uw").to_dense();
        CHECK(dense_dist(gu * gw, guw) < 1e-13);

        // Γ(u) is unitary and fixes the vacuum.
        CHECK(dense_dist(gu * gu.adjoint(),
                         Eigen::MatrixXcd::Identity(F.total_dim, F.total_dim)) < 1e-13);
        Eigen::VectorXcd omega = Eigen::VectorXcd::Zero(F.total_dim);
        omega(0) = 1.0;
        CHECK((gu * omega - omega).norm() < 1e-14);
    }

    TEST_CASE("flow construction checks dimension") {
        const fock::FockSpace F3 = fock::FockSpace::build(3, 3);
        CHECK_THROWS_AS((void)modular::make_flow(lambda_half(), F3), std::invalid_argument);
    }

    TEST_CASE("gamma_t group law and sigma_t homomorphism") {
        const rep::RepSpec spec = lambda_half();
        const fock::FockSpace F = fock::FockSpace::build(2, 3);
        const modular::ModularFlow flow = modular::make_flow(spec, F);

        const Eigen::MatrixXcd g1 = modular::gamma_t(flow, 0.37).to_dense();
        const Eigen::MatrixXcd g2 = modular::gamma_t(flow, -1.21).to_dense();
        const Eigen::MatrixXcd g12 = modular::gamma_t(flow, 0.37 - 1.21).to_dense();
        CHECK(dense_dist(g1 * g2, g12) < 1e-13);

        const Eigen::VectorXcd z1 = rep::embed(spec, Eigen::Vector2d(1.0, 0.0));
        const Eigen::VectorXcd z2 = rep::embed(spec, Eigen::Vector2d(0.0, 1.0));
        const fock::FockOperator x = fock::creation(F, z1);
        const fock::FockOperator y = fock::field_operator(F, z2);
        const double t = 0.8;
        const Eigen::MatrixXcd lhs =
            modular::modular_apply(flow, fock::op_mul(x, y), t).to_dense();
        const Eigen::MatrixXcd rhs = modular::modular_apply(flow, x, t).to_dense() *
                                     modular::modular_apply(flow, y, t).to_dense();
        CHECK(dense_dist(lhs, rhs) < 1e-13);
    }

    TEST_CASE("covariance: sigma_t moves fields along the orbit") {
        const rep::RepSpec spec = lambda_half();
        const fock::FockSpace F = fock::FockSpace::build(2, 4);
        const modular::ModularFlow flow = modular::make_flow(spec, F);

        for (const double t : {-1.0, 0.3, 2.5}) {
            const Eigen::VectorXd xi = Eigen::Vector2d(0.6, -0.8);
            const fock::FockOperator s = fock::semicircular_field(F, spec, xi);
            const Eigen::VectorXcd moved = rep::U_matrix(spec, t) * rep::embed(spec, xi);
            const fock::FockOperator target = fock::field_operator(F, moved);
            CHECK(dense_dist(modular::modular_apply(flow, s, t).to_dense(),
                             target.to_dense()) < 1e-12);
        }
    }

    TEST_CASE("the vacuum state is flow invariant") {
        const rep::RepSpec spec = two_block();
        const fock::FockSpace F = fock::FockSpace::build(4, 3);
        const modular::ModularFlow flow = modular::make_flow(spec, F);
        const fock::FockOperator s1 =
            fock::semicircular_field(F, spec, Eigen::Vector4d(1, 0, 0, 0));
        const fock::FockOperator s2 =
            fock::semicircular_field(F, spec, Eigen::Vector4d(0, 0, 1, 0));
        const fock::FockOperator x = fock::op_mul(s1, fock::op_mul(s2, s1));
        const cd base = fock::vacuum_expectation(x).value;
        for (const double t : modular::default_t_grid()) {
            const cd moved =
                fock::vacuum_expectation(modular::modular_apply(flow, x, t)).value;
            CHECK(std::abs(moved - base) < 1e-13);
        }
    }

    TEST_CASE("letter-wise continuation matches Ad Gamma at real time") {
        const rep::RepSpec spec = lambda_half();
        const fock::FockSpace F = fock::FockSpace::build(2, 4);
        const modular::ModularFlow flow = modular::make_flow(spec, F);
        const Eigen::VectorXcd z1 = rep::embed(spec, Eigen::Vector2d(1.0, 0.0));
        const Eigen::VectorXcd z2 = rep::embed(spec, Eigen::Vector2d(0.3, 0.7));
        const fock::LetterExpr w =
            fock::le_mul(fock::le_field(z1), fock::le_create(z2));

        for (const double t : {-0.9, 0.45}) {
            const Eigen::MatrixXcd via_letters =
                fock::le_to_dense(F, modular::modular_letters(flow, w, cd(t, 0.0)));
            const Eigen::MatrixXcd g = modular::gamma_t(flow, t).to_dense();
            const Eigen::MatrixXcd via_ad = g * fock::le_to_dense(F, w) * g.adjoint();
            CHECK(dense_dist(via_letters, via_ad) < 1e-12);
        }
    }

    TEST_CASE("analytic fields reduce to 2s at z = 0 on the real subspace") {
        const rep::RepSpec spec = lambda_half();
        const fock::FockSpace F = fock::FockSpace::build(2, 4);
        const modular::ModularFlow flow = modular::make_flow(spec, F);
        const Eigen::VectorXcd zeta = rep::embed(spec, Eigen::Vector2d(0.6, 0.8));

        const Eigen::MatrixXcd xf = modular::analytic_field(flow, zeta, cd(0, 0)).to_dense();
        const Eigen::MatrixXcd sf =
            fock::op_scale(2.0, fock::field_operator(F, zeta)).to_dense();
        CHECK(dense_dist(xf, sf) < 1e-13);

        // Letter and operator forms agree at complex z.
        const cd z(0.4, -0.3);
        CHECK(dense_dist(
                  fock::le_to_dense(F, modular::analytic_field_letters(flow, zeta, z)),
                  modular::analytic_field(flow, zeta, z).to_dense()) < 1e-12);
    }

    TEST_CASE("KMS boundary condition holds for quadratic words") {
        const std::vector<rep::RepSpec> reps = {trivial2(), lambda_half(), two_block()};
        for (const rep::RepSpec& spec : reps) {
            const int d = static_cast<int>(spec.complex_dim());
            const fock::FockSpace F = fock::FockSpace::build(d, 6);
            const modular::ModularFlow flow = modular::make_flow(spec, F);

            std::vector<fock::LetterExpr> fields;
            const int dr = static_cast<int>(spec.real_dim());
            for (int i = 0; i < dr; ++i) {
                Eigen::VectorXd e = Eigen::VectorXd::Zero(dr);
                e(i) = 1.0;
                fields.push_back(fock::le_field(rep::embed(spec, e)));
            }
            double worst = 0.0;
            for (std::size_t i = 0; i < fields.size(); ++i)
                for (std::size_t j = 0; j < fields.size(); ++j) {
                    const fock::LetterExpr x = fock::le_mul(fields[i], fields[j]);
                    const fock::LetterExpr y = fock::le_mul(fields[j], fields[i]);
                    const modular::KmsReport rpt =
                        kms_check(flow, x, y, modular::default_t_grid());
                    worst = std::max(worst, rpt.max_residual);

                    // At t = 0 the boundary value equals φ(yx) directly.
                    for (const modular::KmsPoint& p : rpt.per_point)
                        if (p.t == 0.0) {
                            const cd xy = fock::vacuum_moment(F, fock::le_mul(x, y)).value;
                            const cd yx = fock::vacuum_moment(F, fock::le_mul(y, x)).value;
                            CHECK(std::abs(p.f_t - xy) < 1e-13);
                            CHECK(std::abs(p.rhs - yx) < 1e-13);
                        }
                }
            CHECK(worst <= 1e-9);
        }
    }

    TEST_CASE("KMS check rejects words deeper than the truncation") {
        const rep::RepSpec spec = lambda_half();
        const fock::FockSpace F = fock::FockSpace::build(2, 4);
        const modular::ModularFlow flow = modular::make_flow(spec, F);
        const Eigen::VectorXcd z1 = rep::embed(spec, Eigen::Vector2d(1.0, 0.0));
        const fock::LetterExpr c = fock::le_create(z1);
        const fock::LetterExpr x = fock::le_mul(c, fock::le_mul(c, c)); // 3 letters
        CHECK_THROWS_AS((void)kms_check(flow, x, x, modular::default_t_grid()),
                        std::invalid_argument);
    }

    TEST_CASE("KMS report serializes") {
        const rep::RepSpec spec = lambda_half();
        const fock::FockSpace F = fock::FockSpace::build(2, 6);
        const modular::ModularFlow flow = modular::make_flow(spec, F);
        const Eigen::VectorXcd z1 = rep::embed(spec, Eigen::Vector2d(1.0, 0.0));
        const fock::LetterExpr q = fock::le_mul(fock::le_field(z1), fock::le_field(z1));
        const modular::KmsReport rpt =
            kms_check(flow, q, q, modular::default_t_grid(), "q", "q");
        const nlohmann::json j = nlohmann::json::parse(rpt.to_json());
        CHECK(j.at("operators").at("x").get<std::string>() == "q");
        CHECK(j.at("max_residual").get<double>() <= 1e-9);
        CHECK(j.at("per_point").size() == 5);
    }

    TEST_CASE("flow periodicity at lambda = 1/2") {
        const rep::RepSpec spec = lambda_half();
        const fock::FockSpace F = fock::FockSpace::build(2, 4);
        const modular::ModularFlow flow = modular::make_flow(spec, F);
        const double period = 2.0 * std::numbers::pi / std::log(2.0);
        const Eigen::MatrixXcd g = modular::gamma_t(flow, period).to_dense();
        CHECK(dense_dist(g, Eigen::MatrixXcd::Identity(F.total_dim, F.total_dim)) <
              1e-10);
    }

    TEST_CASE("almost eigenoperators") {
        const rep::RepSpec spec = lambda_half();
        const fock::FockSpace F = fock::FockSpace::build(2, 4);
        const modular::ModularFlow flow = modular::make_flow(spec, F);

        const auto [x, rpt] = modular::almost_eigen(flow, std::log(2.0), 0.05);
        CHECK(rpt.theta_matched == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        CHECK(rpt.lambda == doctest::Approx(2.0).epsilon(1e-12));
        CHECK_FALSE(rpt.vector_descr.empty());
        CHECK(rpt.max_defect <= 1e-10);
        CHECK_FALSE(x.empty());
        CHECK_FALSE(nlohmann::json::parse(rpt.to_json()).at("per_point").empty());

        // Nothing in the spectrum near θ = 5.
        CHECK_THROWS_AS((void)modular::almost_eigen(flow, 5.0, 1e-6),
                        std::invalid_argument);
    }

    TEST_CASE("grid helpers") {
        CHECK(modular::default_t_grid() == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
        CHECK(modular::default_z_grid(0.5).size() == 25);
        CHECK(modular::default_z_grid().size() == 81);
    }
}
