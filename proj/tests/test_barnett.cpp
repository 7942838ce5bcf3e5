#include <doctest.h>

#include "awlab/barnett.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

using namespace awlab;
using cd = std::complex<double>;

TEST_SUITE("barnett") {

    TEST_CASE("tracial setup has vanishing state constants") {
        barnett::BarnettSetup setup = barnett::tracial_setup();
        const barnett::BarnettConstants k = barnett::ef_consts(setup);
        // Trace state: modular half-step is trivial, generators are unitary
        // and centered, so every term of 𝓒 vanishes identically.
        CHECK(k.C_a == 0.0);
        CHECK(k.C_b == 0.0);
        CHECK(k.C_c == 0.0);
        CHECK(k.E == 14.0);
        CHECK(k.F == 0.0);
    }

    TEST_CASE("geometric state constants in closed form") {
        barnett::BarnettSetup setup = barnett::geometric_setup(0.5);
        const barnett::BarnettConstants k = barnett::ef_consts(setup);
        // ρ = diag(2,1)/3, a = σ_x: ‖σ_{i/2}(a) − a‖ = √2 − 1 and the other
        // terms of 𝓒(a) vanish, so 𝓒(a) = 2(√2 − 1).
        const double c_a = 2.0 * (std::sqrt(2.0) - 1.0);
        CHECK(k.C_a == doctest::Approx(c_a).epsilon(1e-12));
        CHECK(k.C_b == 0.0);
        CHECK(k.C_c == 0.0);
        CHECK(k.E == 14.0);
        CHECK(k.F == doctest::Approx(3.0 * c_a).epsilon(1e-12));
    }

    TEST_CASE("setup validation") {
        CHECK_THROWS_AS((void)barnett::geometric_setup(0.0), std::invalid_argument);
        CHECK_THROWS_AS((void)barnett::geometric_setup(1.0), std::invalid_argument);

        barnett::BarnettSetup setup = barnett::tracial_setup();
        const Eigen::MatrixXcd not_unitary = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
        CHECK_THROWS_AS(
            setup.set_automorphisms(not_unitary, Eigen::MatrixXcd::Identity(2, 2)),
            std::invalid_argument);

        // σ_x is unitary but does not commute with the geometric density.
        barnett::BarnettSetup geo = barnett::geometric_setup(0.5);
        Eigen::MatrixXcd sx(2, 2);
        sx << 0, 1, 1, 0;
        CHECK_THROWS_AS(geo.set_automorphisms(sx, Eigen::MatrixXcd::Identity(2, 2)),
                        std::invalid_argument);
    }

    TEST_CASE("non-faithful states have no half-step constant") {
        auto space = nc::MatrixSpace::geometric_state("degenerate", 2, 1e-300);
        // λ → 0 collapses the density onto the vacuum; ρ is numerically
        // singular, so σ_{i/2} and hence 𝓒 are undefined.
        const nc::ElemId a = space->intern((Eigen::MatrixXcd(2, 2) << 0, 1, 1, 0).finished());
        CHECK_THROWS_AS((void)barnett::c_const(*space, a), std::domain_error);
    }

    TEST_CASE("handpicked polynomials satisfy the bound") {
        for (int which = 0; which < 2; ++which) {
            barnett::BarnettSetup setup =
                which == 0 ? barnett::tracial_setup() : barnett::geometric_setup(0.5);
            std::vector<std::pair<std::string, nc::ElemId>> xs;
            xs.emplace_back("one", setup.product->one());
            xs.emplace_back("a", setup.product->embed(0, setup.a));
            xs.emplace_back("b", setup.product->embed(1, setup.b));
            const std::vector<std::pair<int, nc::ElemId>> ab{{0, setup.a}, {1, setup.b}};
            xs.emplace_back("ab", setup.product->word(ab));
            const barnett::BarnettReport rpt = barnett::barnett_check(setup, xs);
            CHECK(rpt.pass);
            CHECK(rpt.min_margin >= -barnett::kSlack);
            CHECK(rpt.cases.size() == 4);
            CHECK(rpt.seed == 0);
            // The identity is α-invariant and centered-free, so the bound is
            // saturated only through the 𝓕 term.
            CHECK(rpt.cases[0].lhs == doctest::Approx(0.0).epsilon(1e-14));
        }
    }

    TEST_CASE("random polynomial battery") {
        for (int which = 0; which < 2; ++which) {
            barnett::BarnettSetup setup =
                which == 0 ? barnett::tracial_setup() : barnett::geometric_setup(0.5);
            const barnett::BarnettReport rpt =
                barnett::barnett_check_random(setup, 25, 5, 7);
            CHECK(rpt.pass);
            CHECK(rpt.cases.size() == 25);
            CHECK(rpt.seed == 7);
            CHECK(rpt.min_margin >= -barnett::kSlack);
            for (const barnett::BarnettCase& c : rpt.cases) CHECK(c.rhs >= 0.0);
        }
    }

    TEST_CASE("random polynomials are reproducible") {
        barnett::BarnettSetup s1 = barnett::tracial_setup();
        barnett::BarnettSetup s2 = barnett::tracial_setup();
        const std::string r1 = barnett::barnett_check_random(s1, 10, 6, 99).to_json();
        const std::string r2 = barnett::barnett_check_random(s2, 10, 6, 99).to_json();
        CHECK(r1 == r2);

        barnett::BarnettSetup s3 = barnett::tracial_setup();
        const auto polys = barnett::random_polynomials(s3, 12, 4, 123);
        CHECK(polys.size() == 12);
        CHECK_THROWS_AS((void)barnett::random_polynomials(s3, 1, 9, 1),
                        std::invalid_argument);
        CHECK_THROWS_AS((void)barnett::random_polynomials(s3, -1, 4, 1),
                        std::invalid_argument);
    }

    TEST_CASE("nontrivial automorphisms keep the bound") {
        barnett::BarnettSetup setup = barnett::tracial_setup();
        Eigen::MatrixXcd u(2, 2);
        u << cd(1, 0), cd(0, 0), cd(0, 0), cd(0, 1); // diag(1, i), commutes with I/2
        setup.set_automorphisms(u, u);
        const barnett::BarnettReport rpt = barnett::barnett_check_random(setup, 30, 5, 21);
        CHECK(rpt.pass);
        CHECK(rpt.min_margin >= -barnett::kSlack);
        // α ≠ id: some commutator norms must now be strictly positive even
        // for pure generator words.
        std::vector<std::pair<std::string, nc::ElemId>> xs;
        xs.emplace_back("a", setup.product->embed(0, setup.a));
        const barnett::BarnettReport gen = barnett::barnett_check(setup, xs);
        CHECK(gen.pass);
        CHECK(gen.cases[0].rhs > 0.0);
    }

    TEST_CASE("report serializes") {
        barnett::BarnettSetup setup = barnett::geometric_setup(0.5);
        const barnett::BarnettReport rpt = barnett::barnett_check_random(setup, 5, 4, 3);
        const nlohmann::json j = nlohmann::json::parse(rpt.to_json());
        CHECK(j.at("setup").get<std::string>() == setup.name);
        CHECK(j.at("constants").at("E").get<double>() == 14.0);
        CHECK(j.at("cases").size() == 5);
        CHECK(j.at("summary").at("pass").get<bool>());
    }
}
