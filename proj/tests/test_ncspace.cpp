#include <doctest.h>

#include "awlab/fock.hpp"
#include "awlab/laws.hpp"
#include "awlab/ncspace.hpp"
#include "awlab/util.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

using namespace awlab;
using cd = std::complex<double>;

namespace {

    Eigen::MatrixXcd sigma_x() {
        Eigen::MatrixXcd m(2, 2);
        m << 0, 1, 1, 0;
        return m;
    }
    Eigen::MatrixXcd sigma_z() {
        Eigen::MatrixXcd m(2, 2);
        m << 1, 0, 0, -1;
        return m;
    }

} // namespace

TEST_SUITE("ncspace") {

    TEST_CASE("tracial matrix space: state, centering, norms") {
        auto sp = nc::MatrixSpace::tracial("M2", 2);
        const nc::ElemId z = sp->intern(sigma_z());
        const nc::ElemId x = sp->intern(sigma_x());
        CHECK(sp->phi(z) == cd(0.0, 0.0));
        CHECK(sp->phi(sp->mul(z, z)) == cd(1.0, 0.0));
        CHECK(sp->two_norm(x) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(sp->op_norm(x) == doctest::Approx(1.0).epsilon(1e-12));

        const nc::ElemId zc = sp->center(z);
        CHECK(sp->centered(zc));
        CHECK(sp->phi(zc) == cd(0.0, 0.0)); // structurally exact
        CHECK(sp->center(zc) == zc);        // idempotent through the cache

        const nc::ElemId shifted = sp->add(z, sp->scale(cd(2.5, 0.0), sp->one()));
        CHECK(sp->phi(sp->center(shifted)) == cd(0.0, 0.0));
        CHECK(sp->as_scalar(sp->scale(cd(3.0, -1.0), sp->one())) == cd(3.0, -1.0));
        CHECK_FALSE(sp->as_scalar(x).has_value());
    }

    TEST_CASE("matrix space validates the density matrix") {
        Eigen::MatrixXcd bad_trace = Eigen::MatrixXcd::Identity(2, 2);
        CHECK_THROWS_AS(nc::MatrixSpace("bad", bad_trace), std::invalid_argument);
        Eigen::MatrixXcd not_sa(2, 2);
        not_sa << 0.5, 0.5, -0.5, 0.5;
        CHECK_THROWS_AS(nc::MatrixSpace("bad", not_sa), std::invalid_argument);
        Eigen::MatrixXcd indefinite(2, 2);
        indefinite << 1.5, 0, 0, -0.5;
        CHECK_THROWS_AS(nc::MatrixSpace("bad", indefinite), std::invalid_argument);
    }

    TEST_CASE("geometric state and modular half-step") {
        const double lam = 0.5;
        auto sp = nc::MatrixSpace::geometric_state("M2w", 2, lam);
        Eigen::MatrixXcd e00 = Eigen::MatrixXcd::Zero(2, 2);
        e00(0, 0) = 1.0;
        CHECK(std::abs(sp->phi(sp->intern(e00)) - 1.0 / (1.0 + lam)) < 1e-14);

        // ρ^{-1/2} |0><1| ρ^{1/2} = sqrt(λ) |0><1|.
        Eigen::MatrixXcd e01 = Eigen::MatrixXcd::Zero(2, 2);
        e01(0, 1) = 1.0;
        REQUIRE(sp->halfstep_available());
        const Eigen::MatrixXcd h = sp->matrix(sp->modular_halfstep(sp->intern(e01)));
        CHECK(std::abs(h(0, 1) - std::sqrt(lam)) < 1e-13);
        CHECK(std::abs(h(1, 0)) < 1e-14);

        // A non-faithful state has no half-step.
        Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(2, 2);
        pure(0, 0) = 1.0;
        nc::MatrixSpace singular("pure", pure);
        CHECK_FALSE(singular.halfstep_available());
        CHECK_THROWS_AS((void)singular.modular_halfstep(singular.intern(sigma_x())),
                        std::domain_error);
    }

    TEST_CASE("geometric_dim_for_mass") {
        CHECK(nc::MatrixSpace::geometric_dim_for_mass(0.5, 1e-3) == 10); // 2^-10 < 1e-3
        CHECK(nc::MatrixSpace::geometric_dim_for_mass(0.1, 5e-4) == 4);  // 1e-4 < 5e-4
    }

    TEST_CASE("vacuum word space state matches the Fock oracle") {
        nc::VacuumWordSpace vs("fock", 1);
        const nc::ElemId s = vs.intern(fock::le_field(Eigen::VectorXcd::Ones(1)));
        CHECK(vs.intern(fock::le_field(Eigen::VectorXcd::Ones(1))) == s); // deduplication
        CHECK(vs.phi(s) == cd(0.0, 0.0));
        nc::ElemId p = s;
        const std::vector<double> want = laws::law_moments(laws::Law::semicircle, 1.0, 6);
        for (int k = 2; k <= 6; ++k) {
            p = vs.mul(p, s);
            CHECK(std::abs(vs.phi(p) - want[static_cast<std::size_t>(k)]) < 1e-13);
        }
        CHECK(vs.as_scalar(vs.scale(cd(2.0, 0.0), vs.one())) == cd(2.0, 0.0));
        CHECK(vs.two_norm(s) == doctest::Approx(0.5).epsilon(1e-12));
    }

    TEST_CASE("free product: factorization and alternating vanishing") {
        auto m1 = nc::MatrixSpace::tracial("A", 2);
        auto m2 = nc::MatrixSpace::tracial("B", 2);
        nc::FreeProductSpace prod("A*B", {m1, m2});

        const nc::ElemId a = prod.embed(0, m1->intern(sigma_z() * cd(1.0, 0.0) +
                                                      Eigen::MatrixXcd::Identity(2, 2) * 0.7));
        const nc::ElemId b = prod.embed(1, m2->intern(sigma_x() * cd(1.0, 0.0) +
                                                      Eigen::MatrixXcd::Identity(2, 2) * -0.3));
        // φ(ab) = φ(a)φ(b) when a, b sit in distinct free factors.
        CHECK(std::abs(prod.phi(prod.mul(a, b)) - prod.phi(a) * prod.phi(b)) < 1e-14);

        // Alternating centered words vanish exactly.
        const nc::ElemId ac = prod.center(a);
        const nc::ElemId bc = prod.center(b);
        nc::ElemId w = prod.mul(ac, bc);
        CHECK(prod.phi(w) == cd(0.0, 0.0));
        w = prod.mul(w, prod.mul(ac, bc));
        CHECK(prod.phi(w) == cd(0.0, 0.0));

        // Non-alternating control: φ(å·å) is the variance, nonzero.
        CHECK(std::abs(prod.phi(prod.mul(ac, ac))) > 0.5);
    }

    TEST_CASE("free product of fields reproduces the two-summand Fock space") {
        // Two free radius-1 semicirculars realized (i) on Fock(C^2) with
        // orthogonal directions and (ii) as a reduced free product.
        nc::VacuumWordSpace joint("fock2", 2);
        const nc::ElemId s0 = joint.intern(fock::le_field(Eigen::VectorXcd::Unit(2, 0)));
        const nc::ElemId s1 = joint.intern(fock::le_field(Eigen::VectorXcd::Unit(2, 1)));

        auto h0 = std::make_shared<nc::VacuumWordSpace>("H0", 1);
        auto h1 = std::make_shared<nc::VacuumWordSpace>("H1", 1);
        nc::FreeProductSpace prod("H0*H1", {h0, h1});
        const nc::ElemId t0 = prod.embed(0, h0->intern(fock::le_field(Eigen::VectorXcd::Ones(1))));
        const nc::ElemId t1 = prod.embed(1, h1->intern(fock::le_field(Eigen::VectorXcd::Ones(1))));

        // Random mixed words agree between the realizations.
        for (std::uint64_t t = 0; t < 60; ++t) {
            const int len = 1 + static_cast<int>(util::key_of({t, 1}) % 6);
            nc::ElemId wj = joint.one(), wp = prod.one();
            for (int p = 0; p < len; ++p) {
                const bool first = util::key_of({t, (std::uint64_t)p, 2}) & 1;
                wj = joint.mul(wj, first ? s0 : s1);
                wp = prod.mul(wp, first ? t0 : t1);
            }
            CHECK(std::abs(joint.phi(wj) - prod.phi(wp)) < 1e-12);
        }

        // The free sum s0 + s1 is semicircular of variance 1/2, i.e. radius √2
        // under the (r/2)² variance normalization.
        const nc::ElemId sum = prod.add(t0, t1);
        nc::ElemId pw = prod.one();
        const std::vector<double> want = laws::law_moments(laws::Law::semicircle,
                                                           std::sqrt(2.0), 6);
        for (int k = 1; k <= 6; ++k) {
            pw = prod.mul(pw, sum);
            CHECK(std::abs(prod.phi(pw) - want[static_cast<std::size_t>(k)]) < 1e-12);
        }
    }

    TEST_CASE("word helpers") {
        auto m1 = nc::MatrixSpace::tracial("A", 2);
        auto m2 = nc::MatrixSpace::tracial("B", 2);
        nc::FreeProductSpace prod("A*B", {m1, m2});
        const nc::ElemId a = m1->intern(sigma_z());
        const nc::ElemId b = m2->intern(sigma_x());
        const std::vector<std::pair<int, nc::ElemId>> letters = {{0, a}, {1, b}, {0, a}};
        const nc::ElemId w = prod.word(letters);
        CHECK(std::abs(prod.phi(w) - prod.word_moment(letters)) < 1e-15);
        CHECK(std::abs(nc::free_product_moment(prod, letters) - prod.word_moment(letters)) <
              1e-15);
        // φ(aba) = φ(a²)φ(b) by freeness with φ(a) = 0: here φ(b) = 0 too.
        CHECK(std::abs(prod.word_moment(letters)) < 1e-14);
        CHECK(prod.word({}) == prod.one());
        // Adjoint reverses the word.
        const nc::ElemId w2 = prod.word(std::vector<std::pair<int, nc::ElemId>>{
            {0, m1->intern(sigma_z() * cd(0.0, 1.0))}, {1, b}});
        const nc::ElemId w2adj = prod.adjoint(w2);
        CHECK(std::abs(prod.phi(prod.mul(w2, w2adj)) - 1.0) < 1e-13);
    }

    TEST_CASE("check_freeness verdicts") {
        auto m1 = nc::MatrixSpace::tracial("A", 2);
        auto m2 = nc::MatrixSpace::tracial("B", 2);
        nc::FreeProductSpace prod("A*B", {m1, m2});
        prod.add_generator("a", prod.embed(0, m1->intern(sigma_z())));
        prod.add_generator("b", prod.embed(1, m2->intern(sigma_x())));

        const nc::FreenessReport ok = nc::check_freeness(prod, {{"a"}, {"b"}}, 6);
        CHECK(ok.applicable);
        CHECK(ok.pass);
        CHECK(ok.max_residual == 0.0);
        CHECK(ok.words_checked > 0);

        const nc::FreenessReport single = nc::check_freeness(prod, {{"a"}}, 4);
        CHECK_FALSE(single.applicable);

        // A family is never free from itself: the same generator in both
        // families has nonvanishing alternating variance words.
        const nc::FreenessReport self = nc::check_freeness(prod, {{"a"}, {"a"}}, 4);
        CHECK(self.applicable);
        CHECK_FALSE(self.pass);
        CHECK(self.max_residual > 0.1);

        CHECK_THROWS_AS((void)nc::check_freeness(prod, {{"a"}, {"nope"}}, 4),
                        std::invalid_argument);
        CHECK_THROWS_AS((void)nc::check_freeness(prod, {{"a"}, {"b"}}, 9), std::invalid_argument);
    }
}
