#include <doctest.h>

#include "awlab/laws.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace awlab;

namespace {

    // Composite Simpson on [a,b]; n even.
    template <typename F>
    double simpson(F f, double a, double b, int n) {
        const double h = (b - a) / n;
        double s = f(a) + f(b);
        for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
        return s * h / 3.0;
    }

    // k-th moment of the semicircle of radius r by quadrature: substituting
    // x = r sin t removes the square-root singularity.
    double semicircle_moment_quad(double r, int k) {
        const double c = 2.0 / (M_PI * r * r);
        return c * simpson(
                       [&](double t) {
                           const double x = r * std::sin(t);
                           const double dx = r * std::cos(t);
                           return std::pow(x, k) * r * std::cos(t) * dx;
                       },
                       -M_PI / 2.0, M_PI / 2.0, 20000);
    }

    // k-th moment of the quarter-circle law (4/π)√(1−x²) on [0,1].
    double quarter_circle_moment_quad(int k) {
        return (4.0 / M_PI) * simpson(
                                  [&](double t) {
                                      const double x = std::sin(t);
                                      return std::pow(x, k) * std::cos(t) * std::cos(t);
                                  },
                                  0.0, M_PI / 2.0, 20000);
    }

} // namespace

TEST_SUITE("laws") {

    TEST_CASE("Catalan numbers against the frozen table") {
        const std::vector<double> want = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796,
                                          58786, 208012, 742900, 2674440, 9694845, 35357670};
        const std::vector<double> got = laws::catalan_numbers(16);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i) CHECK(got[i] == want[i]);
    }

    TEST_CASE("semicircle moments: Catalan scaling and quadrature oracle") {
        const std::vector<double> m2 = laws::law_moments(laws::Law::semicircle, 2.0, 8);
        CHECK(m2[0] == 1.0);
        CHECK(m2[2] == 1.0);
        CHECK(m2[4] == 2.0);
        CHECK(m2[6] == 5.0);
        CHECK(m2[8] == 14.0);
        for (int k = 1; k <= 8; k += 2) CHECK(m2[static_cast<std::size_t>(k)] == 0.0);

        for (const double r : {1.0, 2.0, 0.7}) {
            const std::vector<double> m = laws::law_moments(laws::Law::semicircle, r, 8);
            for (int k = 0; k <= 8; ++k)
                CHECK(m[static_cast<std::size_t>(k)] ==
                      doctest::Approx(semicircle_moment_quad(r, k)).epsilon(1e-10));
        }
    }

    TEST_CASE("quarter-circle moments: closed forms and quadrature oracle") {
        const std::vector<double> m = laws::law_moments(laws::Law::quarter_circle, 10);
        CHECK(m[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(m[1] == doctest::Approx(4.0 / (3.0 * M_PI)).epsilon(1e-13));
        CHECK(m[2] == doctest::Approx(0.25).epsilon(1e-13));
        for (int k = 0; k <= 10; ++k)
            CHECK(m[static_cast<std::size_t>(k)] ==
                  doctest::Approx(quarter_circle_moment_quad(k)).epsilon(1e-10));
    }

    TEST_CASE("haar unitary moments vanish above order zero") {
        const std::vector<double> m = laws::law_moments(laws::Law::haar_unitary, 12);
        CHECK(m[0] == 1.0);
        for (int k = 1; k <= 12; ++k) CHECK(m[static_cast<std::size_t>(k)] == 0.0);
    }

    TEST_CASE("geometric point mass moments at lambda = 1/2") {
        // (1−λ) Σ_j j^k λ^j has rational closed forms: 1, 3, 13 at λ = 1/2.
        const std::vector<double> m = laws::law_moments(laws::Law::dirac_geometric, 0.5, 3);
        CHECK(m[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(m[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m[2] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(m[3] == doctest::Approx(13.0).epsilon(1e-12));
    }

    TEST_CASE("geometric closed form for general lambda") {
        // Σ j λ^j = λ/(1−λ)², Σ j² λ^j = λ(1+λ)/(1−λ)³.
        for (const double lam : {0.25, 0.9}) {
            const std::vector<double> m = laws::law_moments(laws::Law::dirac_geometric, lam, 2);
            CHECK(m[1] == doctest::Approx(lam / (1.0 - lam)).epsilon(1e-12));
            CHECK(m[2] ==
                  doctest::Approx(lam * (1.0 + lam) / std::pow(1.0 - lam, 2)).epsilon(1e-12));
        }
    }

    TEST_CASE("validation") {
        CHECK_THROWS_AS((void)laws::law_moments(laws::Law::semicircle, 2.0, 33),
                        std::invalid_argument);
        CHECK_THROWS_AS((void)laws::law_moments(laws::Law::semicircle, 2.0, -1),
                        std::invalid_argument);
        CHECK_THROWS_AS((void)laws::law_moments(laws::Law::semicircle, -1.0, 4),
                        std::invalid_argument);
        CHECK_THROWS_AS((void)laws::law_moments(laws::Law::dirac_geometric, 1.0, 4),
                        std::invalid_argument);
        CHECK_THROWS_AS((void)laws::law_moments(laws::Law::semicircle, 8),
                        std::invalid_argument); // radius required
        CHECK_NOTHROW((void)laws::law_moments(laws::Law::quarter_circle, 8));
    }
}
