#include "awlab/laws.hpp"

#include <cmath>
#include <stdexcept>

namespace awlab::laws {

namespace {

void check_order(int order) {
    if (order < 0 || order > max_order)
        throw std::invalid_argument("law_moments: order must lie in [0, 32]");
}

} // namespace

std::vector<double> catalan_numbers(int n) {
    if (n < 0) throw std::invalid_argument("catalan_numbers: n must be >= 0");
    std::vector<double> c(n + 1);
    c[0] = 1.0;
    for (int k = 0; k < n; ++k) c[k + 1] = c[k] * 2.0 * (2 * k + 1) / (k + 2);
    return c;
}

std::vector<double> law_moments(Law law, double param, int order) {
    check_order(order);
    std::vector<double> m(order + 1, 0.0);
    m[0] = 1.0;

    switch (law) {
    case Law::semicircle: {
        if (!(param > 0.0) || !std::isfinite(param))
            throw std::invalid_argument("law_moments: semicircle radius must be positive");
        const std::vector<double> cat = catalan_numbers(order / 2);
        const double h2 = (param / 2.0) * (param / 2.0);
        double pw = 1.0;
        for (int k = 1; 2 * k <= order; ++k) {
            pw *= h2;
            m[2 * k] = cat[k] * pw;
        }
        break;
    }
    case Law::quarter_circle: {
        for (int k = 1; k <= order; ++k)
            m[k] = std::exp(std::lgamma((k + 1) / 2.0) - std::lgamma(k / 2.0 + 2.0)) /
                   std::sqrt(M_PI);
        break;
    }
    case Law::haar_unitary:
        break; // φ(uⁿ) = δ_{n0}: all higher entries stay 0
    case Law::dirac_geometric: {
        if (!(param > 0.0) || !(param < 1.0))
            throw std::invalid_argument("law_moments: geometric weight must lie in (0,1)");
        for (int k = 1; k <= order; ++k) {
            double sum = 0.0, w = 1.0 - param; // weight λʲ(1−λ) at j, starting j = 0
            for (long j = 0;; ++j) {
                const double term = w * std::pow(static_cast<double>(j), k);
                sum += term;
                w *= param;
                if (j > k && term < sum * 1e-18) break;
                if (j > 100000) break; // λ near 1: geometric tail already negligible
            }
            m[k] = sum;
        }
        break;
    }
    }
    return m;
}

std::vector<double> law_moments(Law law, int order) {
    if (law == Law::semicircle || law == Law::dirac_geometric)
        throw std::invalid_argument("law_moments: this law needs a parameter");
    return law_moments(law, 0.0, order);
}

} // namespace awlab::laws
