/*
 * Commutator rigidity inequality on reduced free products.
 *
 * For a free product (M, ω) = (N₁, ω₁) ∗ (N₂, ω₂) with a ∈ N₁, b, c ∈ N₂ and
 * state-preserving automorphisms α = α₁ ∗ α₂, the inequality
 *
 *     ‖x − ω(x)1‖₂ ≤ 𝓔(a,b,c)·max{‖xa − α(a)x‖₂, ‖xb − α(b)x‖₂, ‖xc − α(c)x‖₂}
 *                     + 𝓕(a,b,c)·‖x‖₂
 *
 * holds with the explicit constants
 *
 *     𝓒(a) = 2‖a‖³‖σ_{i/2}(a) − a‖ + 2‖a‖²‖a*a − 1‖ + 3(1+‖a‖²)‖aa* − 1‖
 *            + 6|ω(a)|‖a‖,
 *     𝓔    = 6‖a‖³ + 4‖b‖³ + 4‖c‖³,
 *     𝓕    = 3𝓒(a) + 2𝓒(b) + 2𝓒(c) + 12|ω(cb*)|‖cb*‖.
 *
 * With unit-norm generators 𝓔 = 14.  Every quantity on the right is
 * factor-local: operator norms are largest singular values in the factor's
 * matrix realization, σ_{i/2}(a) = ρ^{−1/2} a ρ^{1/2} is the modular
 * half-step of the factor state, and ω(cb*) is evaluated inside N₂.  The
 * 2-norms are exact free-product moments, ‖x‖₂ = φ(x*x)^{1/2}.
 *
 * barnett_check drives the verification over a list of polynomials; the
 * random generator draws reproducible alternating-shape polynomials from a
 * counter-based RNG keyed on (seed, polynomial, term, position).
 */
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "awlab/ncspace.hpp"

namespace awlab::barnett {

// ── Setup ──────────────────────────────────────────────────────────────────────

struct BarnettSetup {
    std::string name;
    std::shared_ptr<nc::MatrixSpace> N1, N2;
    std::shared_ptr<nc::FreeProductSpace> product; // factors (N1, N2) in order
    nc::ElemId a = 0;     // in N1
    nc::ElemId b = 0;     // in N2
    nc::ElemId c = 0;     // in N2
    nc::ElemId alpha_a = 0, alpha_b = 0, alpha_c = 0; // α₁(a), α₂(b), α₂(c)

    // Installs inner automorphisms αᵢ = Ad uᵢ; validates unitarity and
    // [uᵢ, ρᵢ] = 0 (so ωᵢαᵢ = ωᵢ) to 1e−12.
    void set_automorphisms(const Eigen::MatrixXcd& u1, const Eigen::MatrixXcd& u2);
};

// M₂ ∗ M₂ with normalized trace states: a = b = diag(1,−1), c = σ_x, α = id.
BarnettSetup tracial_setup();
// (M₂, ω_λ-diagonal state) ∗ (M₂, trace): a = σ_x, b = diag(1,−1), c = σ_x,
// α = id.  Requires 0 < λ < 1.
BarnettSetup geometric_setup(double lambda);

// ── Constants ──────────────────────────────────────────────────────────────────

// 𝓒(a) in a realized factor; throws std::domain_error when the state is not
// faithful (σ_{i/2} undefined).
double c_const(nc::MatrixSpace& space, nc::ElemId a);

struct BarnettConstants {
    double C_a = 0.0, C_b = 0.0, C_c = 0.0;
    double E = 0.0, F = 0.0;
};

BarnettConstants ef_consts(const BarnettSetup& setup);

// ── Verification ───────────────────────────────────────────────────────────────

struct BarnettCase {
    std::string word;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; // rhs − lhs
};

struct BarnettReport {
    std::string setup_name;
    std::uint64_t seed = 0; // 0 when the polynomial list was supplied explicitly
    BarnettConstants consts;
    std::vector<BarnettCase> cases;
    double min_margin = 0.0;
    bool pass = false; // min_margin ≥ −1e−9

    std::string to_json() const;
};

inline constexpr double kSlack = 1e-9;

// Verifies the inequality for each polynomial (name, product-space element).
BarnettReport barnett_check(BarnettSetup& setup,
                            const std::vector<std::pair<std::string, nc::ElemId>>& xs);

// `count` polynomials, each a sum of 4 alternating words of length uniform in
// {0..max_deg} with letters uniform in {a,a*} / {b,b*,c,c*} and coefficients
// uniform in [−1,1]; deterministic in `seed`.  max_deg ≤ 8.
std::vector<std::pair<std::string, nc::ElemId>> random_polynomials(BarnettSetup& setup, int count,
                                                                   int max_deg,
                                                                   std::uint64_t seed);

// Convenience: random_polynomials + barnett_check, seed recorded in report.
BarnettReport barnett_check_random(BarnettSetup& setup, int count, int max_deg,
                                   std::uint64_t seed);

} // namespace awlab::barnett
