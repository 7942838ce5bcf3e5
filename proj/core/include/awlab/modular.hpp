/*
 * Modular flow of the vacuum state on the truncated Fock space.
 *
 * For a representation with generator A the flow acts by second quantization,
 *
 *     σ_t(x) = Γ(A^{it}) x Γ(A^{it})*,      Γ(u) = 1 ⊕ u ⊕ u⊗u ⊕ … ,
 *
 * and satisfies σ_t(s(ξ)) = s(U_t ξ) exactly at every depth, because A^{it}
 * preserves the grading.  Analytic continuation to complex time is defined
 * letter-wise on polynomial words in creation/annihilation letters:
 *
 *     σ_z: ℓ(ζ) ↦ ℓ(A^{iz}ζ),   ℓ(ζ)* ↦ ℓ(A^{iz̄}ζ)*,
 *
 * which agrees with Ad Γ(A^{it}) at real z and needs no matrix logarithm.
 * The generating analytic fields are x(ζ,z) = ℓ(η) + ℓ(Tη)* with η = A^{iz}ζ
 * (using A^{iz̄}T = TA^{iz}); at z = 0 and ζ = ξ_K ∈ K_ℝ this is 2·s(ξ_K).
 *
 * kms_check verifies the boundary condition of the vacuum state,
 *
 *     f(t) = φ(x σ_t(y)),    f(t+i) = φ(σ_t(y) x),
 *
 * by evaluating both sides exactly on letter words (combined letter count
 * must fit inside the depth).  almost_eigen builds x = ℓ(ξ) + ℓ(Tξ)* from an
 * A-eigenvector with eigenvalue near e^{θ} and measures the eigenoperator
 * defect ‖σ_z(x) − λ^{iz} x‖ over a compact z-grid, λ = e^{θ}.
 */
#pragma once

#include <complex>
#include <string>
#include <vector>

#include "awlab/fock.hpp"
#include "awlab/rep.hpp"

namespace awlab::modular {

using cd = std::complex<double>;

struct ModularFlow {
    rep::RepSpec rep;
    fock::FockSpace space;
};

// Checks rep.complex_dim() == space.d.
ModularFlow make_flow(const rep::RepSpec& rep, const fock::FockSpace& space);

// Γ(u) = ⊕_n u^{⊗n} as a dense grading-preserving operator (degree 0).
fock::FockOperator second_quantize(const fock::FockSpace& F, const Eigen::MatrixXcd& u,
                                   const std::string& label);

// Γ(A^{it}).
fock::FockOperator gamma_t(const ModularFlow& flow, double t);

// σ_t(x) = Γ(A^{it}) x Γ(A^{it})*.
fock::FockOperator modular_apply(const ModularFlow& flow, const fock::FockOperator& x, double t);

// Letter-wise σ_z on a polynomial word expression.
fock::LetterExpr modular_letters(const ModularFlow& flow, const fock::LetterExpr& x, cd z);

// x(ζ,z) = ℓ(A^{iz}ζ) + ℓ(T A^{iz}ζ)*, as letters and as an operator.
fock::LetterExpr analytic_field_letters(const ModularFlow& flow, const Eigen::VectorXcd& zeta,
                                        cd z);
fock::FockOperator analytic_field(const ModularFlow& flow, const Eigen::VectorXcd& zeta, cd z);

// ── KMS verification ───────────────────────────────────────────────────────────

struct KmsPoint {
    double t = 0.0;
    cd f_t;          // φ(x σ_t(y))
    cd f_t_plus_i;   // φ(x σ_{t+i}(y))
    cd rhs;          // φ(σ_t(y) x)
    double residual = 0.0; // |f(t+i) − rhs|
};

struct KmsReport {
    std::string rep_json;
    std::string x_label, y_label;
    std::vector<double> grid;
    std::vector<KmsPoint> per_point;
    double max_residual = 0.0;

    std::string to_json() const;
};

inline std::vector<double> default_t_grid() { return {-1.0, -0.5, 0.0, 0.5, 1.0}; }

// Verifies f(t+i) = φ(σ_t(y)x) over the grid.  x and y are letter words; the
// combined letter count of x·σ(y) must be ≤ the flow depth, else
// std::invalid_argument (degree too high for exactness).
KmsReport kms_check(const ModularFlow& flow, const fock::LetterExpr& x,
                    const fock::LetterExpr& y, const std::vector<double>& t_grid,
                    const std::string& x_label = "x", const std::string& y_label = "y");

// ── Almost-eigen elements ──────────────────────────────────────────────────────

struct EigenDefectPoint {
    double z_re = 0.0, z_im = 0.0;
    double defect = 0.0; // ‖σ_z(x) − λ^{iz} x‖ (operator norm)
};

struct EigenDefectReport {
    std::string rep_json;
    double theta_target = 0.0;
    double lambda = 0.0;        // e^{θ_target}
    double window = 0.0;
    double theta_matched = 0.0; // log of the eigenvalue actually used
    std::string vector_descr;   // e.g. "block0:xi1" or "trivial:0"
    std::vector<EigenDefectPoint> per_point;
    double max_defect = 0.0;

    std::string to_json() const;
};

// z ∈ [−1,1]² sampled at `step` (default 0.25).
std::vector<cd> default_z_grid(double step = 0.25);

// Builds x = ℓ(ξ) + ℓ(Tξ)* from a unit A-eigenvector with |log μ − θ| ≤
// window (window floor 1e−12) and fills the defect report.  Throws
// std::invalid_argument when no spectral vector lies in the window.
std::pair<fock::LetterExpr, EigenDefectReport> almost_eigen(const ModularFlow& flow,
                                                            double theta_target, double window);

} // namespace awlab::modular
