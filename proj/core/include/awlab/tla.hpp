/*
 * Polar-decomposition study of the generalized circular operator
 *
 *     y = ℓ(ξ₁) + √λ ℓ(ξ₂)*,   0 < λ < 1,  ξ₁ ⊥ ξ₂ orthonormal,
 *
 * on a depth-D full Fock space over ℂ².  Writing y = v·b with b = (y*y)^{1/2}
 * and v the phase, the exact (untruncated) state satisfies
 *
 *     φ(v^k (v*)^l) = δ_{kl} λ^k,
 *
 * and the report tabulates the truncation defect |φ(vᵏ(v*)ˡ) − δ_{kl}λᵏ|.
 *
 * The word basis over the alphabet {ξ₁, ξ₂} splits y*y into an orthogonal
 * direct sum of tridiagonal chains
 *
 *     root → (ξ₂ξ₁)·root → (ξ₂ξ₁)²·root → …      (roots: words not starting ξ₂ξ₁)
 *
 * with off-diagonal √λ and diagonal 1 + λ·[node starts ξ₂], except that the
 * creation contribution 1 is absent on grade-D nodes.  Chains are classified
 * by (length, root-starts-ξ₂, top-node-at-grade-D); one eigendecomposition
 * per class yields the exact spectral data of y*y in milliseconds where a
 * dense SVD would need gigabytes.
 *
 * Truncation artifact: every chain whose top node sits at grade D carries one
 * spurious boundary eigenmode — the finite shadow of the semi-infinite
 * chain's kernel vector ψ_j ∝ (−√λ)^j — whose defect contribution does not
 * decay with D.  The phase v is therefore extended by zero on the lowest
 * eigenmode of each such chain (in addition to the exact numerical kernel,
 * singular values ≤ kernel_tol); b always keeps the full spectrum.  The
 * report records how many modes were dropped.  Disable via
 * TlaOptions::boundary_mode_surgery to see the raw truncated phase.
 */
#pragma once

#include <string>
#include <vector>

#include "awlab/fock.hpp"

namespace awlab::tla {

struct TlaOptions {
    int k_max = 3;                     // table covers k,l = 0..k_max
    int bins = 64;                     // histogram resolution for |y|
    double kernel_tol = 1e-10;         // singular values ≤ tol are kernel
    bool boundary_mode_surgery = true; // drop grade-D boundary modes from v
};

struct TlaReport {
    double lambda = 0.0;
    int depth = 0;
    int k_max = 0;
    // moments[k][l] = φ(vᵏ(v*)ˡ); table[k][l] = |moments[k][l] − δ_{kl}λᵏ|.
    std::vector<std::vector<double>> moments;
    std::vector<std::vector<double>> table;
    double isometry_defect = 0.0;       // max over chain classes of ‖v*v − P‖₂
    std::int64_t kernel_dim = 0;        // multiplicity-weighted exact kernel
    std::int64_t dropped_modes = 0;     // boundary modes removed from v's support
    std::size_t total_dim = 0;
    fock::Histogram b_distribution;     // spectrum of |y| = (y*y)^{1/2}

    std::string to_json() const;
    // Rows "k,l,depth,defect" with a header line.
    std::string table_csv() const;
};

// Builds the chain decomposition at depth D and fills the defect table.
// Throws std::invalid_argument unless 0 < λ < 1 and D ≥ 4; std::runtime_error
// if a block eigendecomposition fails.
TlaReport polar_tla(double lambda, int depth, const TlaOptions& opts = {});

struct TlaSweep {
    std::vector<TlaReport> reports;       // one per depth, ascending
    bool monotone = true;                 // every table entry non-increasing
    std::vector<std::string> violations;  // "k=_,l=_: defect(D=a) -> defect(D=b)"

    std::string to_json() const;
    std::string table_csv() const; // all depths concatenated
};

// Runs polar_tla over ascending depths and checks defect monotonicity.
TlaSweep tla_sweep(double lambda, const std::vector<int>& depths,
                   const TlaOptions& opts = {});

} // namespace awlab::tla
