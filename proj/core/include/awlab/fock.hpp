/*
 * fock.hpp — truncated full Fock space and its operator algebra
 *
 * 𝓕(H) = ℂΩ ⊕ ⊕_{n=1}^{D} H^{⊗n} for H = ℂ^d, with the orthonormal word
 * basis over the alphabet {0,…,d−1} enumerated in graded lexicographic
 * order: all words of length n precede those of length n+1, and within a
 * length the leftmost (first tensor slot) letter is most significant.
 * Index arithmetic:
 *
 *   index(i₁…iₙ) = offset[n] + Σ_k i_k d^{n−k},   offset[n] = Σ_{m<n} d^m.
 *
 * Operators:
 *
 *   ℓ(ζ)   creation: Ω ↦ ζ, w ↦ ζ⊗w; the top grade D is annihilated by
 *          truncation.  ℓ(ζ)* is the matrix adjoint;
 *          ℓ(ζ)*ℓ(η) = ⟨η,ζ⟩·1 holds exactly below the top grade.
 *   s(ζ)   field (ℓ(ζ)+ℓ(ζ)*)/2; for ζ = embed(ξ) with ‖ξ‖ = r its vacuum
 *          distribution is semicircular on [−r, r]: φ(s^{2k}) = C_k (r/2)^{2k}.
 *   y      generalized circular ℓ(ξ₁) + √λ ℓ(ξ₂)*, ξ₁ ⊥ ξ₂ unit:
 *          φ(y*y) = 1, φ(yy*) = λ.
 *
 * Exactness bookkeeping: a word of total tensor degree m has every vacuum
 * moment unaffected by truncation iff m ≤ D (a degree-m word explores rank
 * ≤ m tensors only).  Letters carry degree 1; products add degrees; sums
 * take the max; exact_depth = ⌊D/degree⌋.
 *
 * Storage: dense matrices up to total_dim 20 000 (budget permitting),
 * row-compressed sparse above; both paths agree to 1e−12 on the shared
 * test battery.  A per-space byte budget (default 2 GiB, overridable via
 * the AWLAB_BUDGET_BYTES environment variable or explicitly) caps both the
 * basis size (16·total_dim, one dense state vector) and any dense operator
 * allocation (16·total_dim²).
 *
 * Letter expressions: words in {ℓ(ζ), ℓ(ζ)*} evaluated against the vacuum
 * by direct structural application to sparse state vectors — the same
 * truncation semantics as the matrices, without materializing them.
 */

#pragma once

#include "awlab/rep.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace awlab::fock {

using cd = std::complex<double>;
using SparseCd = Eigen::SparseMatrix<cd, Eigen::RowMajor>;

// ── FockSpace ──────────────────────────────────────────────────────────────────

struct FockSpace {
    int d = 1;
    int D = 1;
    std::vector<std::size_t> offset; // offset[n], n = 0..D+1; offset[D+1] = total_dim
    std::size_t total_dim = 0;
    std::size_t budget_bytes = 0;

    // Throws std::length_error when 16·total_dim exceeds the budget
    // (message reports the required dimension), std::invalid_argument on
    // d < 1 or D < 1.  Default budget: AWLAB_BUDGET_BYTES or 2^31.
    static FockSpace build(int d, int D);
    static FockSpace build(int d, int D, std::size_t budget_bytes);

    std::size_t index_of(std::span<const int> word) const;
    std::vector<int> word_of(std::size_t index) const;
    int length_of(std::size_t index) const;
};

// ── FockOperator ───────────────────────────────────────────────────────────────

enum class StorageHint { automatic, dense, sparse };

struct FockOperator {
    FockSpace space;
    std::shared_ptr<const Eigen::MatrixXcd> dense; // exactly one of dense/sparse set
    std::shared_ptr<const SparseCd> sparse;
    int degree = 0;      // tensor degree: letters 1, products add, sums max
    int exact_depth = 0; // ⌊D / max(degree,1)⌋
    std::string label;

    bool is_dense() const { return dense != nullptr; }
    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
    Eigen::MatrixXcd to_dense() const; // budget-checked materialization
    FockOperator adjoint() const;
};

// Letters and algebra.  ξ dimensions must equal space.d.
FockOperator creation(const FockSpace& F, const Eigen::VectorXcd& xi,
                      bool adjoint = false, StorageHint hint = StorageHint::automatic);
// (ℓ(ζ) + ℓ(ζ)*)/2 at a complex one-particle vector.
FockOperator field_operator(const FockSpace& F, const Eigen::VectorXcd& zeta,
                            StorageHint hint = StorageHint::automatic);
// Field at embed(ξ) ∈ K_ℝ for real ξ; rep.complex_dim() must equal F.d.
FockOperator semicircular_field(const FockSpace& F, const rep::RepSpec& rep,
                                const Eigen::VectorXd& xi,
                                StorageHint hint = StorageHint::automatic);
// y = ℓ(ξ₁) + √λ ℓ(ξ₂)*, 0 < λ ≤ 1, ξ₁ ⊥ ξ₂ unit (tolerance 1e−12).
FockOperator generalized_circular(const FockSpace& F, double lambda,
                                  const Eigen::VectorXcd& xi1, const Eigen::VectorXcd& xi2,
                                  StorageHint hint = StorageHint::automatic);
FockOperator identity_operator(const FockSpace& F, StorageHint hint = StorageHint::automatic);

FockOperator op_add(const FockOperator& a, const FockOperator& b);
FockOperator op_sub(const FockOperator& a, const FockOperator& b);
FockOperator op_mul(const FockOperator& a, const FockOperator& b);
FockOperator op_scale(cd c, const FockOperator& a);

// ── Vacuum state ───────────────────────────────────────────────────────────────

struct MomentResult {
    cd value{0.0, 0.0};
    bool exact = false; // total degree within the truncation depth
};

// φ(x) = ⟨xΩ, Ω⟩.
MomentResult vacuum_expectation(const FockOperator& x);
// φ(x₁x₂⋯x_k) applied right-to-left to Ω; exact iff Σ degrees ≤ D.
MomentResult vacuum_moment(std::span<const FockOperator* const> word);

// ── Letter expressions (matrix-free words) ─────────────────────────────────────

struct Letter {
    bool create = true; // ℓ(ζ) if true, ℓ(ζ)* if false
    Eigen::VectorXcd zeta;
};
struct LetterWord {
    cd coeff{1.0, 0.0};
    std::vector<Letter> letters;
};
using LetterExpr = std::vector<LetterWord>; // formal sum

LetterExpr le_create(const Eigen::VectorXcd& zeta);
LetterExpr le_annihilate(const Eigen::VectorXcd& zeta);
LetterExpr le_field(const Eigen::VectorXcd& zeta); // (ℓ(ζ)+ℓ(ζ)*)/2
LetterExpr le_add(const LetterExpr& a, const LetterExpr& b);
LetterExpr le_mul(const LetterExpr& a, const LetterExpr& b);
LetterExpr le_scale(cd c, const LetterExpr& a);
LetterExpr le_adjoint(const LetterExpr& a);

// Structural vacuum moment with the same truncation semantics as the
// matrices (climbs above grade D die); exact iff max word length ≤ D.
MomentResult vacuum_moment(const FockSpace& F, const LetterExpr& x);

// Dense materialization of a letter expression (for cross-validation).
Eigen::MatrixXcd le_to_dense(const FockSpace& F, const LetterExpr& x);

// ── Diagnostics ────────────────────────────────────────────────────────────────

// ‖2s(ξ)+2is(η) − (ℓ(ζ)+ℓ(Tζ)*)‖_max with ζ = ξ+iη, for ξ, η ∈ K_ℝ.
double field_pair_identity_check(const FockSpace& F, const rep::RepSpec& rep,
                                 const Eigen::VectorXcd& xiK, const Eigen::VectorXcd& etaK);

struct Histogram {
    std::vector<double> left, right;
    std::vector<std::int64_t> count;
    std::string to_csv() const; // "bin_left,bin_right,count" rows with header
};

// Eigenvalue histogram of a self-adjoint operator (tolerance 1e−10, else
// std::invalid_argument).  Truncated spectra only approximate the law;
// moments are the acceptance currency.
Histogram empirical_spectrum(const FockOperator& x, int bins);

// Uniform-bin histogram of sample values (shared helper).
Histogram make_histogram(std::span<const double> values, int bins);

// ── Serialization ──────────────────────────────────────────────────────────────

// Single-line JSON: {"d","D","label","exact_depth","degree","storage",...}
// with base64 payloads: dense = column-major complex doubles (re,im);
// sparse = CSR arrays (indptr, indices as int64, data as complex doubles).
std::string serialize_operator(const FockOperator& x);
FockOperator deserialize_operator(const std::string& text);

} // namespace awlab::fock
