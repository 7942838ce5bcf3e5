/*
 * rep.hpp — orthogonal one-parameter groups (U_t) on finite real Hilbert spaces
 *
 * A representation is stored as spectral data:
 *
 *   RepSpec = trivial part of dimension n₀ (U_t = id)
 *           ⊕ rotation blocks (θ_j, m_j): m_j planes ℝ² on which U_t is the
 *             rotation by angle tθ_j, θ_j > 0.
 *
 * On the complexification H = ℂ^N (same coordinates, N = n₀ + 2Σm_j) the
 * group is U_t = A^{it} for the unique positive self-adjoint A:
 *
 *   - trivial coordinates:  A = 1;
 *   - each plane has the A-eigenbasis ξ₁ = (1,−i)/√2, ξ₂ = (1,i)/√2 with
 *     Aξ₁ = e^{θ}ξ₁ and Aξ₂ = e^{−θ}ξ₂, so the spectrum of A is symmetric
 *     under a ↦ 1/a.  Functional calculus per plane:
 *
 *       f(A) = [ (f₊+f₋)/2    i(f₊−f₋)/2 ]      f± = f(e^{±θ})
 *              [ −i(f₊−f₋)/2  (f₊+f₋)/2  ]
 *
 * Derived objects:
 *
 *   embed : H_ℝ → K_ℝ ⊂ H, ξ ↦ (2A/(1+A))^{1/2} ξ — an ℝ-linear isometry
 *           for the real part of the inner product (‖embed ξ‖ = ‖ξ‖).
 *   J     : componentwise conjugation in the real coordinate basis.
 *   T     = J A^{−1/2}, a conjugate-linear involution; its fixed points are
 *           exactly the image K_ℝ of embed.  JAJ = A^{−1} gives the closed
 *           form Tζ = A^{1/2} conj(ζ).
 *
 * Classification of the factor generated by the associated field algebra:
 *
 *   NonFactor_dim1  N = 1;
 *   II_1            no blocks, N ≥ 2;
 *   III_lambda      all θ_j ∈ θ*ℤ for a largest θ* > 0; λ = e^{−θ*};
 *   III_1           otherwise (incommensurable frequencies).
 *
 * Commensurability on floats is decided by continued-fraction integer-ratio
 * detection with tolerance 1e−9 and denominator bound 10⁴; frequencies given
 * as exact rationals {num, den, log_base} (θ = (num/den)·log(log_base)) with
 * one common base use exact integer arithmetic instead.  The decision path
 * is recorded in the label.
 */

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace awlab::rep {

// ── Spectral data types ────────────────────────────────────────────────────────

// Exact frequency θ = (num/den) · log(log_base).
struct RationalFrequency {
    long long num = 0;
    long long den = 1;
    double log_base = 1.0;
};

struct Block {
    double frequency = 0.0; // θ_j > 0
    int multiplicity = 0;   // m_j ≥ 1
    std::optional<RationalFrequency> rational; // set when given exactly
};

struct RepSpec {
    int trivial_dim = 0;
    std::vector<Block> blocks; // sorted by frequency, frequencies distinct
    bool declared_continuous = false;

    int real_dim() const {
        int m = 0;
        for (const auto& b : blocks) m += b.multiplicity;
        return trivial_dim + 2 * m;
    }
    // The complexification has the same dimension; coordinates are ordered
    // [trivial | block 1 planes | block 2 planes | ...].
    int complex_dim() const { return real_dim(); }
};

// Eigenvalues of A on the complexification with multiplicities.
struct SpectralData {
    std::vector<std::pair<double, int>> eigen_pairs; // (a_value, multiplicity)
};

enum class FactorType { NonFactor_dim1, II_1, III_lambda, III_1 };

struct TypeLabel {
    FactorType type = FactorType::II_1;
    double lambda = 0.0;                 // set for III_lambda, in (0,1)
    std::vector<double> s_generators;    // generators of the S-invariant group
    bool almost_periodic = true;         // false only for declared-continuous input
    std::string method;                  // "none" | "exact-rational" |
                                         // "float-ratio" | "declared-continuous"
};

std::string factor_type_name(FactorType t);

// ── Parsing and serialization ──────────────────────────────────────────────────

// JSON schema:
//   {"trivial_dim": int, "blocks": [{"frequency": number |
//    {"num":int,"den":int,"log_base":number}, "multiplicity": int}],
//    "declared_continuous": bool?}
// Duplicate frequencies merge their multiplicities.  Throws
// std::invalid_argument on malformed input, non-positive frequency or
// multiplicity, or zero total dimension.
RepSpec parse_rep_spec(const std::string& json_text);

std::string rep_to_json(const RepSpec& rep);

// ── Spectrum and classification ────────────────────────────────────────────────

// {1: trivial_dim} ∪ {e^{±θ_j}: m_j}; symmetric under inversion by construction.
SpectralData generator_spectrum(const RepSpec& rep);

TypeLabel classify(const RepSpec& rep);

// Label rendered as the CLI report object:
//   {"type": ..., "lambda": ..., "s_invariant": [...], ...}
std::string type_label_to_json(const RepSpec& rep);

// ── Matrices and vector maps on the complexification ──────────────────────────

// Full N×N matrices (N = complex_dim); block-diagonal over planes.
Eigen::MatrixXcd A_matrix(const RepSpec& rep);
Eigen::MatrixXcd U_matrix(const RepSpec& rep, double t); // U_t = A^{it}
// A^{z} for complex z (z = it gives U_t; z = −1/2 enters T).
Eigen::MatrixXcd A_power_matrix(const RepSpec& rep, std::complex<double> z);

// A^{z} ζ without materializing the matrix.
Eigen::VectorXcd a_power_apply(const RepSpec& rep, std::complex<double> z,
                               const Eigen::VectorXcd& zeta);

// Isometric embedding of H_ℝ: ξ real, result in K_ℝ; ‖result‖ = ‖ξ‖.
Eigen::VectorXcd embed(const RepSpec& rep, const Eigen::VectorXd& xi);

// J: componentwise conjugation.  T = JA^{−1/2}: conjugate-linear, T² = id,
// fixed-point set K_ℝ.
Eigen::VectorXcd involution_J(const Eigen::VectorXcd& zeta);
Eigen::VectorXcd involution_T(const RepSpec& rep, const Eigen::VectorXcd& zeta);

// A-eigenvectors of one plane: which = +1 selects ξ₁ (eigenvalue e^{θ}),
// which = −1 selects ξ₂ (eigenvalue e^{−θ}).  copy indexes the plane within
// the block.  Vectors are unit, supported on that plane's two coordinates.
Eigen::VectorXcd plane_eigenvector(const RepSpec& rep, int block, int copy, int which);

// Offset of the first coordinate of plane `copy` of block `block`.
int plane_offset(const RepSpec& rep, int block, int copy);

} // namespace awlab::rep
