/*
 * Moment sequences of the classical laws that arise as vacuum distributions
 * on the full Fock space.
 *
 *   semicircle(r):   density (2/(πr²))√(r²−x²) on [−r,r];
 *                    m_{2k} = C_k (r/2)^{2k} (Catalan numbers), odd moments 0.
 *   quarter_circle:  density (4/π)√(1−x²) on [0,1];
 *                    m_k = Γ((k+1)/2) / (√π · Γ(k/2+2)).
 *   haar_unitary:    uniform law on the unit circle; φ(uⁿ) = δ_{n0}.
 *   dirac_geometric: Σ_j λʲ(1−λ) δ_j on {0,1,2,…}; m_k = (1−λ) Σ_j jᵏ λʲ.
 *
 * All sequences are exact in double precision up to order 32; requests
 * beyond that throw std::invalid_argument.  Entry k of the returned list
 * is m_k, with m_0 = 1.
 */
#pragma once

#include <vector>

namespace awlab::laws {

// ── Supported laws ─────────────────────────────────────────────────────────────

enum class Law { semicircle, quarter_circle, haar_unitary, dirac_geometric };

inline constexpr int max_order = 32;

// ── Moment sequences ───────────────────────────────────────────────────────────

// Catalan numbers C_0..C_n as exact doubles (n ≤ 16 stays below 2^53).
std::vector<double> catalan_numbers(int n);

// Moments m_0..m_order of the named law.  `param` is the radius r for
// semicircle and λ ∈ (0,1) for dirac_geometric; it is ignored otherwise.
std::vector<double> law_moments(Law law, double param, int order);

// Convenience overload for the parameter-free laws.
std::vector<double> law_moments(Law law, int order);

} // namespace awlab::laws
