/*
 * util.hpp — deterministic utilities shared across the workbench
 *
 * Counter-based random number generation:
 *   Every random quantity is a pure function of (seed, stream, counter...)
 *   through the SplitMix64 finalizer.  There is no mutable generator state,
 *   so sampling is reproducible independent of evaluation order and thread
 *   count: entry (i,j) of sample s under seed q is the same bits no matter
 *   when it is drawn.
 *
 *     mix64    : the SplitMix64 finalizer (Steele, Lea, Flood; the same
 *                avalanche stage used by java.util.SplittableRandom).
 *     key_of   : folds an arbitrary list of 64-bit indices into one key by
 *                iterated golden-ratio offset + mix64.
 *     u01      : IEEE double in [0,1) from the top 53 bits.
 *     gauss_pair: Box-Muller transform of two keyed uniforms; u1 is shifted
 *                into (0,1] so log(u1) is finite.
 *
 * Deterministic aggregation:
 *   pairwise_sum reduces a vector by balanced binary splitting; the result
 *   is independent of chunking or thread scheduling and has O(log n)
 *   error growth.
 *
 * base64: RFC 4648 alphabet with '=' padding; decode validates characters
 *   and length.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace awlab::util {

// ── Counter-based RNG ──────────────────────────────────────────────────────────

// SplitMix64 finalizer: bijective avalanche mix of a 64-bit word.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Fold indices (seed, stream, counters...) into one 64-bit key.
// Each level is mixed before absorbing the next index, so (1,0) and (0,1)
// land in unrelated points of the sequence.
inline constexpr std::uint64_t key_of(std::initializer_list<std::uint64_t> ix) {
    std::uint64_t k = 0x243F6A8885A308D3ULL; // fractional digits of pi
    for (std::uint64_t v : ix) k = mix64(k ^ v);
    return k;
}

// Uniform double in [0,1) from the top 53 bits of a mixed key.
inline constexpr double u01(std::uint64_t key) {
    return static_cast<double>(key >> 11) * 0x1.0p-53;
}

// Uniform double in [-1,1).
inline constexpr double u_pm1(std::uint64_t key) {
    return 2.0 * u01(key) - 1.0;
}

// Box-Muller: two independent N(0,1) values from two keys.
// u1 ∈ (0,1] keeps log finite; u2 ∈ [0,1) is the angle.
std::pair<double, double> gauss_pair(std::uint64_t key1, std::uint64_t key2);

// One standard complex Gaussian (variance 1: Re, Im each N(0,1/2)).
std::complex<double> gauss_complex(std::uint64_t key1, std::uint64_t key2);

// ── Deterministic aggregation ──────────────────────────────────────────────────

// Balanced pairwise summation; result depends only on the input order.
double pairwise_sum(std::span<const double> xs);

// ── base64 (RFC 4648) ──────────────────────────────────────────────────────────

std::string base64_encode(std::span<const unsigned char> bytes);
std::vector<unsigned char> base64_decode(const std::string& text); // throws std::invalid_argument

// ── Formatting ─────────────────────────────────────────────────────────────────

// Shortest-exact decimal for CSV cells: %.17g guarantees round-trip.
inline std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace awlab::util
