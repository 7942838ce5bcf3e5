/*
 * Monte Carlo random-matrix models for the semicircular and circular laws.
 *
 * Sampling is fully counter-based: entry (i,j) of sample s in stream w is a
 * Gaussian generated from SplitMix64 keys mixed from
 * (seed, stream, sample, i, j), so matrices are bitwise reproducible for a
 * fixed seed regardless of evaluation order or thread count.
 *
 *   GUE:      Hermitian, real diagonal N(0, 1/n), strictly upper entries
 *             complex Gaussian with E|z|² = 1/n; empirical law → semicircle
 *             of radius 2 (m₂ → 1, m₄ → 2).
 *   Ginibre:  all entries independent complex Gaussian, E|z|² = 1/n;
 *             tr_n((Y*Y)^k) → Catalan C_k.
 *
 * mc_moments averages normalized traces tr_n(X^k) over samples with Monte
 * Carlo standard errors, using ≤ 3 matrix products per sample (powers are
 * combined via the Frobenius pairing tr(AB) = Σ_ij A_ij B_ji).  Aggregation
 * is deterministic pairwise summation in sample order.
 *
 * asymptotic_freeness_check evaluates the centered alternating trace words
 * tr_n((X̊Y̊)^m) of an independent GUE pair (X̊ = X − tr_n(X)·1 per sample)
 * against tolerance bands calibrated by a pilot run and stored as fixtures.
 * A single-family control word tr_n(X̊X̊) is reported but flagged
 * inapplicable: it tests nothing about freeness and does not vanish.
 */
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace awlab::rmt {

// ── Ensembles ──────────────────────────────────────────────────────────────────

enum class Family { gue_single, gue_pair, complex_ginibre };

std::string family_name(Family f);
Family parse_family(const std::string& name); // throws std::invalid_argument

struct EnsembleSpec {
    int n = 512;
    int samples = 50;
    std::uint64_t seed = 0;
    Family family = Family::gue_single;
};

// Deterministic in (seed, stream, sample); Hermitian by construction.
Eigen::MatrixXcd sample_gue(int n, std::uint64_t seed, std::uint64_t stream = 0,
                            std::uint64_t sample = 0);
Eigen::MatrixXcd sample_ginibre(int n, std::uint64_t seed, std::uint64_t stream = 0,
                                std::uint64_t sample = 0);

// ── Moment estimation ──────────────────────────────────────────────────────────

struct MomentRow {
    int k = 0;
    double estimate = 0.0;
    double stderr_est = 0.0;
    double target = 0.0;
};

struct McReport {
    EnsembleSpec spec;
    std::vector<MomentRow> rows;

    // "# family=…,n=…,samples=…,seed=…" then "k,estimate,stderr,target" rows.
    std::string to_csv() const;
    std::string to_json() const;
};

// Normalized trace moments tr_n(X^k), k = 1..order (GUE; gue_pair uses its
// first stream) or tr_n((Y*Y)^(k/2)) for even k (Ginibre).  order ≤ 8.
McReport mc_moments(const EnsembleSpec& spec, int order);

// ── Asymptotic freeness ────────────────────────────────────────────────────────

struct BandSet {
    int n = 0;
    int samples = 0;
    std::uint64_t pilot_seed = 0;
    double factor = 0.0; // band = |pilot mean| + factor·(pilot stderr)
    std::map<std::string, double> bands;

    std::string to_json() const;
    static BandSet from_json(const std::string& text);
};

// Pilot run producing the tolerance bands for alternating words up to
// word_len (≤ 6).  Deterministic in pilot.seed.
BandSet calibrate_bands(const EnsembleSpec& pilot, int word_len, double factor = 6.0);

struct FreenessRow {
    std::string word;
    double estimate = 0.0;
    double stderr_est = 0.0;
    double band = 0.0;    // 0 for inapplicable rows
    bool within = false;
    bool applicable = true;
};

struct FreenessMcReport {
    EnsembleSpec spec;
    std::vector<FreenessRow> rows;
    bool pass = false; // every applicable row within its band

    std::string to_csv() const;
    std::string to_json() const;
};

// Requires spec.family == gue_pair, word_len ≤ 6, bands.n == spec.n, and a
// band entry for every alternating word tested.
FreenessMcReport asymptotic_freeness_check(const EnsembleSpec& spec, int word_len,
                                           const BandSet& bands);

} // namespace awlab::rmt
