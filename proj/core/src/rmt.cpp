#include "awlab/rmt.hpp"

#include "awlab/laws.hpp"
#include "awlab/util.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>

namespace awlab::rmt {

using cd = std::complex<double>;
using json = nlohmann::ordered_json;

// ── Ensembles ──────────────────────────────────────────────────────────────────

std::string family_name(Family f) {
    switch (f) {
        case Family::gue_single: return "gue_single";
        case Family::gue_pair: return "gue_pair";
        case Family::complex_ginibre: return "complex_ginibre";
    }
    throw std::logic_error("family_name: unknown family");
}

Family parse_family(const std::string& name) {
    if (name == "gue_single") return Family::gue_single;
    if (name == "gue_pair") return Family::gue_pair;
    if (name == "complex_ginibre") return Family::complex_ginibre;
    throw std::invalid_argument("unknown ensemble family '" + name +
                                "' (expected gue_single, gue_pair, or complex_ginibre)");
}

namespace {

    void check_n(int n) {
        if (n < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    }

    // Entry keys: two independent 64-bit keys per (seed, stream, sample, i, j).
    inline std::pair<std::uint64_t, std::uint64_t> entry_keys(std::uint64_t seed,
                                                              std::uint64_t stream,
                                                              std::uint64_t sample,
                                                              std::uint64_t i,
                                                              std::uint64_t j) {
        return {util::key_of({seed, stream, sample, i, j, 0}),
                util::key_of({seed, stream, sample, i, j, 1})};
    }

} // namespace

Eigen::MatrixXcd sample_gue(int n, std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t sample) {
    check_n(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i) {
        auto [kd1, kd2] = entry_keys(seed, stream, sample, static_cast<std::uint64_t>(i),
                                     static_cast<std::uint64_t>(i));
        m(i, i) = cd(util::gauss_pair(kd1, kd2).first * scale, 0.0);
        for (int j = i + 1; j < n; ++j) {
            auto [k1, k2] = entry_keys(seed, stream, sample, static_cast<std::uint64_t>(i),
                                       static_cast<std::uint64_t>(j));
            const cd z = util::gauss_complex(k1, k2) * scale;
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return m;
}

Eigen::MatrixXcd sample_ginibre(int n, std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t sample) {
    check_n(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto [k1, k2] = entry_keys(seed, stream, sample, static_cast<std::uint64_t>(i),
                                       static_cast<std::uint64_t>(j));
            m(i, j) = util::gauss_complex(k1, k2) * scale;
        }
    return m;
}

// ── Moment estimation ──────────────────────────────────────────────────────────

namespace {

    // tr(AB) through the Frobenius pairing Σ_ij A_ij B_ji; the traces reported
    // here are real for Hermitian words, so the imaginary part is rounding.
    double frob_trace(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
        return a.cwiseProduct(b.transpose()).sum().real();
    }

    struct Stats {
        double mean = 0.0;
        double se = 0.0;
    };

    // Mean and standard error of the mean, both via pairwise summation in
    // sample order.
    Stats summarize(const std::vector<double>& vals) {
        const auto s = static_cast<double>(vals.size());
        Stats st;
        st.mean = util::pairwise_sum(vals) / s;
        if (vals.size() < 2) return st;
        std::vector<double> sq(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const double r = vals[i] - st.mean;
            sq[i] = r * r;
        }
        st.se = std::sqrt(util::pairwise_sum(sq) / (s * (s - 1.0)));
        return st;
    }

    void check_spec(const EnsembleSpec& spec) {
        if (spec.n < 2) throw std::invalid_argument("ensemble dimension n must be >= 2");
        if (spec.samples < 1) throw std::invalid_argument("ensemble needs >= 1 sample");
    }

    // tr_n(X^k) for k = 1..order from X, X², X³ = X²·X, X⁴ = X³·X: every
    // higher power is a Frobenius pairing of two stored powers.
    std::vector<double> hermitian_power_traces(const Eigen::MatrixXcd& x, int order) {
        const auto n = static_cast<double>(x.rows());
        std::vector<double> t(static_cast<std::size_t>(order) + 1, 0.0);
        t[1] = x.trace().real() / n;
        if (order < 2) return t;
        Eigen::MatrixXcd p2(x.rows(), x.cols());
        p2.noalias() = x * x;
        t[2] = p2.trace().real() / n;
        if (order >= 3) t[3] = frob_trace(p2, x) / n;
        if (order >= 4) t[4] = frob_trace(p2, p2) / n;
        if (order < 5) return t;
        Eigen::MatrixXcd p3(x.rows(), x.cols());
        p3.noalias() = p2 * x;
        t[5] = frob_trace(p3, p2) / n;
        if (order >= 6) t[6] = frob_trace(p3, p3) / n;
        if (order < 7) return t;
        Eigen::MatrixXcd p4(x.rows(), x.cols());
        p4.noalias() = p3 * x;
        t[7] = frob_trace(p4, p3) / n;
        if (order >= 8) t[8] = frob_trace(p4, p4) / n;
        return t;
    }

} // namespace

McReport mc_moments(const EnsembleSpec& spec, int order) {
    check_spec(spec);
    if (order < 1 || order > 8)
        throw std::invalid_argument("moment order must be in [1, 8]");

    McReport report;
    report.spec = spec;

    if (spec.family == Family::complex_ginibre) {
        // Even words only: tr_n((Y*Y)^m) → C_m.
        const int m_max = order / 2;
        if (m_max < 1)
            throw std::invalid_argument("ginibre *-moments need order >= 2");
        const std::vector<double> cat = laws::catalan_numbers(m_max);
        std::vector<std::vector<double>> vals(static_cast<std::size_t>(m_max) + 1);
        for (int s = 0; s < spec.samples; ++s) {
            const Eigen::MatrixXcd y =
                sample_ginibre(spec.n, spec.seed, 0, static_cast<std::uint64_t>(s));
            const auto n = static_cast<double>(spec.n);
            Eigen::MatrixXcd b(spec.n, spec.n);
            b.noalias() = y.adjoint() * y;
            vals[1].push_back(b.trace().real() / n);
            if (m_max >= 2) vals[2].push_back(frob_trace(b, b) / n);
            if (m_max >= 3) {
                Eigen::MatrixXcd b2(spec.n, spec.n);
                b2.noalias() = b * b;
                vals[3].push_back(frob_trace(b2, b) / n);
                if (m_max >= 4) vals[4].push_back(frob_trace(b2, b2) / n);
            }
        }
        for (int m = 1; m <= m_max; ++m) {
            const Stats st = summarize(vals[static_cast<std::size_t>(m)]);
            report.rows.push_back({2 * m, st.mean, st.se, cat[static_cast<std::size_t>(m)]});
        }
        return report;
    }

    // GUE: a gue_pair spec reports the moments of its first stream.
    const std::vector<double> target =
        laws::law_moments(laws::Law::semicircle, 2.0, order);
    std::vector<std::vector<double>> vals(static_cast<std::size_t>(order) + 1);
    for (int s = 0; s < spec.samples; ++s) {
        const Eigen::MatrixXcd x =
            sample_gue(spec.n, spec.seed, 0, static_cast<std::uint64_t>(s));
        const std::vector<double> t = hermitian_power_traces(x, order);
        for (int k = 1; k <= order; ++k) vals[static_cast<std::size_t>(k)].push_back(t[static_cast<std::size_t>(k)]);
    }
    for (int k = 1; k <= order; ++k) {
        const Stats st = summarize(vals[static_cast<std::size_t>(k)]);
        report.rows.push_back({k, st.mean, st.se, target[static_cast<std::size_t>(k)]});
    }
    return report;
}

namespace {

    std::string spec_header(const EnsembleSpec& spec) {
        return "# family=" + family_name(spec.family) + ",n=" + std::to_string(spec.n) +
               ",samples=" + std::to_string(spec.samples) +
               ",seed=" + std::to_string(spec.seed) + "\n";
    }

    json spec_json(const EnsembleSpec& spec) {
        json j;
        j["family"] = family_name(spec.family);
        j["n"] = spec.n;
        j["samples"] = spec.samples;
        j["seed"] = spec.seed;
        return j;
    }

} // namespace

std::string McReport::to_csv() const {
    std::string out = spec_header(spec);
    out += "k,estimate,stderr,target\n";
    for (const MomentRow& r : rows)
        out += std::to_string(r.k) + "," + util::fmt_g17(r.estimate) + "," +
               util::fmt_g17(r.stderr_est) + "," + util::fmt_g17(r.target) + "\n";
    return out;
}

std::string McReport::to_json() const {
    json j = spec_json(spec);
    j["rows"] = json::array();
    for (const MomentRow& r : rows)
        j["rows"].push_back({{"k", r.k},
                             {"estimate", r.estimate},
                             {"stderr", r.stderr_est},
                             {"target", r.target}});
    return j.dump();
}

// ── Asymptotic freeness ────────────────────────────────────────────────────────

namespace {

    struct WordStats {
        std::string word;
        Stats stats;
        bool applicable = true;
    };

    // Per-sample centered traces tr_n((X̊Y̊)^m) for m = 1..word_len/2 plus the
    // single-family control tr_n(X̊X̊).
    std::vector<WordStats> pair_word_stats(const EnsembleSpec& spec, int word_len) {
        check_spec(spec);
        if (spec.family != Family::gue_pair)
            throw std::invalid_argument(
                "asymptotic freeness needs family gue_pair (an independent matrix pair)");
        if (word_len < 2 || word_len > 6)
            throw std::invalid_argument("alternating word length must be in [2, 6]");

        const int m_max = word_len / 2;
        std::vector<std::vector<double>> alt(static_cast<std::size_t>(m_max) + 1);
        std::vector<double> control;
        const auto n = static_cast<double>(spec.n);
        for (int s = 0; s < spec.samples; ++s) {
            Eigen::MatrixXcd x = sample_gue(spec.n, spec.seed, 0, static_cast<std::uint64_t>(s));
            Eigen::MatrixXcd y = sample_gue(spec.n, spec.seed, 1, static_cast<std::uint64_t>(s));
            x.diagonal().array() -= x.trace() / n;
            y.diagonal().array() -= y.trace() / n;
            alt[1].push_back(frob_trace(x, y) / n);
            control.push_back(frob_trace(x, x) / n);
            if (m_max >= 2) {
                Eigen::MatrixXcd g(spec.n, spec.n);
                g.noalias() = x * y;
                alt[2].push_back(frob_trace(g, g) / n);
                if (m_max >= 3) {
                    Eigen::MatrixXcd g2(spec.n, spec.n);
                    g2.noalias() = g * g;
                    alt[3].push_back(frob_trace(g2, g) / n);
                }
            }
        }

        std::vector<WordStats> rows;
        std::string word;
        for (int m = 1; m <= m_max; ++m) {
            word += "XY";
            rows.push_back({word, summarize(alt[static_cast<std::size_t>(m)]), true});
        }
        rows.push_back({"XX", summarize(control), false});
        return rows;
    }

} // namespace

BandSet calibrate_bands(const EnsembleSpec& pilot, int word_len, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("band factor must be positive");
    BandSet bs;
    bs.n = pilot.n;
    bs.samples = pilot.samples;
    bs.pilot_seed = pilot.seed;
    bs.factor = factor;
    for (const WordStats& ws : pair_word_stats(pilot, word_len)) {
        if (!ws.applicable) continue;
        bs.bands[ws.word] = std::abs(ws.stats.mean) + factor * ws.stats.se;
    }
    return bs;
}

FreenessMcReport asymptotic_freeness_check(const EnsembleSpec& spec, int word_len,
                                           const BandSet& bands) {
    if (bands.n != spec.n)
        throw std::invalid_argument(
            "band set calibrated at n=" + std::to_string(bands.n) +
            " cannot judge a run at n=" + std::to_string(spec.n));

    FreenessMcReport report;
    report.spec = spec;
    report.pass = true;
    for (const WordStats& ws : pair_word_stats(spec, word_len)) {
        FreenessRow row;
        row.word = ws.word;
        row.estimate = ws.stats.mean;
        row.stderr_est = ws.stats.se;
        row.applicable = ws.applicable;
        if (ws.applicable) {
            const auto it = bands.bands.find(ws.word);
            if (it == bands.bands.end())
                throw std::invalid_argument("no calibrated band for word '" + ws.word + "'");
            row.band = it->second;
            row.within = std::abs(row.estimate) <= row.band;
            report.pass = report.pass && row.within;
        }
        report.rows.push_back(row);
    }
    return report;
}

std::string BandSet::to_json() const {
    json j;
    j["n"] = n;
    j["samples"] = samples;
    j["pilot_seed"] = pilot_seed;
    j["factor"] = factor;
    j["bands"] = json::object();
    for (const auto& [word, band] : bands) j["bands"][word] = band;
    return j.dump(2) + "\n";
}

BandSet BandSet::from_json(const std::string& text) {
    const json j = json::parse(text);
    BandSet bs;
    bs.n = j.at("n").get<int>();
    bs.samples = j.at("samples").get<int>();
    bs.pilot_seed = j.at("pilot_seed").get<std::uint64_t>();
    bs.factor = j.at("factor").get<double>();
    for (const auto& [word, band] : j.at("bands").items())
        bs.bands[word] = band.get<double>();
    return bs;
}

std::string FreenessMcReport::to_csv() const {
    std::string out = spec_header(spec);
    out += "word,estimate,stderr,band,within,applicable\n";
    for (const FreenessRow& r : rows)
        out += r.word + "," + util::fmt_g17(r.estimate) + "," + util::fmt_g17(r.stderr_est) +
               "," + util::fmt_g17(r.band) + "," + (r.within ? "1" : "0") + "," +
               (r.applicable ? "1" : "0") + "\n";
    return out;
}

std::string FreenessMcReport::to_json() const {
    json j = spec_json(spec);
    j["rows"] = json::array();
    for (const FreenessRow& r : rows)
        j["rows"].push_back({{"word", r.word},
                             {"estimate", r.estimate},
                             {"stderr", r.stderr_est},
                             {"band", r.band},
                             {"within", r.within},
                             {"applicable", r.applicable}});
    j["pass"] = pass;
    return j.dump();
}

} // namespace awlab::rmt
