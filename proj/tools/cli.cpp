/*
 * awlab — command-line driver for the free Araki-Woods workbench.
 *
 * Subcommands:
 *   classify       spectral-type classification of an orthogonal representation
 *   moments        vacuum moment of an operator word on a truncated Fock space
 *   verify         semicircle | freeness | kms | tla | barnett suites
 *   matrix-model   Monte Carlo moments / asymptotic-freeness checks
 *
 * Word grammar for `moments` (whitespace-separated terms):
 *   word  ::= { term }
 *   term  ::= "s" "(" index ")"   field  (ℓ(ζᵢ)+ℓ(ζᵢ)*)/2 at ζᵢ = embed(eᵢ)
 *           | "l" "(" index ")"   creation ℓ(eᵢ)
 *           | "l*" "(" index ")"  annihilation ℓ(eᵢ)*
 *           | "y"                 generalized circular ℓ(e₀)+√λ ℓ(e₁)*
 *           | "y*"                its adjoint
 *   index ::= non-negative integer
 *
 * Exit codes: 0 pass, 1 verification failure (or internal error), 2 usage
 * error.  Every report embeds its fully resolved configuration, and identical
 * argv produce byte-identical output.  Module errors are emitted to stderr as
 * one-line JSON {"error":{"code":...,"message":...}}.
 */
#include "awlab/barnett.hpp"
#include "awlab/fock.hpp"
#include "awlab/laws.hpp"
#include "awlab/modular.hpp"
#include "awlab/ncspace.hpp"
#include "awlab/rep.hpp"
#include "awlab/rmt.hpp"
#include "awlab/tla.hpp"
#include "awlab/util.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;
using cd = std::complex<double>;
using namespace awlab;

// ── Plumbing ───────────────────────────────────────────────────────────────────

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

[[noreturn]] void usage_error(const std::string& msg) { throw std::invalid_argument(msg); }

void require_format(const std::string& format, bool csv_available) {
    if (format != "json" && format != "csv")
        usage_error("unknown format '" + format + "' (expected json or csv)");
    if (format == "csv" && !csv_available)
        usage_error("this report has no csv rendering; use --format json");
}

// ── Word grammar ───────────────────────────────────────────────────────────────

struct WordTerm {
    enum class Kind { field, create, annihilate, circ, circ_adj };
    Kind kind = Kind::field;
    int index = 0;
};

std::vector<WordTerm> parse_word(const std::string& text) {
    std::vector<WordTerm> out;
    std::size_t pos = 0;
    const auto fail = [&](const std::string& what) {
        usage_error("word: " + what + " at offset " + std::to_string(pos));
    };
    const auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    const auto expect = [&](char c) {
        if (pos >= text.size() || text[pos] != c)
            fail(std::string("expected '") + c + "'");
        ++pos;
    };
    const auto parse_index = [&]() -> int {
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected index");
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            if (v > 1'000'000) fail("index too large");
            ++pos;
        }
        return static_cast<int>(v);
    };

    skip_ws();
    while (pos < text.size()) {
        const char c = text[pos];
        if (c == 's' || c == 'l') {
            ++pos;
            bool star = false;
            if (c == 'l' && pos < text.size() && text[pos] == '*') {
                star = true;
                ++pos;
            }
            skip_ws();
            expect('(');
            const int ix = parse_index();
            skip_ws();
            expect(')');
            out.push_back({c == 's' ? WordTerm::Kind::field
                                    : (star ? WordTerm::Kind::annihilate : WordTerm::Kind::create),
                           ix});
        } else if (c == 'y') {
            ++pos;
            bool star = false;
            if (pos < text.size() && text[pos] == '*') {
                star = true;
                ++pos;
            }
            out.push_back({star ? WordTerm::Kind::circ_adj : WordTerm::Kind::circ, 0});
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
        skip_ws();
    }
    return out;
}

// ── classify ───────────────────────────────────────────────────────────────────

struct ClassifyArgs {
    std::string rep_path;
    std::string format = "json";
};

int run_classify(const ClassifyArgs& a) {
    require_format(a.format, false);
    const rep::RepSpec spec = rep::parse_rep_spec(read_file(a.rep_path));
    json out = json::parse(rep::type_label_to_json(spec));
    out["config"] = {{"command", "classify"}, {"rep", a.rep_path}, {"format", a.format}};
    emit(out);
    return 0;
}

// ── moments ────────────────────────────────────────────────────────────────────

struct MomentsArgs {
    std::string word_text;
    std::string rep_path;
    int depth = 8;
    double lambda = 1.0;
    long long max_dim = 2'000'000;
    std::string format = "json";
};

int run_moments(const MomentsArgs& a) {
    require_format(a.format, true);
    const std::vector<WordTerm> terms = parse_word(a.word_text);

    int needed = 1;
    for (const WordTerm& t : terms) {
        if (t.kind == WordTerm::Kind::circ || t.kind == WordTerm::Kind::circ_adj)
            needed = std::max(needed, 2);
        else
            needed = std::max(needed, t.index + 1);
    }
    rep::RepSpec rspec;
    if (!a.rep_path.empty()) {
        rspec = rep::parse_rep_spec(read_file(a.rep_path));
    } else {
        rspec.trivial_dim = needed;
    }
    const int d = rspec.complex_dim();
    if (needed > d)
        usage_error("word needs one-particle dimension " + std::to_string(needed) +
                    " but the representation has dimension " + std::to_string(d));
    if (a.depth < 1) usage_error("--depth must be >= 1");

    const fock::FockSpace F = fock::FockSpace::build(d, a.depth);
    if (static_cast<long long>(F.total_dim) > a.max_dim)
        usage_error("Fock dimension " + std::to_string(F.total_dim) + " exceeds --max-dim " +
                    std::to_string(a.max_dim));

    std::vector<fock::FockOperator> ops;
    ops.reserve(terms.size());
    for (const WordTerm& t : terms) {
        switch (t.kind) {
            case WordTerm::Kind::field:
                ops.push_back(fock::semicircular_field(F, rspec, Eigen::VectorXd::Unit(d, t.index)));
                break;
            case WordTerm::Kind::create:
                ops.push_back(fock::creation(F, Eigen::VectorXcd::Unit(d, t.index)));
                break;
            case WordTerm::Kind::annihilate:
                ops.push_back(fock::creation(F, Eigen::VectorXcd::Unit(d, t.index), true));
                break;
            case WordTerm::Kind::circ:
                ops.push_back(fock::generalized_circular(F, a.lambda, Eigen::VectorXcd::Unit(d, 0),
                                                         Eigen::VectorXcd::Unit(d, 1)));
                break;
            case WordTerm::Kind::circ_adj:
                ops.push_back(fock::generalized_circular(F, a.lambda, Eigen::VectorXcd::Unit(d, 0),
                                                         Eigen::VectorXcd::Unit(d, 1))
                                  .adjoint());
                break;
        }
    }
    std::vector<const fock::FockOperator*> ptrs;
    ptrs.reserve(ops.size());
    for (const fock::FockOperator& op : ops) ptrs.push_back(&op);
    const fock::MomentResult r = fock::vacuum_moment(ptrs);

    const json config = {{"command", "moments"},
                         {"word", a.word_text},
                         {"rep", a.rep_path.empty() ? json(nullptr) : json(a.rep_path)},
                         {"depth", a.depth},
                         {"lambda", a.lambda},
                         {"max_dim", a.max_dim},
                         {"format", a.format}};
    if (a.format == "csv") {
        std::cout << "word,value_re,value_im,exact\n"
                  << "\"" << a.word_text << "\"," << util::fmt_g17(r.value.real()) << ","
                  << util::fmt_g17(r.value.imag()) << "," << (r.exact ? "1" : "0") << "\n";
        return 0;
    }
    emit(json{{"word", a.word_text},
              {"value", {r.value.real(), r.value.imag()}},
              {"exact", r.exact},
              {"config", config}});
    return 0;
}

// ── verify semicircle ──────────────────────────────────────────────────────────

struct SemicircleArgs {
    int depth = 8;
    std::string format = "json";
};

int run_semicircle(const SemicircleArgs& a) {
    require_format(a.format, true);
    if (a.depth < 2) usage_error("--depth must be >= 2");
    const fock::FockSpace F = fock::FockSpace::build(1, a.depth);
    const fock::LetterExpr s = fock::le_field(Eigen::VectorXcd::Unit(1, 0));
    const std::vector<double> target = laws::law_moments(laws::Law::semicircle, 1.0, a.depth);

    json rows = json::array();
    double max_rel_even = 0.0, max_abs_odd = 0.0;
    fock::LetterExpr w{{cd(1.0, 0.0), {}}}; // the empty word: 1
    for (int k = 0; k <= a.depth; ++k) {
        if (k > 0) w = fock::le_mul(w, s);
        const cd m = fock::vacuum_moment(F, w).value;
        double err = 0.0;
        if (k % 2 == 0) {
            err = std::abs(m - target[static_cast<std::size_t>(k)]) /
                  target[static_cast<std::size_t>(k)];
            max_rel_even = std::max(max_rel_even, err);
        } else {
            err = std::abs(m);
            max_abs_odd = std::max(max_abs_odd, err);
        }
        rows.push_back({{"k", k},
                        {"estimate", m.real()},
                        {"target", target[static_cast<std::size_t>(k)]},
                        {"error", err}});
    }
    const bool pass = max_rel_even <= 1e-12 && max_abs_odd <= 1e-14;
    if (a.format == "csv") {
        std::cout << "k,estimate,target,error\n";
        for (const json& r : rows)
            std::cout << r["k"].get<int>() << "," << util::fmt_g17(r["estimate"].get<double>())
                      << "," << util::fmt_g17(r["target"].get<double>()) << ","
                      << util::fmt_g17(r["error"].get<double>()) << "\n";
        return pass ? 0 : 1;
    }
    emit(json{{"suite", "semicircle"},
              {"max_relative_error_even", max_rel_even},
              {"max_abs_error_odd", max_abs_odd},
              {"rows", rows},
              {"pass", pass},
              {"config", {{"command", "verify semicircle"}, {"depth", a.depth}, {"format", a.format}}}});
    return pass ? 0 : 1;
}

// ── verify freeness ────────────────────────────────────────────────────────────

struct FreenessArgs {
    int max_len = 6;
    double tol = 1e-10;
    std::string format = "json";
};

json freeness_report_json(const nc::FreenessReport& r) {
    return {{"applicable", r.applicable}, {"pass", r.pass},
            {"max_residual", r.max_residual}, {"words_checked", r.words_checked},
            {"max_len", r.max_len},          {"tol", r.tol},
            {"worst_word", r.worst_word}};
}

int run_freeness(const FreenessArgs& a) {
    require_format(a.format, false);

    // Fock realization: fields at the two orthogonal summands of ℂ².
    nc::VacuumWordSpace vws("fock<C2>", 2);
    vws.add_generator("s0", vws.intern(fock::le_field(Eigen::VectorXcd::Unit(2, 0))));
    vws.add_generator("s1", vws.intern(fock::le_field(Eigen::VectorXcd::Unit(2, 1))));
    const nc::FreenessReport fock_side =
        nc::check_freeness(vws, {{"s0"}, {"s1"}}, a.max_len, a.tol);

    // Moment recursion on the reduced free product of the one-field factors:
    // alternating centered words are structurally zero there.
    auto h0 = std::make_shared<nc::VacuumWordSpace>("H0", 1);
    auto h1 = std::make_shared<nc::VacuumWordSpace>("H1", 1);
    nc::FreeProductSpace prod("H0*H1", {h0, h1});
    prod.add_generator("s0", prod.embed(0, h0->intern(fock::le_field(Eigen::VectorXcd::Unit(1, 0)))));
    prod.add_generator("s1", prod.embed(1, h1->intern(fock::le_field(Eigen::VectorXcd::Unit(1, 0)))));
    const nc::FreenessReport recursion =
        nc::check_freeness(prod, {{"s0"}, {"s1"}}, a.max_len, 0.0);

    const bool pass = fock_side.pass && recursion.pass;
    emit(json{{"suite", "freeness"},
              {"fock", freeness_report_json(fock_side)},
              {"recursion", freeness_report_json(recursion)},
              {"pass", pass},
              {"config",
               {{"command", "verify freeness"}, {"max_len", a.max_len}, {"tol", a.tol},
                {"format", a.format}}}});
    return pass ? 0 : 1;
}

// ── verify kms ─────────────────────────────────────────────────────────────────

struct KmsArgs {
    std::string rep_path;
    int depth = 6;
    std::string format = "json";
};

int run_kms(const KmsArgs& a) {
    require_format(a.format, false);
    if (a.depth < 4) usage_error("--depth must be >= 4 (quadratic pairs need exact length 4)");

    std::vector<std::pair<std::string, rep::RepSpec>> reps;
    if (!a.rep_path.empty()) {
        reps.emplace_back(a.rep_path, rep::parse_rep_spec(read_file(a.rep_path)));
    } else {
        reps.emplace_back("trivial", rep::parse_rep_spec(R"({"trivial_dim":2})"));
        reps.emplace_back("lambda-half", rep::parse_rep_spec(
            R"({"blocks":[{"frequency":{"num":1,"den":1,"log_base":2},"multiplicity":1}]})"));
        reps.emplace_back("two-block", rep::parse_rep_spec(
            R"({"blocks":[{"frequency":{"num":1,"den":1,"log_base":2},"multiplicity":1},)"
            R"({"frequency":{"num":1,"den":1,"log_base":3},"multiplicity":1}]})"));
    }

    json per_rep = json::array();
    double worst_kms = 0.0, worst_exact = 0.0, worst_period = 0.0;
    bool any_period = false;
    for (const auto& [name, rspec] : reps) {
        const int d = rspec.complex_dim();
        const fock::FockSpace F = fock::FockSpace::build(d, a.depth);
        const modular::ModularFlow flow = modular::make_flow(rspec, F);

        // All quadratic pairs x = sᵢsⱼ, y = sₖsₗ of embedded basis fields.
        std::vector<fock::LetterExpr> fields;
        for (int i = 0; i < d; ++i)
            fields.push_back(fock::le_field(rep::embed(rspec, Eigen::VectorXd::Unit(d, i))));
        std::vector<fock::LetterExpr> quads;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) quads.push_back(fock::le_mul(fields[static_cast<std::size_t>(i)], fields[static_cast<std::size_t>(j)]));
        double kms_max = 0.0;
        for (const fock::LetterExpr& x : quads)
            for (const fock::LetterExpr& y : quads) {
                const modular::KmsReport r = modular::kms_check(flow, x, y, modular::default_t_grid());
                kms_max = std::max(kms_max, r.max_residual);
            }

        // Covariance σ_t(s(ζ)) = s(U_tζ) as dense operators at depth 4.
        const fock::FockSpace F4 = fock::FockSpace::build(d, 4);
        const modular::ModularFlow flow4 = modular::make_flow(rspec, F4);
        double exact_max = 0.0;
        for (int i = 0; i < d; ++i) {
            const Eigen::VectorXcd zeta = rep::embed(rspec, Eigen::VectorXd::Unit(d, i));
            const fock::FockOperator s_op = fock::field_operator(F4, zeta);
            for (const double t : modular::default_t_grid()) {
                const Eigen::MatrixXcd lhs = modular::modular_apply(flow4, s_op, t).to_dense();
                const Eigen::MatrixXcd rhs =
                    fock::field_operator(F4, rep::a_power_apply(rspec, cd(0.0, t), zeta)).to_dense();
                exact_max = std::max(exact_max, (lhs - rhs).cwiseAbs().maxCoeff());
            }
        }

        json entry = {{"rep", json::parse(rep::rep_to_json(rspec))},
                      {"name", name},
                      {"depth", a.depth},
                      {"quadratic_pairs", quads.size() * quads.size()},
                      {"kms_max_residual", kms_max},
                      {"covariance_max_error", exact_max}};

        // Modular periodicity 2π/θ on single-frequency representations.
        if (rspec.blocks.size() == 1 && rspec.trivial_dim == 0) {
            const double period = 2.0 * M_PI / rspec.blocks[0].frequency;
            const Eigen::MatrixXcd g = modular::gamma_t(flow4, period).to_dense();
            double pmax = (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
            for (int i = 0; i < d; ++i) {
                const fock::FockOperator s_op = fock::field_operator(
                    F4, rep::embed(rspec, Eigen::VectorXd::Unit(d, i)));
                pmax = std::max(pmax, (modular::modular_apply(flow4, s_op, period).to_dense() -
                                       s_op.to_dense())
                                          .cwiseAbs()
                                          .maxCoeff());
            }
            entry["period"] = period;
            entry["periodicity_max_error"] = pmax;
            worst_period = std::max(worst_period, pmax);
            any_period = true;
        }

        per_rep.push_back(entry);
        worst_kms = std::max(worst_kms, kms_max);
        worst_exact = std::max(worst_exact, exact_max);
    }

    const bool pass = worst_kms <= 1e-9 && worst_exact <= 1e-12 &&
                      (!any_period || worst_period <= 1e-10);
    emit(json{{"suite", "kms"},
              {"reps", per_rep},
              {"kms_max_residual", worst_kms},
              {"covariance_max_error", worst_exact},
              {"pass", pass},
              {"config",
               {{"command", "verify kms"},
                {"rep", a.rep_path.empty() ? json(nullptr) : json(a.rep_path)},
                {"depth", a.depth},
                {"format", a.format}}}});
    return pass ? 0 : 1;
}

// ── verify tla ─────────────────────────────────────────────────────────────────

struct TlaArgs {
    double lambda = 0.5;
    std::vector<int> depths = {6, 8, 10, 12};
    int k_max = 3;
    std::string format = "json";
};

int run_tla(const TlaArgs& a) {
    require_format(a.format, true);
    tla::TlaOptions opts;
    opts.k_max = a.k_max;
    const tla::TlaSweep sweep = tla::tla_sweep(a.lambda, a.depths, opts);

    // Convergence: every defect at the deepest truncation is at most half its
    // value at the shallowest, or already below 1e−3.
    bool converged = true;
    const auto& first = sweep.reports.front().table;
    const auto& last = sweep.reports.back().table;
    for (std::size_t k = 0; k < first.size(); ++k)
        for (std::size_t l = 0; l < first[k].size(); ++l)
            converged = converged && (last[k][l] <= 0.5 * first[k][l] || last[k][l] < 1e-3);
    const bool pass = sweep.monotone && converged;

    if (a.format == "csv") {
        std::cout << sweep.table_csv();
        return pass ? 0 : 1;
    }
    json out = json::parse(sweep.to_json());
    out["converged"] = converged;
    out["pass"] = pass;
    out["config"] = {{"command", "verify tla"},
                     {"lambda", a.lambda},
                     {"depths", a.depths},
                     {"k_max", a.k_max},
                     {"format", a.format}};
    emit(out);
    return pass ? 0 : 1;
}

// ── verify barnett ─────────────────────────────────────────────────────────────

struct BarnettArgs {
    std::uint64_t seed = 7;
    int samples = 200;
    int max_deg = 6;
    double lambda = 0.5;
    std::string format = "json";
};

int run_barnett(const BarnettArgs& a) {
    require_format(a.format, false);
    barnett::BarnettSetup tracial = barnett::tracial_setup();
    barnett::BarnettSetup geometric = barnett::geometric_setup(a.lambda);
    const barnett::BarnettReport r1 =
        barnett::barnett_check_random(tracial, a.samples, a.max_deg, a.seed);
    const barnett::BarnettReport r2 =
        barnett::barnett_check_random(geometric, a.samples, a.max_deg, a.seed);
    const bool e_is_14 = r1.consts.E == 14.0 && r2.consts.E == 14.0;
    const bool pass = r1.pass && r2.pass && e_is_14;
    emit(json{{"suite", "barnett"},
              {"reports", {json::parse(r1.to_json()), json::parse(r2.to_json())}},
              {"unit_norm_constant_is_14", e_is_14},
              {"min_margin", std::min(r1.min_margin, r2.min_margin)},
              {"pass", pass},
              {"config",
               {{"command", "verify barnett"},
                {"seed", a.seed},
                {"samples", a.samples},
                {"max_deg", a.max_deg},
                {"lambda", a.lambda},
                {"format", a.format}}}});
    return pass ? 0 : 1;
}

// ── matrix-model ───────────────────────────────────────────────────────────────

struct MatrixModelArgs {
    std::string family = "gue_single";
    int n = 512;
    int samples = 50;
    std::uint64_t seed = 0;
    int order = 4;
    int word_len = 4;
    double band_factor = 6.0;
    bool calibrate = false;
    std::string bands_path;
    std::string format = "json";
};

int run_matrix_model(const MatrixModelArgs& a) {
    require_format(a.format, true);
    rmt::EnsembleSpec spec;
    spec.n = a.n;
    spec.samples = a.samples;
    spec.seed = a.seed;
    spec.family = rmt::parse_family(a.family);

    const json config = {{"command", "matrix-model"}, {"family", a.family},
                         {"n", a.n},                  {"samples", a.samples},
                         {"seed", a.seed},            {"order", a.order},
                         {"word_len", a.word_len},    {"band_factor", a.band_factor},
                         {"calibrate", a.calibrate},
                         {"bands", a.bands_path.empty() ? json(nullptr) : json(a.bands_path)},
                         {"format", a.format}};

    if (a.calibrate) {
        if (spec.family != rmt::Family::gue_pair)
            usage_error("--calibrate requires --family gue_pair");
        const rmt::BandSet bands = rmt::calibrate_bands(spec, a.word_len, a.band_factor);
        if (a.format == "csv") usage_error("band sets are json-only; drop --format csv");
        std::cout << bands.to_json();
        return 0;
    }

    if (spec.family == rmt::Family::gue_pair) {
        if (a.bands_path.empty())
            usage_error("family gue_pair needs --bands FILE (or --calibrate to produce one)");
        const rmt::BandSet bands = rmt::BandSet::from_json(read_file(a.bands_path));
        const rmt::FreenessMcReport r = rmt::asymptotic_freeness_check(spec, a.word_len, bands);
        if (a.format == "csv") {
            std::cout << r.to_csv();
        } else {
            json out = json::parse(r.to_json());
            out["config"] = config;
            emit(out);
        }
        return r.pass ? 0 : 1;
    }

    const rmt::McReport r = rmt::mc_moments(spec, a.order);
    if (a.format == "csv") {
        std::cout << r.to_csv();
    } else {
        json out = json::parse(r.to_json());
        out["config"] = config;
        emit(out);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"awlab: numerical workbench for free Araki-Woods factors"};
    app.require_subcommand(1);

    ClassifyArgs ca;
    CLI::App* classify = app.add_subcommand("classify", "Classify an orthogonal representation");
    classify->add_option("--rep", ca.rep_path, "Representation spec (json file)")->required();
    classify->add_option("--format", ca.format, "json|csv");

    MomentsArgs ma;
    CLI::App* moments = app.add_subcommand("moments", "Vacuum moment of an operator word");
    moments->add_option("--word", ma.word_text, "Word, e.g. \"s(0) s(1) s(0) s(1)\"")->required();
    moments->add_option("--rep", ma.rep_path, "Representation spec (json file)");
    moments->add_option("--depth", ma.depth, "Fock truncation depth");
    moments->add_option("--lambda", ma.lambda, "Parameter of y = l(e0) + sqrt(lambda) l(e1)*");
    moments->add_option("--max-dim", ma.max_dim, "Refuse Fock spaces larger than this");
    moments->add_option("--format", ma.format, "json|csv");

    CLI::App* verify = app.add_subcommand("verify", "Verification suites");
    verify->require_subcommand(1);

    SemicircleArgs sa;
    CLI::App* v_semi = verify->add_subcommand("semicircle", "Moments of one field vs the semicircle law");
    v_semi->add_option("--depth", sa.depth, "Fock truncation depth");
    v_semi->add_option("--format", sa.format, "json|csv");

    FreenessArgs fa;
    CLI::App* v_free = verify->add_subcommand("freeness", "Alternating centered words across summands");
    v_free->add_option("--max-len", fa.max_len, "Maximum word length (<= 8)");
    v_free->add_option("--tol", fa.tol, "Residual tolerance on the Fock side");
    v_free->add_option("--format", fa.format, "json|csv");

    KmsArgs ka;
    CLI::App* v_kms = verify->add_subcommand("kms", "Modular covariance, KMS boundary identity, periodicity");
    v_kms->add_option("--rep", ka.rep_path, "Representation spec (json file; default: built-in battery)");
    v_kms->add_option("--depth", ka.depth, "Fock truncation depth for state evaluation");
    v_kms->add_option("--format", ka.format, "json|csv");

    TlaArgs ta;
    CLI::App* v_tla = verify->add_subcommand("tla", "Generalized circular polar-part moment defects");
    v_tla->add_option("--lambda", ta.lambda, "Modulus parameter in (0,1)");
    v_tla->add_option("--depths", ta.depths, "Ascending truncation depths")->delimiter(',');
    v_tla->add_option("--kmax", ta.k_max, "Moment table covers k,l = 0..kmax");
    v_tla->add_option("--format", ta.format, "json|csv");

    BarnettArgs ba;
    CLI::App* v_bar = verify->add_subcommand("barnett", "Quantitative free-product commutation bound");
    v_bar->add_option("--seed", ba.seed, "RNG seed for the polynomial battery");
    v_bar->add_option("--samples", ba.samples, "Number of random polynomials per setup");
    v_bar->add_option("--max-deg", ba.max_deg, "Maximum word length per polynomial term (<= 8)");
    v_bar->add_option("--lambda", ba.lambda, "State parameter of the non-tracial setup");
    v_bar->add_option("--format", ba.format, "json|csv");

    MatrixModelArgs mma;
    CLI::App* mm = app.add_subcommand("matrix-model", "Monte Carlo random-matrix cross-checks");
    mm->add_option("--family", mma.family, "gue_single|gue_pair|complex_ginibre");
    mm->add_option("--n", mma.n, "Matrix dimension");
    mm->add_option("--samples", mma.samples, "Monte Carlo samples");
    mm->add_option("--seed", mma.seed, "RNG seed");
    mm->add_option("--order", mma.order, "Highest moment order (<= 8)");
    mm->add_option("--word-len", mma.word_len, "Alternating word length for gue_pair (<= 6)");
    mm->add_option("--band-factor", mma.band_factor, "Band = |pilot mean| + factor * stderr");
    mm->add_flag("--calibrate", mma.calibrate, "Emit a band set instead of checking one");
    mm->add_option("--bands", mma.bands_path, "Band-set fixture (json file)");
    mm->add_option("--format", mma.format, "json|csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*classify) return run_classify(ca);
        if (*moments) return run_moments(ma);
        if (*v_semi) return run_semicircle(sa);
        if (*v_free) return run_freeness(fa);
        if (*v_kms) return run_kms(ka);
        if (*v_tla) return run_tla(ta);
        if (*v_bar) return run_barnett(ba);
        if (*mm) return run_matrix_model(mma);
        std::cerr << R"({"error":{"code":"usage","message":"no subcommand"}})" << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", {{"code", "invalid_argument"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << json{{"error", {{"code", "length_error"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << json{{"error", {{"code", "domain_error"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    }
}
