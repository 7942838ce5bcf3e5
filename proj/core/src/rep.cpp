#include "awlab/rep.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace awlab::rep {

using json = nlohmann::ordered_json;
using cd = std::complex<double>;

namespace {

// Round to 12 significant digits (report formatting; internal math is full
// precision).  Keeps emitted spectra stable across equivalent float paths.
double round_sig12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string fmt_sig12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

long long gcd_ll(long long a, long long b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b != 0) {
        long long r = a % b;
        a = b;
        b = r;
    }
    return a;
}

// Best continued-fraction convergent p/q of x ≥ 1 with q ≤ qmax and
// |x − p/q| ≤ tol; nullopt when no convergent qualifies.
std::optional<std::pair<long long, long long>>
rational_approx(double x, long long qmax, double tol) {
    long long p0 = 1, q0 = 0;
    long long p1 = static_cast<long long>(std::floor(x)), q1 = 1;
    double frac = x - std::floor(x);
    for (int it = 0; it < 64; ++it) {
        if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) <= tol)
            return std::make_pair(p1, q1);
        if (frac < 1e-15) break;
        const double inv = 1.0 / frac;
        const double a_floor = std::floor(inv);
        if (a_floor > 4e18) break;
        frac = inv - a_floor;
        const long long a = static_cast<long long>(a_floor);
        const long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > qmax || q2 <= 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    return std::nullopt;
}

// Plane-wise functional calculus: writes f(A) restricted to one plane into
// the 2×2 block at (o,o), given f(e^{θ}) and f(e^{−θ}).
void put_plane_block(Eigen::MatrixXcd& m, int o, cd fplus, cd fminus) {
    const cd c = 0.5 * (fplus + fminus);
    const cd s = 0.5 * (fplus - fminus);
    const cd i(0.0, 1.0);
    m(o, o) = c;
    m(o, o + 1) = i * s;
    m(o + 1, o) = -i * s;
    m(o + 1, o + 1) = c;
}

void apply_plane(const Eigen::VectorXcd& in, Eigen::VectorXcd& out, int o,
                 cd fplus, cd fminus) {
    const cd c = 0.5 * (fplus + fminus);
    const cd s = 0.5 * (fplus - fminus);
    const cd i(0.0, 1.0);
    const cd z1 = in(o), z2 = in(o + 1);
    out(o) = c * z1 + i * s * z2;
    out(o + 1) = -i * s * z1 + c * z2;
}

template <typename PlaneF, typename TrivF>
Eigen::MatrixXcd build_matrix(const RepSpec& rep, PlaneF plane_f, TrivF triv_f) {
    const int n = rep.complex_dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < rep.trivial_dim; ++k) m(k, k) = triv_f();
    int o = rep.trivial_dim;
    for (const auto& b : rep.blocks)
        for (int c = 0; c < b.multiplicity; ++c, o += 2) {
            auto [fp, fm] = plane_f(b.frequency);
            put_plane_block(m, o, fp, fm);
        }
    return m;
}

void check_dim(const RepSpec& rep, Eigen::Index got, const char* where) {
    if (got != rep.complex_dim())
        throw std::invalid_argument(std::string(where) + ": vector dimension " +
                                    std::to_string(got) + " does not match representation dimension " +
                                    std::to_string(rep.complex_dim()));
}

} // namespace

std::string factor_type_name(FactorType t) {
    switch (t) {
        case FactorType::NonFactor_dim1: return "NonFactor_dim1";
        case FactorType::II_1: return "II_1";
        case FactorType::III_lambda: return "III_lambda";
        case FactorType::III_1: return "III_1";
    }
    return "unknown";
}

// ── Parsing ────────────────────────────────────────────────────────────────────

RepSpec parse_rep_spec(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("parse_rep_spec: malformed JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("parse_rep_spec: document must be a JSON object");

    RepSpec rep;
    if (doc.contains("trivial_dim")) {
        if (!doc["trivial_dim"].is_number_integer() || doc["trivial_dim"].get<long long>() < 0)
            throw std::invalid_argument("parse_rep_spec: trivial_dim must be a non-negative integer");
        rep.trivial_dim = doc["trivial_dim"].get<int>();
    }
    if (doc.contains("declared_continuous")) {
        if (!doc["declared_continuous"].is_boolean())
            throw std::invalid_argument("parse_rep_spec: declared_continuous must be boolean");
        rep.declared_continuous = doc["declared_continuous"].get<bool>();
    }
    if (doc.contains("blocks")) {
        if (!doc["blocks"].is_array())
            throw std::invalid_argument("parse_rep_spec: blocks must be an array");
        for (const auto& jb : doc["blocks"]) {
            if (!jb.is_object() || !jb.contains("frequency") || !jb.contains("multiplicity"))
                throw std::invalid_argument("parse_rep_spec: each block needs frequency and multiplicity");
            Block b;
            const auto& jf = jb["frequency"];
            if (jf.is_number()) {
                b.frequency = jf.get<double>();
            } else if (jf.is_object()) {
                RationalFrequency rf;
                if (!jf.contains("num") || !jf.contains("den") || !jf.contains("log_base"))
                    throw std::invalid_argument("parse_rep_spec: rational frequency needs num, den, log_base");
                rf.num = jf["num"].get<long long>();
                rf.den = jf["den"].get<long long>();
                rf.log_base = jf["log_base"].get<double>();
                if (rf.den == 0)
                    throw std::invalid_argument("parse_rep_spec: rational frequency has zero denominator");
                if (!(rf.log_base > 0.0) || rf.log_base == 1.0)
                    throw std::invalid_argument("parse_rep_spec: log_base must be positive and not 1");
                // Normalize: positive denominator, reduced fraction.
                if (rf.den < 0) { rf.den = -rf.den; rf.num = -rf.num; }
                const long long g = gcd_ll(rf.num, rf.den);
                if (g > 1) { rf.num /= g; rf.den /= g; }
                b.rational = rf;
                b.frequency = (static_cast<double>(rf.num) / static_cast<double>(rf.den)) *
                              std::log(rf.log_base);
            } else {
                throw std::invalid_argument("parse_rep_spec: frequency must be a number or a rational object");
            }
            if (!(b.frequency > 0.0) || !std::isfinite(b.frequency))
                throw std::invalid_argument("parse_rep_spec: non-positive frequency");
            if (!jb["multiplicity"].is_number_integer() || jb["multiplicity"].get<long long>() < 1)
                throw std::invalid_argument("parse_rep_spec: multiplicity must be a positive integer");
            b.multiplicity = jb["multiplicity"].get<int>();
            rep.blocks.push_back(std::move(b));
        }
    }

    // Merge duplicate frequencies (exact double equality), then sort ascending.
    std::sort(rep.blocks.begin(), rep.blocks.end(),
              [](const Block& x, const Block& y) { return x.frequency < y.frequency; });
    std::vector<Block> merged;
    for (auto& b : rep.blocks) {
        if (!merged.empty() && merged.back().frequency == b.frequency) {
            merged.back().multiplicity += b.multiplicity;
            if (!merged.back().rational && b.rational) merged.back().rational = b.rational;
        } else {
            merged.push_back(std::move(b));
        }
    }
    rep.blocks = std::move(merged);

    if (rep.real_dim() == 0)
        throw std::invalid_argument("parse_rep_spec: zero total dimension");
    return rep;
}

std::string rep_to_json(const RepSpec& rep) {
    json doc;
    doc["trivial_dim"] = rep.trivial_dim;
    doc["blocks"] = json::array();
    for (const auto& b : rep.blocks) {
        json jb;
        if (b.rational) {
            jb["frequency"] = {{"num", b.rational->num},
                               {"den", b.rational->den},
                               {"log_base", b.rational->log_base}};
        } else {
            jb["frequency"] = b.frequency;
        }
        jb["multiplicity"] = b.multiplicity;
        doc["blocks"].push_back(jb);
    }
    doc["declared_continuous"] = rep.declared_continuous;
    return doc.dump();
}

// ── Spectrum ───────────────────────────────────────────────────────────────────

SpectralData generator_spectrum(const RepSpec& rep) {
    SpectralData sd;
    for (auto it = rep.blocks.rbegin(); it != rep.blocks.rend(); ++it)
        sd.eigen_pairs.emplace_back(std::exp(-it->frequency), it->multiplicity);
    if (rep.trivial_dim > 0) sd.eigen_pairs.emplace_back(1.0, rep.trivial_dim);
    for (const auto& b : rep.blocks)
        sd.eigen_pairs.emplace_back(std::exp(b.frequency), b.multiplicity);
    return sd;
}

// ── Classification ─────────────────────────────────────────────────────────────

TypeLabel classify(const RepSpec& rep) {
    TypeLabel label;

    // Declared-continuous input: the label reflects the user's declared
    // (pre-discretization) representation, never an inference from the atoms.
    if (rep.declared_continuous) {
        label.type = FactorType::III_1;
        label.almost_periodic = false;
        label.method = "declared-continuous";
        for (const auto& b : rep.blocks)
            label.s_generators.push_back(std::exp(b.frequency));
        return label;
    }

    if (rep.real_dim() == 1) {
        label.type = FactorType::NonFactor_dim1;
        label.method = "none";
        return label;
    }
    if (rep.blocks.empty()) {
        label.type = FactorType::II_1;
        label.method = "none";
        return label;
    }

    // Commensurability: exact when every block carries a rational frequency
    // over one common base; continued-fraction detection on floats otherwise.
    bool all_rational = true;
    for (const auto& b : rep.blocks)
        if (!b.rational || b.rational->log_base != rep.blocks.front().rational->log_base) {
            all_rational = false;
            break;
        }

    double theta_star = 0.0;
    bool commensurable = false;
    if (all_rational) {
        // θ_j = (n_j/d_j)·log b; gcd over ℚ is gcd(n_j)/lcm(d_j).
        long long gn = 0, ld = 1;
        bool overflow = false;
        for (const auto& b : rep.blocks) {
            gn = gcd_ll(gn, b.rational->num);
            const long long g = gcd_ll(ld, b.rational->den);
            if (b.rational->den / g > (1LL << 40) / std::max(ld, 1LL)) { overflow = true; break; }
            ld = ld / g * b.rational->den;
        }
        if (!overflow) {
            theta_star = (static_cast<double>(gn) / static_cast<double>(ld)) *
                         std::log(rep.blocks.front().rational->log_base);
            commensurable = true;
            label.method = "exact-rational";
        }
    }
    if (!commensurable && label.method.empty()) {
        // Ratios to the smallest frequency; integer-ratio detection with
        // tolerance 1e−9 and denominator bound 10^4.
        label.method = "float-ratio";
        const double theta_min = rep.blocks.front().frequency;
        long long lcm_q = 1;
        std::vector<std::pair<long long, long long>> pq;
        bool ok = true;
        for (const auto& b : rep.blocks) {
            auto r = rational_approx(b.frequency / theta_min, 10000, 1e-9);
            if (!r) { ok = false; break; }
            pq.push_back(*r);
            const long long g = gcd_ll(lcm_q, r->second);
            if (r->second / g > (1LL << 40) / std::max(lcm_q, 1LL)) { ok = false; break; }
            lcm_q = lcm_q / g * r->second;
        }
        if (ok) {
            // θ_j = k_j·(θ_min/lcm_q); the largest common unit divides out
            // gcd(k_j).
            long long gk = 0;
            for (const auto& [p, q] : pq) gk = gcd_ll(gk, p * (lcm_q / q));
            theta_star = theta_min / static_cast<double>(lcm_q) * static_cast<double>(gk);
            commensurable = true;
        }
    }

    if (commensurable) {
        label.type = FactorType::III_lambda;
        label.lambda = std::exp(-theta_star);
        label.s_generators = {std::exp(theta_star)};
    } else {
        label.type = FactorType::III_1;
        for (const auto& b : rep.blocks)
            label.s_generators.push_back(std::exp(b.frequency));
    }
    return label;
}

std::string type_label_to_json(const RepSpec& rep) {
    const TypeLabel label = classify(rep);
    json doc;
    doc["type"] = factor_type_name(label.type);
    if (label.type == FactorType::III_lambda) doc["lambda"] = round_sig12(label.lambda);
    doc["s_invariant"] = json::array();
    for (double g : label.s_generators) doc["s_invariant"].push_back(fmt_sig12(g));
    doc["almost_periodic"] = label.almost_periodic;
    doc["method"] = label.method;
    return doc.dump();
}

// ── Matrices and vector maps ───────────────────────────────────────────────────

Eigen::MatrixXcd A_matrix(const RepSpec& rep) {
    return build_matrix(rep,
        [](double th) { return std::pair<cd, cd>(std::exp(th), std::exp(-th)); },
        [] { return cd(1.0, 0.0); });
}

Eigen::MatrixXcd U_matrix(const RepSpec& rep, double t) {
    return A_power_matrix(rep, cd(0.0, 1.0) * t);
}

Eigen::MatrixXcd A_power_matrix(const RepSpec& rep, cd z) {
    return build_matrix(rep,
        [z](double th) {
            return std::pair<cd, cd>(std::exp(z * th), std::exp(-z * th));
        },
        [] { return cd(1.0, 0.0); });
}

Eigen::VectorXcd a_power_apply(const RepSpec& rep, cd z, const Eigen::VectorXcd& zeta) {
    check_dim(rep, zeta.size(), "a_power_apply");
    Eigen::VectorXcd out = zeta;
    int o = rep.trivial_dim;
    for (const auto& b : rep.blocks) {
        const cd fp = std::exp(z * b.frequency), fm = std::exp(-z * b.frequency);
        for (int c = 0; c < b.multiplicity; ++c, o += 2) apply_plane(zeta, out, o, fp, fm);
    }
    return out;
}

Eigen::VectorXcd embed(const RepSpec& rep, const Eigen::VectorXd& xi) {
    check_dim(rep, xi.size(), "embed");
    Eigen::VectorXcd z = xi.cast<cd>();
    Eigen::VectorXcd out = z;
    const auto g = [](double a) { return std::sqrt(2.0 * a / (1.0 + a)); };
    int o = rep.trivial_dim;
    for (const auto& b : rep.blocks) {
        const cd fp = g(std::exp(b.frequency)), fm = g(std::exp(-b.frequency));
        for (int c = 0; c < b.multiplicity; ++c, o += 2) apply_plane(z, out, o, fp, fm);
    }
    return out;
}

Eigen::VectorXcd involution_J(const Eigen::VectorXcd& zeta) {
    return zeta.conjugate();
}

Eigen::VectorXcd involution_T(const RepSpec& rep, const Eigen::VectorXcd& zeta) {
    // T = JA^{−1/2}; JAJ = A^{−1} gives Tζ = A^{1/2} conj(ζ).
    check_dim(rep, zeta.size(), "involution_T");
    return a_power_apply(rep, cd(0.5, 0.0), zeta.conjugate());
}

int plane_offset(const RepSpec& rep, int block, int copy) {
    if (block < 0 || block >= static_cast<int>(rep.blocks.size()))
        throw std::out_of_range("plane_offset: block index out of range");
    if (copy < 0 || copy >= rep.blocks[block].multiplicity)
        throw std::out_of_range("plane_offset: copy index out of range");
    int o = rep.trivial_dim;
    for (int j = 0; j < block; ++j) o += 2 * rep.blocks[j].multiplicity;
    return o + 2 * copy;
}

Eigen::VectorXcd plane_eigenvector(const RepSpec& rep, int block, int copy, int which) {
    const int o = plane_offset(rep, block, copy);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(rep.complex_dim());
    const double r = 1.0 / std::sqrt(2.0);
    v(o) = cd(r, 0.0);
    v(o + 1) = (which >= 0) ? cd(0.0, -r) : cd(0.0, r);
    return v;
}

} // namespace awlab::rep
