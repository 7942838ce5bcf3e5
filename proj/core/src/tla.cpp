#include "awlab/tla.hpp"

#include "awlab/util.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace awlab::tla {

using json = nlohmann::ordered_json;

namespace {

// One eigendecomposed tridiagonal block shared by every chain with the same
// (length, root-starts-ξ₂, top-at-grade-D) signature.
struct ChainClass {
    Eigen::MatrixXd Q;
    Eigen::VectorXd ev;            // ascending
    Eigen::MatrixXd pinv_half;     // (y*y)^{−1/2} on the kept modes, 0 elsewhere
    double class_defect = 0.0;     // ‖pinv_half·T·pinv_half − P_kept‖₂
    std::int64_t mult = 0;
    int kernel = 0;                // exact-kernel modes per chain
    int surgery = 0;               // boundary modes removed per chain
};

struct Chain {
    int cls = 0;
    std::vector<std::size_t> nodes;
};

json histogram_json(const fock::Histogram& h) {
    json j;
    j["bin_left"] = h.left;
    j["bin_right"] = h.right;
    j["count"] = h.count;
    return j;
}

} // namespace

TlaReport polar_tla(double lambda, int depth, const TlaOptions& opts) {
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw std::invalid_argument("polar_tla: lambda must lie in (0,1)");
    if (depth < 4) throw std::invalid_argument("polar_tla: depth must be >= 4");
    if (opts.k_max < 0 || opts.k_max > 8)
        throw std::invalid_argument("polar_tla: k_max must lie in [0, 8]");
    if (opts.bins < 1) throw std::invalid_argument("polar_tla: bins must be >= 1");

    const fock::FockSpace F = fock::FockSpace::build(2, depth);
    const std::size_t N = F.total_dim;
    const double sl = std::sqrt(lambda);

    std::vector<std::size_t> pow2(depth + 1);
    pow2[0] = 1;
    for (int n = 1; n <= depth; ++n) pow2[n] = pow2[n - 1] * 2;

    // ── Chain enumeration ─────────────────────────────────────────────────
    // Roots are the words not of the form ξ₂ξ₁·u; the chain above a root of
    // grade g has nodes (ξ₂ξ₁)ʲ·root at grades g+2j ≤ D.
    std::map<std::tuple<int, int, int>, int> class_ids;
    std::vector<ChainClass> classes;
    std::vector<Chain> chains;

    for (std::size_t idx = 0; idx < N; ++idx) {
        const int g = F.length_of(idx);
        const std::size_t r = idx - F.offset[g];
        if (g >= 2) {
            const int first = static_cast<int>(r / pow2[g - 1]);
            const int second = static_cast<int>((r / pow2[g - 2]) % 2);
            if (first == 1 && second == 0) continue; // interior node, not a root
        }
        const bool starts2 = g >= 1 && static_cast<int>(r / pow2[g - 1]) == 1;
        const int L = (depth - g) / 2;
        const bool top = (depth - g) % 2 == 0;

        const auto key = std::make_tuple(L, starts2 ? 1 : 0, top ? 1 : 0);
        auto [it, fresh] = class_ids.try_emplace(key, static_cast<int>(classes.size()));
        if (fresh) classes.emplace_back();
        ChainClass& cc = classes[it->second];
        ++cc.mult;

        Chain ch;
        ch.cls = it->second;
        ch.nodes.reserve(L + 1);
        std::size_t rj = r;
        for (int j = 0; j <= L; ++j) {
            const int m = g + 2 * j;
            ch.nodes.push_back(F.offset[m] + rj);
            if (j < L) rj += pow2[m + 1]; // prepend ξ₂ξ₁
        }
        chains.push_back(std::move(ch));
    }

    // ── Per-class spectral data ───────────────────────────────────────────
    for (const auto& [key, cid] : class_ids) {
        const auto [L, s2, top] = key;
        ChainClass& cc = classes[cid];
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(L + 1, L + 1);
        for (int j = 0; j <= L; ++j) {
            const bool at_top = top == 1 && j == L;
            double diag = at_top ? 0.0 : 1.0;
            if (j >= 1 || s2 == 1) diag += lambda;
            T(j, j) = diag;
            if (j < L) T(j, j + 1) = T(j + 1, j) = sl;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("polar_tla: chain eigendecomposition failed");
        cc.Q = es.eigenvectors();
        cc.ev = es.eigenvalues();

        Eigen::VectorXd inv = Eigen::VectorXd::Zero(L + 1);
        Eigen::VectorXd kept = Eigen::VectorXd::Zero(L + 1);
        for (int m = 0; m <= L; ++m) {
            if (cc.ev(m) <= opts.kernel_tol) {
                ++cc.kernel;
                continue;
            }
            kept(m) = 1.0;
            inv(m) = 1.0 / std::sqrt(cc.ev(m));
        }
        if (top == 1 && opts.boundary_mode_surgery && kept(0) == 1.0) {
            kept(0) = 0.0;
            inv(0) = 0.0;
            ++cc.surgery;
        }
        cc.pinv_half = cc.Q * inv.asDiagonal() * cc.Q.transpose();
        const Eigen::MatrixXd residual =
            cc.pinv_half * T * cc.pinv_half - cc.Q * kept.asDiagonal() * cc.Q.transpose();
        cc.class_defect = residual.selfadjointView<Eigen::Lower>().operatorNorm();
    }

    // ── y* as a sparse real matrix in the word basis ──────────────────────
    // y* = ℓ(ξ₁)* + √λ ℓ(ξ₂):  ξ₁u ↦ u  and  u ↦ √λ ξ₂u (grade permitting).
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(2 * N);
    for (std::size_t idx = 0; idx < N; ++idx) {
        const int g = F.length_of(idx);
        const std::size_t r = idx - F.offset[g];
        if (g >= 1 && r / pow2[g - 1] == 0)
            trips.emplace_back(static_cast<int>(F.offset[g - 1] + r), static_cast<int>(idx), 1.0);
        if (g < depth)
            trips.emplace_back(static_cast<int>(F.offset[g + 1] + pow2[g] + r),
                               static_cast<int>(idx), sl);
    }
    Eigen::SparseMatrix<double> Yt(N, N);
    Yt.setFromTriplets(trips.begin(), trips.end());

    // ── Moment iteration: u_m = (v*)^m Ω = (b⁺ y*)^m Ω ────────────────────
    const int K = opts.k_max;
    std::vector<Eigen::VectorXd> u(K + 1, Eigen::VectorXd::Zero(N));
    u[0](0) = 1.0;
    Eigen::VectorXd small, tmp;
    for (int m = 1; m <= K; ++m) {
        Eigen::VectorXd t = Yt * u[m - 1];
        Eigen::VectorXd& out = u[m];
        for (const Chain& ch : chains) {
            const ChainClass& cc = classes[ch.cls];
            const int n = static_cast<int>(ch.nodes.size());
            small.resize(n);
            for (int j = 0; j < n; ++j) small(j) = t(ch.nodes[j]);
            tmp.noalias() = cc.pinv_half * small;
            for (int j = 0; j < n; ++j) out(ch.nodes[j]) = tmp(j);
        }
    }

    TlaReport rep;
    rep.lambda = lambda;
    rep.depth = depth;
    rep.k_max = K;
    rep.total_dim = N;
    rep.moments.assign(K + 1, std::vector<double>(K + 1, 0.0));
    rep.table.assign(K + 1, std::vector<double>(K + 1, 0.0));
    double lk = 1.0;
    for (int k = 0; k <= K; ++k) {
        for (int l = 0; l <= K; ++l) {
            const double m = u[k].dot(u[l]);
            rep.moments[k][l] = m;
            rep.table[k][l] = std::abs(m - (k == l ? lk : 0.0));
        }
        lk *= lambda;
    }

    for (const ChainClass& cc : classes) {
        rep.isometry_defect = std::max(rep.isometry_defect, cc.class_defect);
        rep.kernel_dim += cc.mult * cc.kernel;
        rep.dropped_modes += cc.mult * cc.surgery;
    }

    // ── Spectrum of |y| with chain multiplicities ─────────────────────────
    double smax = 0.0;
    for (const ChainClass& cc : classes)
        smax = std::max(smax, std::sqrt(std::max(0.0, cc.ev(cc.ev.size() - 1))));
    if (smax == 0.0) smax = 1.0;
    fock::Histogram& h = rep.b_distribution;
    h.left.resize(opts.bins);
    h.right.resize(opts.bins);
    h.count.assign(opts.bins, 0);
    const double w = smax / opts.bins;
    for (int b = 0; b < opts.bins; ++b) {
        h.left[b] = b * w;
        h.right[b] = (b + 1) * w;
    }
    for (const ChainClass& cc : classes)
        for (int m = 0; m < cc.ev.size(); ++m) {
            const double s = std::sqrt(std::max(0.0, cc.ev(m)));
            int b = static_cast<int>(s / w);
            b = std::clamp(b, 0, opts.bins - 1);
            h.count[b] += cc.mult;
        }

    return rep;
}

std::string TlaReport::to_json() const {
    json j;
    j["lambda"] = lambda;
    j["depth"] = depth;
    j["k_max"] = k_max;
    j["total_dim"] = total_dim;
    j["isometry_defect"] = isometry_defect;
    j["kernel_dim"] = kernel_dim;
    j["dropped_modes"] = dropped_modes;
    j["moments"] = moments;
    j["table"] = table;
    j["b_distribution"] = histogram_json(b_distribution);
    return j.dump();
}

std::string TlaReport::table_csv() const {
    std::string out = "k,l,depth,defect\n";
    for (int k = 0; k <= k_max; ++k)
        for (int l = 0; l <= k_max; ++l)
            out += std::to_string(k) + "," + std::to_string(l) + "," + std::to_string(depth) +
                   "," + util::fmt_g17(table[k][l]) + "\n";
    return out;
}

TlaSweep tla_sweep(double lambda, const std::vector<int>& depths, const TlaOptions& opts) {
    if (depths.empty()) throw std::invalid_argument("tla_sweep: need at least one depth");
    std::vector<int> ds = depths;
    std::sort(ds.begin(), ds.end());
    TlaSweep sweep;
    for (int D : ds) sweep.reports.push_back(polar_tla(lambda, D, opts));
    for (std::size_t i = 1; i < sweep.reports.size(); ++i) {
        const TlaReport& prev = sweep.reports[i - 1];
        const TlaReport& cur = sweep.reports[i];
        for (int k = 0; k <= opts.k_max; ++k)
            for (int l = 0; l <= opts.k_max; ++l)
                if (cur.table[k][l] > prev.table[k][l]) {
                    sweep.monotone = false;
                    sweep.violations.push_back(
                        "k=" + std::to_string(k) + ",l=" + std::to_string(l) + ": defect(D=" +
                        std::to_string(prev.depth) + ")=" + util::fmt_g17(prev.table[k][l]) +
                        " -> defect(D=" + std::to_string(cur.depth) + ")=" +
                        util::fmt_g17(cur.table[k][l]));
                }
    }
    return sweep;
}

std::string TlaSweep::to_json() const {
    json j;
    j["monotone"] = monotone;
    j["violations"] = violations;
    json rs = json::array();
    for (const TlaReport& r : reports) rs.push_back(json::parse(r.to_json()));
    j["reports"] = rs;
    return j.dump();
}

std::string TlaSweep::table_csv() const {
    std::string out = "k,l,depth,defect\n";
    for (const TlaReport& r : reports) {
        const std::string body = r.table_csv();
        out += body.substr(body.find('\n') + 1);
    }
    return out;
}

} // namespace awlab::tla
