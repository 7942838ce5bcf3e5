#include "awlab/fock.hpp"

#include "awlab/util.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <map>
#include <stdexcept>

namespace awlab::fock {

using json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kDefaultBudget = std::size_t(1) << 31; // 2 GiB
constexpr std::size_t kDenseDimLimit = 20000;

std::size_t env_budget() {
    if (const char* s = std::getenv("AWLAB_BUDGET_BYTES")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultBudget;
}

std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

void check_same_space(const FockOperator& a, const FockOperator& b, const char* where) {
    if (a.space.d != b.space.d || a.space.D != b.space.D)
        throw std::invalid_argument(std::string(where) + ": operators live on different Fock spaces");
}

bool fits_dense(const FockSpace& F) {
    const unsigned __int128 bytes =
        static_cast<unsigned __int128>(F.total_dim) * F.total_dim * sizeof(cd);
    return F.total_dim <= kDenseDimLimit && bytes <= F.budget_bytes;
}

void require_dense_budget(const FockSpace& F, const char* where) {
    const unsigned __int128 bytes =
        static_cast<unsigned __int128>(F.total_dim) * F.total_dim * sizeof(cd);
    if (bytes > F.budget_bytes)
        throw std::length_error(std::string(where) + ": dense matrix of dimension " +
                                std::to_string(F.total_dim) + " needs " + u128_to_string(bytes) +
                                " bytes, budget " + std::to_string(F.budget_bytes));
}

FockOperator make_op(const FockSpace& F, Eigen::MatrixXcd m, int degree, std::string label) {
    FockOperator op;
    op.space = F;
    op.dense = std::make_shared<const Eigen::MatrixXcd>(std::move(m));
    op.degree = degree;
    op.exact_depth = degree > 0 ? F.D / degree : F.D;
    op.label = std::move(label);
    return op;
}

FockOperator make_op(const FockSpace& F, SparseCd m, int degree, std::string label) {
    FockOperator op;
    op.space = F;
    m.makeCompressed();
    op.sparse = std::make_shared<const SparseCd>(std::move(m));
    op.degree = degree;
    op.exact_depth = degree > 0 ? F.D / degree : F.D;
    op.label = std::move(label);
    return op;
}

std::string combine_labels(const std::string& a, const char* sep, const std::string& b) {
    std::string s = "(" + a + sep + b + ")";
    if (s.size() > 64) s = s.substr(0, 61) + "...";
    return s;
}

} // namespace

// ── FockSpace ──────────────────────────────────────────────────────────────────

FockSpace FockSpace::build(int d, int D) { return build(d, D, env_budget()); }

FockSpace FockSpace::build(int d, int D, std::size_t budget_bytes) {
    if (d < 1) throw std::invalid_argument("build_fock: one-particle dimension must be >= 1");
    if (D < 1) throw std::invalid_argument("build_fock: depth must be >= 1");

    const unsigned __int128 max_total = static_cast<unsigned __int128>(1) << 120;
    unsigned __int128 total = 0, term = 1;
    for (int n = 0; n <= D; ++n) {
        total += term;
        if (total > max_total) { total = max_total; break; }
        if (term > max_total / static_cast<unsigned>(d)) { total = max_total; break; }
        term *= static_cast<unsigned>(d);
    }
    const unsigned __int128 bytes = total >= max_total ? total : total * sizeof(cd);
    if (total >= max_total || bytes > budget_bytes)
        throw std::length_error(
            "build_fock: total dimension " +
            (total >= max_total ? std::string(">= 2^120") : u128_to_string(total)) +
            " requires " +
            (total >= max_total ? std::string("more") : u128_to_string(bytes)) +
            " bytes for one state vector, budget " + std::to_string(budget_bytes));

    FockSpace F;
    F.d = d;
    F.D = D;
    F.budget_bytes = budget_bytes;
    F.offset.resize(D + 2);
    std::size_t acc = 0, t = 1;
    for (int n = 0; n <= D; ++n) {
        F.offset[n] = acc;
        acc += t;
        t *= static_cast<std::size_t>(d);
    }
    F.offset[D + 1] = acc;
    F.total_dim = acc;
    return F;
}

std::size_t FockSpace::index_of(std::span<const int> word) const {
    const int n = static_cast<int>(word.size());
    if (n > D) throw std::out_of_range("index_of: word longer than depth");
    std::size_t r = 0;
    for (int i : word) {
        if (i < 0 || i >= d) throw std::out_of_range("index_of: letter out of alphabet");
        r = r * static_cast<std::size_t>(d) + static_cast<std::size_t>(i);
    }
    return offset[n] + r;
}

std::vector<int> FockSpace::word_of(std::size_t index) const {
    const int n = length_of(index);
    std::size_t r = index - offset[n];
    std::vector<int> w(n);
    for (int k = n - 1; k >= 0; --k) {
        w[k] = static_cast<int>(r % static_cast<std::size_t>(d));
        r /= static_cast<std::size_t>(d);
    }
    return w;
}

int FockSpace::length_of(std::size_t index) const {
    if (index >= total_dim) throw std::out_of_range("length_of: index out of range");
    int n = 0;
    while (index >= offset[n + 1]) ++n;
    return n;
}

// ── Letters ────────────────────────────────────────────────────────────────────

FockOperator creation(const FockSpace& F, const Eigen::VectorXcd& xi,
                      bool adjoint, StorageHint hint) {
    if (xi.size() != F.d)
        throw std::invalid_argument("creation: vector dimension does not match one-particle space");

    const bool dense = hint == StorageHint::dense ||
                       (hint == StorageHint::automatic && fits_dense(F));
    if (hint == StorageHint::dense) require_dense_budget(F, "creation");

    const std::size_t n_src = F.offset[F.D]; // grades 0..D−1 map up; grade D dies
    const char* lbl = adjoint ? "l*" : "l";

    if (dense) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(F.total_dim, F.total_dim);
        for (std::size_t j = 0; j < n_src; ++j) {
            const int n = F.length_of(j);
            const std::size_t r = j - F.offset[n];
            std::size_t block = 1;
            for (int k = 0; k < n; ++k) block *= static_cast<std::size_t>(F.d);
            for (int i = 0; i < F.d; ++i) {
                if (xi(i) == cd(0.0, 0.0)) continue;
                const std::size_t tgt = F.offset[n + 1] + static_cast<std::size_t>(i) * block + r;
                if (adjoint) m(j, tgt) = std::conj(xi(i));
                else m(tgt, j) = xi(i);
            }
        }
        return make_op(F, std::move(m), 1, lbl);
    }

    std::vector<Eigen::Triplet<cd>> trips;
    int nnz_xi = 0;
    for (int i = 0; i < F.d; ++i)
        if (xi(i) != cd(0.0, 0.0)) ++nnz_xi;
    trips.reserve(n_src * static_cast<std::size_t>(nnz_xi));
    for (std::size_t j = 0; j < n_src; ++j) {
        const int n = F.length_of(j);
        const std::size_t r = j - F.offset[n];
        std::size_t block = 1;
        for (int k = 0; k < n; ++k) block *= static_cast<std::size_t>(F.d);
        for (int i = 0; i < F.d; ++i) {
            if (xi(i) == cd(0.0, 0.0)) continue;
            const std::size_t tgt = F.offset[n + 1] + static_cast<std::size_t>(i) * block + r;
            if (adjoint)
                trips.emplace_back(static_cast<int>(j), static_cast<int>(tgt), std::conj(xi(i)));
            else
                trips.emplace_back(static_cast<int>(tgt), static_cast<int>(j), xi(i));
        }
    }
    SparseCd m(F.total_dim, F.total_dim);
    m.setFromTriplets(trips.begin(), trips.end());
    return make_op(F, std::move(m), 1, lbl);
}

FockOperator field_operator(const FockSpace& F, const Eigen::VectorXcd& zeta, StorageHint hint) {
    FockOperator s = op_scale(cd(0.5, 0.0),
                              op_add(creation(F, zeta, false, hint), creation(F, zeta, true, hint)));
    s.label = "s";
    return s;
}

FockOperator semicircular_field(const FockSpace& F, const rep::RepSpec& rep,
                                const Eigen::VectorXd& xi, StorageHint hint) {
    if (rep.complex_dim() != F.d)
        throw std::invalid_argument("semicircular_field: representation dimension does not match Fock space");
    return field_operator(F, rep::embed(rep, xi), hint);
}

FockOperator generalized_circular(const FockSpace& F, double lambda,
                                  const Eigen::VectorXcd& xi1, const Eigen::VectorXcd& xi2,
                                  StorageHint hint) {
    if (!(lambda > 0.0) || lambda > 1.0)
        throw std::invalid_argument("generalized_circular: lambda must lie in (0,1]");
    if (std::abs(xi1.norm() - 1.0) > 1e-12 || std::abs(xi2.norm() - 1.0) > 1e-12 ||
        std::abs(xi1.dot(xi2)) > 1e-12)
        throw std::invalid_argument("generalized_circular: xi1, xi2 must be orthonormal (tol 1e-12)");
    FockOperator y = op_add(creation(F, xi1, false, hint),
                            op_scale(std::sqrt(lambda), creation(F, xi2, true, hint)));
    y.label = "y";
    return y;
}

FockOperator identity_operator(const FockSpace& F, StorageHint hint) {
    const bool dense = hint == StorageHint::dense ||
                       (hint == StorageHint::automatic && fits_dense(F));
    if (hint == StorageHint::dense) require_dense_budget(F, "identity_operator");
    if (dense)
        return make_op(F, Eigen::MatrixXcd::Identity(F.total_dim, F.total_dim).eval(), 0, "1");
    SparseCd m(F.total_dim, F.total_dim);
    m.setIdentity();
    return make_op(F, std::move(m), 0, "1");
}

// ── Operator algebra ───────────────────────────────────────────────────────────

Eigen::VectorXcd FockOperator::apply(const Eigen::VectorXcd& v) const {
    if (static_cast<std::size_t>(v.size()) != space.total_dim)
        throw std::invalid_argument("FockOperator::apply: vector dimension mismatch");
    if (dense) return (*dense) * v;
    return (*sparse) * v;
}

Eigen::MatrixXcd FockOperator::to_dense() const {
    if (dense) return *dense;
    require_dense_budget(space, "to_dense");
    return Eigen::MatrixXcd(*sparse);
}

FockOperator FockOperator::adjoint() const {
    FockOperator out = *this;
    out.label = "(" + label + ")*";
    if (dense) {
        out.dense = std::make_shared<const Eigen::MatrixXcd>(dense->adjoint().eval());
    } else {
        out.sparse = std::make_shared<const SparseCd>(SparseCd(sparse->adjoint()));
    }
    return out;
}

FockOperator op_add(const FockOperator& a, const FockOperator& b) {
    check_same_space(a, b, "op_add");
    const int degree = std::max(a.degree, b.degree);
    const std::string label = combine_labels(a.label, "+", b.label);
    if (a.is_dense() && b.is_dense())
        return make_op(a.space, (*a.dense + *b.dense).eval(), degree, label);
    if (!a.is_dense() && !b.is_dense())
        return make_op(a.space, SparseCd(*a.sparse + *b.sparse), degree, label);
    // Mixed: accumulate the sparse term into a dense copy.
    Eigen::MatrixXcd m = a.is_dense() ? *a.dense : *b.dense;
    const SparseCd& s = a.is_dense() ? *b.sparse : *a.sparse;
    for (int k = 0; k < s.outerSize(); ++k)
        for (SparseCd::InnerIterator it(s, k); it; ++it) m(it.row(), it.col()) += it.value();
    return make_op(a.space, std::move(m), degree, label);
}

FockOperator op_sub(const FockOperator& a, const FockOperator& b) {
    return op_add(a, op_scale(cd(-1.0, 0.0), b));
}

FockOperator op_scale(cd c, const FockOperator& a) {
    FockOperator out = a;
    if (a.is_dense())
        out.dense = std::make_shared<const Eigen::MatrixXcd>((c * (*a.dense)).eval());
    else
        out.sparse = std::make_shared<const SparseCd>(SparseCd(c * (*a.sparse)));
    return out;
}

FockOperator op_mul(const FockOperator& a, const FockOperator& b) {
    check_same_space(a, b, "op_mul");
    const int degree = a.degree + b.degree;
    const std::string label = combine_labels(a.label, "*", b.label);
    if (a.is_dense() && b.is_dense())
        return make_op(a.space, (*a.dense * *b.dense).eval(), degree, label);
    if (!a.is_dense() && !b.is_dense())
        return make_op(a.space, SparseCd(*a.sparse * *b.sparse), degree, label);
    if (a.is_dense())
        return make_op(a.space, (*a.dense * *b.sparse).eval(), degree, label);
    return make_op(a.space, (*a.sparse * *b.dense).eval(), degree, label);
}

// ── Vacuum state ───────────────────────────────────────────────────────────────

MomentResult vacuum_expectation(const FockOperator& x) {
    Eigen::VectorXcd omega = Eigen::VectorXcd::Zero(x.space.total_dim);
    omega(0) = 1.0;
    const Eigen::VectorXcd v = x.apply(omega);
    return {v(0), x.degree <= x.space.D};
}

MomentResult vacuum_moment(std::span<const FockOperator* const> word) {
    if (word.empty()) return {cd(1.0, 0.0), true};
    const FockSpace& F = word.front()->space;
    int degree = 0;
    for (const FockOperator* op : word) {
        check_same_space(*word.front(), *op, "vacuum_moment");
        degree += op->degree;
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(F.total_dim);
    v(0) = 1.0;
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = (*it)->apply(v);
    return {v(0), degree <= F.D};
}

// ── Letter expressions ─────────────────────────────────────────────────────────

LetterExpr le_create(const Eigen::VectorXcd& zeta) { return {{cd(1.0, 0.0), {Letter{true, zeta}}}}; }
LetterExpr le_annihilate(const Eigen::VectorXcd& zeta) { return {{cd(1.0, 0.0), {Letter{false, zeta}}}}; }

LetterExpr le_field(const Eigen::VectorXcd& zeta) {
    return {{cd(0.5, 0.0), {Letter{true, zeta}}}, {cd(0.5, 0.0), {Letter{false, zeta}}}};
}

LetterExpr le_add(const LetterExpr& a, const LetterExpr& b) {
    LetterExpr out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

LetterExpr le_mul(const LetterExpr& a, const LetterExpr& b) {
    LetterExpr out;
    out.reserve(a.size() * b.size());
    for (const auto& wa : a)
        for (const auto& wb : b) {
            LetterWord w;
            w.coeff = wa.coeff * wb.coeff;
            w.letters = wa.letters;
            w.letters.insert(w.letters.end(), wb.letters.begin(), wb.letters.end());
            out.push_back(std::move(w));
        }
    return out;
}

LetterExpr le_scale(cd c, const LetterExpr& a) {
    LetterExpr out = a;
    for (auto& w : out) w.coeff *= c;
    return out;
}

LetterExpr le_adjoint(const LetterExpr& a) {
    LetterExpr out;
    out.reserve(a.size());
    for (const auto& w : a) {
        LetterWord r;
        r.coeff = std::conj(w.coeff);
        r.letters.assign(w.letters.rbegin(), w.letters.rend());
        for (auto& l : r.letters) l.create = !l.create;
        out.push_back(std::move(r));
    }
    return out;
}

MomentResult vacuum_moment(const FockSpace& F, const LetterExpr& x) {
    cd total(0.0, 0.0);
    std::size_t max_len = 0;
    std::vector<std::size_t> pow_d(F.D + 1);
    pow_d[0] = 1;
    for (int n = 1; n <= F.D; ++n) pow_d[n] = pow_d[n - 1] * static_cast<std::size_t>(F.d);

    for (const auto& word : x) {
        max_len = std::max(max_len, word.letters.size());
        std::map<std::size_t, cd> state;
        state[0] = word.coeff;
        for (auto it = word.letters.rbegin(); it != word.letters.rend() && !state.empty(); ++it) {
            if (it->zeta.size() != F.d)
                throw std::invalid_argument("vacuum_moment: letter dimension mismatch");
            std::map<std::size_t, cd> next;
            for (const auto& [idx, c] : state) {
                const int n = F.length_of(idx);
                const std::size_t r = idx - F.offset[n];
                if (it->create) {
                    if (n == F.D) continue; // truncation kills the climb
                    for (int i = 0; i < F.d; ++i) {
                        const cd zi = it->zeta(i);
                        if (zi == cd(0.0, 0.0)) continue;
                        next[F.offset[n + 1] + static_cast<std::size_t>(i) * pow_d[n] + r] += c * zi;
                    }
                } else {
                    if (n == 0) continue; // annihilates the vacuum
                    const int j = static_cast<int>(r / pow_d[n - 1]);
                    const cd zj = std::conj(it->zeta(j));
                    if (zj == cd(0.0, 0.0)) continue;
                    next[F.offset[n - 1] + r % pow_d[n - 1]] += c * zj;
                }
            }
            state.swap(next);
        }
        if (auto it = state.find(0); it != state.end()) total += it->second;
    }
    return {total, max_len <= static_cast<std::size_t>(F.D)};
}

Eigen::MatrixXcd le_to_dense(const FockSpace& F, const LetterExpr& x) {
    require_dense_budget(F, "le_to_dense");
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(F.total_dim, F.total_dim);
    for (const auto& word : x) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(F.total_dim, F.total_dim);
        for (const auto& l : word.letters)
            m = m * creation(F, l.zeta, !l.create, StorageHint::dense).to_dense();
        acc += word.coeff * m;
    }
    return acc;
}

// ── Diagnostics ────────────────────────────────────────────────────────────────

double field_pair_identity_check(const FockSpace& F, const rep::RepSpec& rep,
                                 const Eigen::VectorXcd& xiK, const Eigen::VectorXcd& etaK) {
    if (rep.complex_dim() != F.d)
        throw std::invalid_argument("field_pair_identity_check: dimension mismatch");
    const Eigen::VectorXcd zeta = xiK + cd(0.0, 1.0) * etaK;
    const Eigen::VectorXcd Tzeta = rep::involution_T(rep, zeta);
    const Eigen::MatrixXcd lhs = 2.0 * field_operator(F, xiK).to_dense() +
                                 cd(0.0, 2.0) * field_operator(F, etaK).to_dense();
    const Eigen::MatrixXcd rhs =
        creation(F, zeta).to_dense() + creation(F, Tzeta, true).to_dense();
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

std::string Histogram::to_csv() const {
    std::string out = "bin_left,bin_right,count\n";
    for (std::size_t i = 0; i < count.size(); ++i)
        out += util::fmt_g17(left[i]) + "," + util::fmt_g17(right[i]) + "," +
               std::to_string(count[i]) + "\n";
    return out;
}

Histogram make_histogram(std::span<const double> values, int bins) {
    if (bins < 1) throw std::invalid_argument("make_histogram: bins must be >= 1");
    Histogram h;
    if (values.empty()) return h;
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi == lo) { lo -= 0.5; hi += 0.5; }
    const double w = (hi - lo) / bins;
    h.left.resize(bins);
    h.right.resize(bins);
    h.count.assign(bins, 0);
    for (int b = 0; b < bins; ++b) {
        h.left[b] = lo + b * w;
        h.right[b] = lo + (b + 1) * w;
    }
    for (double v : values) {
        int b = static_cast<int>((v - lo) / w);
        b = std::clamp(b, 0, bins - 1);
        ++h.count[b];
    }
    return h;
}

Histogram empirical_spectrum(const FockOperator& x, int bins) {
    const Eigen::MatrixXcd m = x.to_dense();
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("empirical_spectrum: operator is not self-adjoint (tol 1e-10)");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    return make_histogram(std::span<const double>(ev.data(), ev.size()), bins);
}

// ── Serialization ──────────────────────────────────────────────────────────────

namespace {

template <typename T>
std::string bytes_b64(const T* data, std::size_t count) {
    return util::base64_encode(std::span<const unsigned char>(
        reinterpret_cast<const unsigned char*>(data), count * sizeof(T)));
}

template <typename T>
std::vector<T> b64_values(const std::string& text, const char* what) {
    const std::vector<unsigned char> raw = util::base64_decode(text);
    if (raw.size() % sizeof(T) != 0)
        throw std::invalid_argument(std::string("deserialize_operator: ragged payload for ") + what);
    std::vector<T> out(raw.size() / sizeof(T));
    std::memcpy(out.data(), raw.data(), raw.size());
    return out;
}

} // namespace

std::string serialize_operator(const FockOperator& x) {
    json doc;
    doc["d"] = x.space.d;
    doc["D"] = x.space.D;
    doc["label"] = x.label;
    doc["exact_depth"] = x.exact_depth;
    doc["degree"] = x.degree;
    if (x.is_dense()) {
        doc["storage"] = "dense";
        // Column-major complex doubles: Eigen's native layout.
        doc["data"] = bytes_b64(x.dense->data(), x.space.total_dim * x.space.total_dim);
    } else {
        doc["storage"] = "csr";
        const SparseCd& s = *x.sparse;
        std::vector<std::int64_t> indptr(s.outerSize() + 1), indices(s.nonZeros());
        std::vector<cd> data(s.nonZeros());
        for (int k = 0; k <= s.outerSize(); ++k) indptr[k] = s.outerIndexPtr()[k];
        for (std::size_t k = 0; k < static_cast<std::size_t>(s.nonZeros()); ++k) {
            indices[k] = s.innerIndexPtr()[k];
            data[k] = s.valuePtr()[k];
        }
        doc["indptr"] = bytes_b64(indptr.data(), indptr.size());
        doc["indices"] = bytes_b64(indices.data(), indices.size());
        doc["data"] = bytes_b64(data.data(), data.size());
    }
    return doc.dump();
}

FockOperator deserialize_operator(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("deserialize_operator: malformed JSON: ") + e.what());
    }
    try {
        const FockSpace F = FockSpace::build(doc.at("d").get<int>(), doc.at("D").get<int>());
        FockOperator op;
        op.space = F;
        op.label = doc.at("label").get<std::string>();
        op.degree = doc.at("degree").get<int>();
        op.exact_depth = doc.at("exact_depth").get<int>();
        const std::string storage = doc.at("storage").get<std::string>();
        if (storage == "dense") {
            const auto vals = b64_values<cd>(doc.at("data").get<std::string>(), "dense data");
            if (vals.size() != F.total_dim * F.total_dim)
                throw std::invalid_argument("deserialize_operator: dense payload size mismatch");
            Eigen::MatrixXcd m(F.total_dim, F.total_dim);
            std::memcpy(m.data(), vals.data(), vals.size() * sizeof(cd));
            op.dense = std::make_shared<const Eigen::MatrixXcd>(std::move(m));
        } else if (storage == "csr") {
            const auto indptr = b64_values<std::int64_t>(doc.at("indptr").get<std::string>(), "indptr");
            const auto indices = b64_values<std::int64_t>(doc.at("indices").get<std::string>(), "indices");
            const auto data = b64_values<cd>(doc.at("data").get<std::string>(), "data");
            if (indptr.size() != F.total_dim + 1 || indices.size() != data.size())
                throw std::invalid_argument("deserialize_operator: CSR payload size mismatch");
            std::vector<Eigen::Triplet<cd>> trips;
            trips.reserve(data.size());
            for (std::size_t row = 0; row < F.total_dim; ++row)
                for (std::int64_t k = indptr[row]; k < indptr[row + 1]; ++k)
                    trips.emplace_back(static_cast<int>(row), static_cast<int>(indices[k]), data[k]);
            SparseCd m(F.total_dim, F.total_dim);
            m.setFromTriplets(trips.begin(), trips.end());
            op.sparse = std::make_shared<const SparseCd>(std::move(m));
        } else {
            throw std::invalid_argument("deserialize_operator: unknown storage kind");
        }
        return op;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("deserialize_operator: incomplete payload: ") +
                                    e.what());
    }
}

} // namespace awlab::fock
