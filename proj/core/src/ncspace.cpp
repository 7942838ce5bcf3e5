#include "awlab/ncspace.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace awlab::nc {

namespace {

// ── Byte hashing for element interning ─────────────────────────────────────────

std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

template <typename T>
void append_bytes(std::string& s, const T& v) {
    const char* p = reinterpret_cast<const char*>(&v);
    s.append(p, sizeof(T));
}

std::string matrix_bytes(const Eigen::MatrixXcd& m) {
    std::string s;
    append_bytes(s, static_cast<std::int64_t>(m.rows()));
    append_bytes(s, static_cast<std::int64_t>(m.cols()));
    s.append(reinterpret_cast<const char*>(m.data()), sizeof(cd) * m.size());
    return s;
}

bool matrix_equal(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return std::memcmp(a.data(), b.data(), sizeof(cd) * a.size()) == 0;
}

std::string letters_bytes(const std::vector<fock::Letter>& ls) {
    std::string s;
    for (const auto& l : ls) {
        s.push_back(l.create ? '\1' : '\0');
        append_bytes(s, static_cast<std::int32_t>(l.zeta.size()));
        s.append(reinterpret_cast<const char*>(l.zeta.data()), sizeof(cd) * l.zeta.size());
    }
    return s;
}

std::string expr_bytes(const fock::LetterExpr& x) {
    std::string s;
    for (const auto& w : x) {
        append_bytes(s, w.coeff);
        append_bytes(s, static_cast<std::int32_t>(w.letters.size()));
        s += letters_bytes(w.letters);
    }
    return s;
}

bool letters_equal(const std::vector<fock::Letter>& a, const std::vector<fock::Letter>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].create != b[i].create || a[i].zeta.size() != b[i].zeta.size()) return false;
        if (std::memcmp(a[i].zeta.data(), b[i].zeta.data(), sizeof(cd) * a[i].zeta.size()) != 0)
            return false;
    }
    return true;
}

bool expr_equal(const fock::LetterExpr& a, const fock::LetterExpr& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].coeff != b[i].coeff || !letters_equal(a[i].letters, b[i].letters)) return false;
    return true;
}

// Canonical form: identical letter sequences merged, zero terms dropped,
// words ordered by (length, letter bytes).
fock::LetterExpr canon_expr(const fock::LetterExpr& x, int d) {
    std::map<std::string, std::pair<cd, std::vector<fock::Letter>>> acc;
    for (const auto& w : x) {
        for (const auto& l : w.letters)
            if (l.zeta.size() != d)
                throw std::invalid_argument("VacuumWordSpace: letter dimension mismatch");
        std::string key;
        append_bytes(key, static_cast<std::int32_t>(w.letters.size()));
        key += letters_bytes(w.letters);
        auto [it, fresh] = acc.try_emplace(key, cd(0.0, 0.0), w.letters);
        it->second.first += w.coeff;
    }
    fock::LetterExpr out;
    for (auto& [key, cw] : acc)
        if (cw.first != cd(0.0, 0.0)) out.push_back({cw.first, std::move(cw.second)});
    return out;
}

} // namespace

// ── NCSpace base ───────────────────────────────────────────────────────────────

cd NCSpace::phi(ElemId a) {
    if (centered(a)) return cd(0.0, 0.0);
    if (auto it = phi_cache_.find(a); it != phi_cache_.end()) return it->second;
    const cd v = phi_impl(a);
    phi_cache_.emplace(a, v);
    return v;
}

ElemId NCSpace::center(ElemId a) {
    if (auto it = center_cache_.find(a); it != center_cache_.end()) return it->second;
    const ElemId r = sub(a, scale(phi(a), one()));
    mark_centered(r);
    center_cache_.emplace(a, r);
    return r;
}

double NCSpace::two_norm(ElemId a) {
    const cd v = phi(mul(adjoint(a), a));
    return std::sqrt(std::max(0.0, v.real()));
}

void NCSpace::add_generator(const std::string& gname, ElemId a) {
    for (const auto& [n, id] : gens_)
        if (n == gname) throw std::invalid_argument("add_generator: duplicate name " + gname);
    gens_.emplace_back(gname, a);
}

ElemId NCSpace::generator(const std::string& gname) const {
    for (const auto& [n, id] : gens_)
        if (n == gname) return id;
    throw std::invalid_argument("generator: unknown name " + gname + " in space " + name_);
}

// ── MatrixSpace ────────────────────────────────────────────────────────────────

MatrixSpace::MatrixSpace(std::string name, Eigen::MatrixXcd rho)
    : NCSpace(std::move(name)), rho_(std::move(rho)) {
    const int n = static_cast<int>(rho_.rows());
    if (n < 1 || rho_.cols() != n)
        throw std::invalid_argument("MatrixSpace: density matrix must be square");
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("MatrixSpace: density matrix must be self-adjoint");
    if (std::abs(rho_.trace() - cd(1.0, 0.0)) > 1e-12)
        throw std::invalid_argument("MatrixSpace: density matrix must have trace 1");

    bool diagonal = true;
    for (int i = 0; i < n && diagonal; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && rho_(i, j) != cd(0.0, 0.0)) { diagonal = false; break; }

    if (diagonal) {
        rho_half_ = Eigen::MatrixXcd::Zero(n, n);
        rho_invhalf_ = Eigen::MatrixXcd::Zero(n, n);
        halfstep_ok_ = true;
        for (int i = 0; i < n; ++i) {
            const double w = rho_(i, i).real();
            if (w < -1e-12)
                throw std::invalid_argument("MatrixSpace: density matrix must be positive");
            rho_half_(i, i) = std::sqrt(std::max(0.0, w));
            if (w > 1e-14) rho_invhalf_(i, i) = 1.0 / std::sqrt(w);
            else halfstep_ok_ = false;
        }
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_);
        const Eigen::VectorXd ev = es.eigenvalues();
        if (ev.minCoeff() < -1e-12)
            throw std::invalid_argument("MatrixSpace: density matrix must be positive");
        halfstep_ok_ = ev.minCoeff() > 1e-14;
        Eigen::VectorXd sq(n), isq(n);
        for (int i = 0; i < n; ++i) {
            sq(i) = std::sqrt(std::max(0.0, ev(i)));
            isq(i) = halfstep_ok_ ? 1.0 / sq(i) : 0.0;
        }
        rho_half_ = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().adjoint();
        rho_invhalf_ = es.eigenvectors() * isq.asDiagonal() * es.eigenvectors().adjoint();
    }
    set_one(intern(Eigen::MatrixXcd::Identity(n, n)));
}

std::shared_ptr<MatrixSpace> MatrixSpace::tracial(std::string name, int n) {
    if (n < 1) throw std::invalid_argument("MatrixSpace::tracial: n must be >= 1");
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n);
    return std::make_shared<MatrixSpace>(std::move(name), std::move(rho));
}

std::shared_ptr<MatrixSpace> MatrixSpace::geometric_state(std::string name, int n, double lambda) {
    if (n < 1) throw std::invalid_argument("MatrixSpace::geometric_state: n must be >= 1");
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw std::invalid_argument("MatrixSpace::geometric_state: lambda must lie in (0,1)");
    Eigen::VectorXd w(n);
    double pw = 1.0, z = 0.0;
    for (int j = 0; j < n; ++j) {
        w(j) = pw;
        z += pw;
        pw *= lambda;
    }
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) rho(j, j) = w(j) / z;
    // Nudge the heaviest weight so the trace is exactly 1 in double precision.
    rho(0, 0) += 1.0 - rho.trace().real();
    return std::make_shared<MatrixSpace>(std::move(name), std::move(rho));
}

int MatrixSpace::geometric_dim_for_mass(double lambda, double mass_tol) {
    if (!(lambda > 0.0) || !(lambda < 1.0) || !(mass_tol > 0.0))
        throw std::invalid_argument("geometric_dim_for_mass: need 0 < lambda < 1 and mass_tol > 0");
    int n = 1;
    double tail = lambda; // dropped mass of diag(1..λ^{n−1}) is λⁿ
    while (tail >= mass_tol && n < 100000) {
        tail *= lambda;
        ++n;
    }
    return n;
}

ElemId MatrixSpace::intern(const Eigen::MatrixXcd& m) {
    if (m.rows() != dim() || m.cols() != dim())
        throw std::invalid_argument("MatrixSpace::intern: dimension mismatch");
    const std::string bytes = matrix_bytes(m);
    const std::uint64_t h = fnv1a64(bytes.data(), bytes.size());
    auto& bucket = buckets_[h];
    for (ElemId id : bucket)
        if (matrix_equal(elems_[id], m)) return id;
    elems_.push_back(m);
    const ElemId id = elems_.size() - 1;
    bucket.push_back(id);
    return id;
}

const Eigen::MatrixXcd& MatrixSpace::matrix(ElemId a) const { return elems_.at(a); }

double MatrixSpace::op_norm(ElemId a) const {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(elems_.at(a));
    return svd.singularValues()(0);
}

ElemId MatrixSpace::modular_halfstep(ElemId a) {
    if (!halfstep_ok_)
        throw std::domain_error("modular_halfstep: state is not faithful on this algebra");
    return intern(rho_invhalf_ * elems_.at(a) * rho_half_);
}

ElemId MatrixSpace::mul(ElemId a, ElemId b) { return intern(elems_.at(a) * elems_.at(b)); }
ElemId MatrixSpace::add(ElemId a, ElemId b) { return intern(elems_.at(a) + elems_.at(b)); }
ElemId MatrixSpace::scale(cd c, ElemId a) { return intern(c * elems_.at(a)); }
ElemId MatrixSpace::adjoint(ElemId a) { return intern(elems_.at(a).adjoint()); }

std::optional<cd> MatrixSpace::as_scalar(ElemId a) const {
    const Eigen::MatrixXcd& m = elems_.at(a);
    const cd c = m(0, 0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (i == j && m(i, j) != c) return std::nullopt;
            if (i != j && m(i, j) != cd(0.0, 0.0)) return std::nullopt;
        }
    return c;
}

cd MatrixSpace::phi_impl(ElemId a) { return (rho_ * elems_.at(a)).trace(); }

// ── VacuumWordSpace ────────────────────────────────────────────────────────────

VacuumWordSpace::VacuumWordSpace(std::string name, int one_particle_dim)
    : NCSpace(std::move(name)), d_(one_particle_dim) {
    if (d_ < 1) throw std::invalid_argument("VacuumWordSpace: dimension must be >= 1");
    set_one(intern(fock::LetterExpr{{cd(1.0, 0.0), {}}}));
}

ElemId VacuumWordSpace::intern(const fock::LetterExpr& x) {
    const fock::LetterExpr cx = canon_expr(x, d_);
    const std::string bytes = expr_bytes(cx);
    const std::uint64_t h = fnv1a64(bytes.data(), bytes.size());
    auto& bucket = buckets_[h];
    for (ElemId id : bucket)
        if (expr_equal(elems_[id], cx)) return id;
    elems_.push_back(cx);
    const ElemId id = elems_.size() - 1;
    bucket.push_back(id);
    return id;
}

const fock::LetterExpr& VacuumWordSpace::expr(ElemId a) const { return elems_.at(a); }

ElemId VacuumWordSpace::mul(ElemId a, ElemId b) {
    return intern(fock::le_mul(elems_.at(a), elems_.at(b)));
}
ElemId VacuumWordSpace::add(ElemId a, ElemId b) {
    return intern(fock::le_add(elems_.at(a), elems_.at(b)));
}
ElemId VacuumWordSpace::scale(cd c, ElemId a) { return intern(fock::le_scale(c, elems_.at(a))); }
ElemId VacuumWordSpace::adjoint(ElemId a) { return intern(fock::le_adjoint(elems_.at(a))); }

std::optional<cd> VacuumWordSpace::as_scalar(ElemId a) const {
    const fock::LetterExpr& x = elems_.at(a);
    if (x.empty()) return cd(0.0, 0.0);
    if (x.size() == 1 && x[0].letters.empty()) return x[0].coeff;
    return std::nullopt;
}

cd VacuumWordSpace::phi_impl(ElemId a) {
    const fock::LetterExpr& x = elems_.at(a);
    int depth = 0;
    for (const auto& w : x) depth = std::max(depth, static_cast<int>(w.letters.size()));
    if (depth == 0) return as_scalar(a).value_or(cd(0.0, 0.0));
    auto it = spaces_.find(depth);
    if (it == spaces_.end()) it = spaces_.emplace(depth, fock::FockSpace::build(d_, depth)).first;
    return fock::vacuum_moment(it->second, x).value;
}

// ── FreeProductSpace ───────────────────────────────────────────────────────────

FreeProductSpace::FreeProductSpace(std::string name,
                                   std::vector<std::shared_ptr<NCSpace>> factors)
    : NCSpace(std::move(name)), factors_(std::move(factors)) {
    if (factors_.empty())
        throw std::invalid_argument("FreeProductSpace: need at least one factor");
    for (const auto& f : factors_)
        if (!f) throw std::invalid_argument("FreeProductSpace: null factor");
    set_one(intern(PolyP{{cd(1.0, 0.0), {}}}));
}

void FreeProductSpace::canonicalize_word(cd& coeff, PWord& w) const {
    bool changed = true;
    while (changed && coeff != cd(0.0, 0.0)) {
        changed = false;
        PWord out;
        out.reserve(w.size());
        for (const auto& [f, id] : w) {
            if (f < 0 || f >= factor_count())
                throw std::invalid_argument("FreeProductSpace: letter factor index out of range");
            if (auto s = factors_[f]->as_scalar(id)) {
                coeff *= *s;
                changed = true;
                continue;
            }
            if (!out.empty() && out.back().first == f) {
                out.back().second = factors_[f]->mul(out.back().second, id);
                changed = true;
            } else {
                out.emplace_back(f, id);
            }
        }
        w = std::move(out);
    }
    if (coeff == cd(0.0, 0.0)) w.clear();
}

FreeProductSpace::PolyP FreeProductSpace::canonicalize(PolyP p) const {
    std::map<PWord, cd> acc;
    for (auto& t : p) {
        canonicalize_word(t.coeff, t.w);
        if (t.coeff != cd(0.0, 0.0)) acc[t.w] += t.coeff;
    }
    PolyP out;
    for (auto& [w, c] : acc)
        if (c != cd(0.0, 0.0)) out.push_back({c, w});
    return out;
}

ElemId FreeProductSpace::intern(PolyP p) {
    PolyP cp = canonicalize(std::move(p));
    std::string bytes;
    for (const auto& t : cp) {
        append_bytes(bytes, t.coeff);
        append_bytes(bytes, static_cast<std::int32_t>(t.w.size()));
        for (const auto& [f, id] : t.w) {
            append_bytes(bytes, static_cast<std::int32_t>(f));
            append_bytes(bytes, static_cast<std::uint64_t>(id));
        }
    }
    const std::uint64_t h = fnv1a64(bytes.data(), bytes.size());
    auto& bucket = buckets_[h];
    auto equal = [](const PolyP& a, const PolyP& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].coeff != b[i].coeff || a[i].w != b[i].w) return false;
        return true;
    };
    for (ElemId id : bucket)
        if (equal(elems_[id], cp)) return id;
    elems_.push_back(std::move(cp));
    const ElemId id = elems_.size() - 1;
    bucket.push_back(id);
    return id;
}

ElemId FreeProductSpace::embed(int f, ElemId a) {
    if (f < 0 || f >= factor_count())
        throw std::invalid_argument("FreeProductSpace::embed: factor index out of range");
    return intern(PolyP{{cd(1.0, 0.0), {{f, a}}}});
}

ElemId FreeProductSpace::word(std::span<const std::pair<int, ElemId>> letters) {
    return intern(PolyP{{cd(1.0, 0.0), PWord(letters.begin(), letters.end())}});
}

cd FreeProductSpace::word_moment(std::span<const std::pair<int, ElemId>> letters) {
    cd coeff(1.0, 0.0);
    PWord w(letters.begin(), letters.end());
    canonicalize_word(coeff, w);
    if (coeff == cd(0.0, 0.0)) return cd(0.0, 0.0);
    return coeff * phi_word(w);
}

ElemId FreeProductSpace::mul(ElemId a, ElemId b) {
    const PolyP& pa = elems_.at(a);
    const PolyP& pb = elems_.at(b);
    PolyP out;
    out.reserve(pa.size() * pb.size());
    for (const auto& ta : pa)
        for (const auto& tb : pb) {
            Term t;
            t.coeff = ta.coeff * tb.coeff;
            t.w = ta.w;
            t.w.insert(t.w.end(), tb.w.begin(), tb.w.end());
            out.push_back(std::move(t));
        }
    return intern(std::move(out));
}

ElemId FreeProductSpace::add(ElemId a, ElemId b) {
    PolyP out = elems_.at(a);
    const PolyP& pb = elems_.at(b);
    out.insert(out.end(), pb.begin(), pb.end());
    return intern(std::move(out));
}

ElemId FreeProductSpace::scale(cd c, ElemId a) {
    PolyP out = elems_.at(a);
    for (auto& t : out) t.coeff *= c;
    return intern(std::move(out));
}

ElemId FreeProductSpace::adjoint(ElemId a) {
    PolyP out;
    out.reserve(elems_.at(a).size());
    for (const auto& t : elems_.at(a)) {
        Term r;
        r.coeff = std::conj(t.coeff);
        r.w.reserve(t.w.size());
        for (auto it = t.w.rbegin(); it != t.w.rend(); ++it)
            r.w.emplace_back(it->first, factors_[it->first]->adjoint(it->second));
        out.push_back(std::move(r));
    }
    return intern(std::move(out));
}

std::optional<cd> FreeProductSpace::as_scalar(ElemId a) const {
    const PolyP& p = elems_.at(a);
    if (p.empty()) return cd(0.0, 0.0);
    if (p.size() == 1 && p[0].w.empty()) return p[0].coeff;
    return std::nullopt;
}

ElemId FreeProductSpace::center(ElemId a) {
    const PolyP& p = elems_.at(a);
    // A scaled single letter centers inside its factor, so the structural flag
    // reaches the word recursion.
    if (p.size() == 1 && p[0].w.size() == 1) {
        const auto [f, id] = p[0].w[0];
        const cd c = p[0].coeff;
        ElemId e = embed(f, factors_[f]->center(id));
        if (c != cd(1.0, 0.0)) e = scale(c, e);
        mark_centered(e);
        return e;
    }
    return NCSpace::center(a);
}

cd FreeProductSpace::phi_impl(ElemId a) {
    cd total(0.0, 0.0);
    for (const auto& t : elems_.at(a)) total += t.coeff * phi_word(t.w);
    return total;
}

cd FreeProductSpace::phi_word(const PWord& w) {
    if (w.empty()) return cd(1.0, 0.0);
    if (w.size() == 1) return factors_[w[0].first]->phi(w[0].second);
    if (auto it = word_memo_.find(w); it != word_memo_.end()) return it->second;

    // The word is alternating and scalar-free by canonical construction.
    int split = -1;
    for (int i = 0; i < static_cast<int>(w.size()); ++i)
        if (!factors_[w[i].first]->centered(w[i].second)) { split = i; break; }

    cd val(0.0, 0.0);
    if (split >= 0) {
        const auto [f, id] = w[split];
        const cd c = factors_[f]->phi(id);
        {
            PWord w1 = w;
            w1[split].second = factors_[f]->center(id);
            cd coeff(1.0, 0.0);
            canonicalize_word(coeff, w1);
            if (coeff != cd(0.0, 0.0)) val += coeff * phi_word(w1);
        }
        if (c != cd(0.0, 0.0)) {
            PWord w2 = w;
            w2.erase(w2.begin() + split);
            cd coeff(1.0, 0.0);
            canonicalize_word(coeff, w2);
            if (coeff != cd(0.0, 0.0)) val += c * coeff * phi_word(w2);
        }
    }
    word_memo_.emplace(w, val);
    return val;
}

// ── Freeness verification ──────────────────────────────────────────────────────

FreenessReport check_freeness(NCSpace& space,
                              const std::vector<std::vector<std::string>>& families,
                              int max_len, double tol) {
    if (max_len < 2) throw std::invalid_argument("check_freeness: max_len must be >= 2");
    if (max_len > 8)
        throw std::invalid_argument("check_freeness: combinatorial budget is max_len <= 8");

    struct Gen {
        std::string name;
        ElemId centered;
    };
    std::vector<std::vector<Gen>> fams;
    for (const auto& fam : families) {
        if (fam.empty()) throw std::invalid_argument("check_freeness: empty family");
        std::vector<Gen> gens;
        for (const auto& gname : fam)
            gens.push_back({gname, space.center(space.generator(gname))});
        fams.push_back(std::move(gens));
    }

    FreenessReport rep;
    rep.max_len = max_len;
    rep.tol = tol;
    if (fams.size() < 2) {
        rep.applicable = false;
        return rep;
    }

    // DFS over alternating family sequences with per-position generator choice;
    // every prefix of length ≥ 2 is itself an alternating centered word.
    struct Frame {
        int fam, gen;
        ElemId prod;
    };
    std::vector<Frame> path;
    std::vector<std::string> names;

    auto visit = [&](auto&& self, int prev_fam) -> void {
        if (static_cast<int>(path.size()) >= max_len) return;
        for (int f = 0; f < static_cast<int>(fams.size()); ++f) {
            if (f == prev_fam) continue;
            for (int g = 0; g < static_cast<int>(fams[f].size()); ++g) {
                const ElemId letter = fams[f][g].centered;
                const ElemId prod =
                    path.empty() ? letter : space.mul(path.back().prod, letter);
                path.push_back({f, g, prod});
                names.push_back(fams[f][g].name);
                if (path.size() >= 2) {
                    const double r = std::abs(space.phi(prod));
                    ++rep.words_checked;
                    if (r > rep.max_residual) {
                        rep.max_residual = r;
                        std::string w;
                        for (std::size_t i = 0; i < names.size(); ++i) {
                            if (i) w += ".";
                            w += names[i];
                        }
                        rep.worst_word = w;
                    }
                }
                self(self, f);
                path.pop_back();
                names.pop_back();
            }
        }
    };
    visit(visit, -1);

    rep.pass = rep.max_residual <= tol;
    return rep;
}

cd free_product_moment(FreeProductSpace& space,
                       std::span<const std::pair<int, ElemId>> letters) {
    return space.word_moment(letters);
}

} // namespace awlab::nc
