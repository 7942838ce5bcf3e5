#include "awlab/modular.hpp"

#include "awlab/util.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace awlab::modular {

using json = nlohmann::ordered_json;

namespace {

constexpr cd I{0.0, 1.0};

json complex_json(cd v) { return json::array({v.real(), v.imag()}); }

std::size_t max_word_len(const fock::LetterExpr& x) {
    std::size_t n = 0;
    for (const auto& w : x) n = std::max(n, w.letters.size());
    return n;
}

} // namespace

ModularFlow make_flow(const rep::RepSpec& rep, const fock::FockSpace& space) {
    if (rep.complex_dim() != space.d)
        throw std::invalid_argument("make_flow: representation dimension does not match Fock space");
    return {rep, space};
}

fock::FockOperator second_quantize(const fock::FockSpace& F, const Eigen::MatrixXcd& u,
                                   const std::string& label) {
    if (u.rows() != F.d || u.cols() != F.d)
        throw std::invalid_argument("second_quantize: matrix dimension mismatch");
    const unsigned __int128 bytes =
        static_cast<unsigned __int128>(F.total_dim) * F.total_dim * sizeof(cd);
    if (bytes > F.budget_bytes)
        throw std::length_error("second_quantize: dense operator exceeds the byte budget");

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(F.total_dim, F.total_dim);
    m(0, 0) = 1.0;
    // Level n block is u^{⊗n}; the first tensor slot is the most significant
    // index digit, so B_n = u ⊗ B_{n−1}.
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Identity(1, 1);
    std::size_t dim = 1;
    for (int n = 1; n <= F.D; ++n) {
        Eigen::MatrixXcd next(dim * F.d, dim * F.d);
        for (int i = 0; i < F.d; ++i)
            for (int j = 0; j < F.d; ++j)
                next.block(i * dim, j * dim, dim, dim) = u(i, j) * block;
        block.swap(next);
        dim *= F.d;
        m.block(F.offset[n], F.offset[n], dim, dim) = block;
    }

    fock::FockOperator op;
    op.space = F;
    op.dense = std::make_shared<const Eigen::MatrixXcd>(std::move(m));
    op.degree = 0;
    op.exact_depth = F.D;
    op.label = label;
    return op;
}

fock::FockOperator gamma_t(const ModularFlow& flow, double t) {
    return second_quantize(flow.space, rep::A_power_matrix(flow.rep, I * t), "Gamma");
}

fock::FockOperator modular_apply(const ModularFlow& flow, const fock::FockOperator& x, double t) {
    if (x.space.d != flow.space.d || x.space.D != flow.space.D)
        throw std::invalid_argument("modular_apply: operator lives on a different Fock space");
    const fock::FockOperator g = gamma_t(flow, t);
    fock::FockOperator out = fock::op_mul(fock::op_mul(g, x), g.adjoint());
    out.degree = x.degree;
    out.exact_depth = x.exact_depth;
    out.label = "sigma(" + x.label + ")";
    return out;
}

fock::LetterExpr modular_letters(const ModularFlow& flow, const fock::LetterExpr& x, cd z) {
    fock::LetterExpr out = x;
    for (auto& w : out)
        for (auto& l : w.letters)
            l.zeta = rep::a_power_apply(flow.rep, I * (l.create ? z : std::conj(z)), l.zeta);
    return out;
}

fock::LetterExpr analytic_field_letters(const ModularFlow& flow, const Eigen::VectorXcd& zeta,
                                        cd z) {
    const Eigen::VectorXcd eta = rep::a_power_apply(flow.rep, I * z, zeta);
    return fock::le_add(fock::le_create(eta),
                        fock::le_annihilate(rep::involution_T(flow.rep, eta)));
}

fock::FockOperator analytic_field(const ModularFlow& flow, const Eigen::VectorXcd& zeta, cd z) {
    const Eigen::VectorXcd eta = rep::a_power_apply(flow.rep, I * z, zeta);
    fock::FockOperator op =
        fock::op_add(fock::creation(flow.space, eta),
                     fock::creation(flow.space, rep::involution_T(flow.rep, eta), true));
    op.label = "x(zeta,z)";
    return op;
}

// ── KMS ────────────────────────────────────────────────────────────────────────

KmsReport kms_check(const ModularFlow& flow, const fock::LetterExpr& x,
                    const fock::LetterExpr& y, const std::vector<double>& t_grid,
                    const std::string& x_label, const std::string& y_label) {
    if (t_grid.empty()) throw std::invalid_argument("kms_check: empty time grid");
    const std::size_t need = max_word_len(x) + max_word_len(y);
    if (need > static_cast<std::size_t>(flow.space.D))
        throw std::invalid_argument("kms_check: combined word degree " + std::to_string(need) +
                                    " exceeds depth " + std::to_string(flow.space.D) +
                                    "; moments would be inexact");

    KmsReport rep;
    rep.rep_json = rep::rep_to_json(flow.rep);
    rep.x_label = x_label;
    rep.y_label = y_label;
    rep.grid = t_grid;
    for (double t : t_grid) {
        KmsPoint p;
        p.t = t;
        const fock::LetterExpr yt = modular_letters(flow, y, cd(t, 0.0));
        const fock::LetterExpr yti = modular_letters(flow, y, cd(t, 1.0));
        p.f_t = fock::vacuum_moment(flow.space, fock::le_mul(x, yt)).value;
        p.f_t_plus_i = fock::vacuum_moment(flow.space, fock::le_mul(x, yti)).value;
        p.rhs = fock::vacuum_moment(flow.space, fock::le_mul(yt, x)).value;
        p.residual = std::abs(p.f_t_plus_i - p.rhs);
        rep.max_residual = std::max(rep.max_residual, p.residual);
        rep.per_point.push_back(p);
    }
    return rep;
}

std::string KmsReport::to_json() const {
    json j;
    j["rep"] = json::parse(rep_json);
    j["operators"] = {{"x", x_label}, {"y", y_label}};
    j["grid"] = grid;
    j["max_residual"] = max_residual;
    json pts = json::array();
    for (const KmsPoint& p : per_point) {
        json q;
        q["t"] = p.t;
        q["f_t"] = complex_json(p.f_t);
        q["f_t_plus_i"] = complex_json(p.f_t_plus_i);
        q["rhs"] = complex_json(p.rhs);
        q["residual"] = p.residual;
        pts.push_back(q);
    }
    j["per_point"] = pts;
    return j.dump();
}

// ── Almost-eigen elements ──────────────────────────────────────────────────────

std::vector<cd> default_z_grid(double step) {
    std::vector<cd> grid;
    const int n = static_cast<int>(std::lround(2.0 / step));
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b)
            grid.emplace_back(-1.0 + a * step, -1.0 + b * step);
    return grid;
}

std::pair<fock::LetterExpr, EigenDefectReport> almost_eigen(const ModularFlow& flow,
                                                            double theta_target, double window) {
    const double tol = std::max(window, 1e-12);

    // Spectral vectors of A: per plane ξ₁ (eigenvalue e^{θ}), ξ₂ (e^{−θ});
    // the trivial summand contributes eigenvalue 1.
    struct Candidate {
        double theta;
        Eigen::VectorXcd xi;
        std::string descr;
    };
    std::vector<Candidate> cands;
    const rep::RepSpec& R = flow.rep;
    for (int t = 0; t < R.trivial_dim; ++t) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(R.complex_dim());
        e(t) = 1.0;
        cands.push_back({0.0, e, "trivial:" + std::to_string(t)});
    }
    for (std::size_t b = 0; b < R.blocks.size(); ++b) {
        for (int c = 0; c < R.blocks[b].multiplicity; ++c) {
            cands.push_back({R.blocks[b].frequency,
                             rep::plane_eigenvector(R, static_cast<int>(b), c, +1),
                             "block" + std::to_string(b) + ":xi1"});
            cands.push_back({-R.blocks[b].frequency,
                             rep::plane_eigenvector(R, static_cast<int>(b), c, -1),
                             "block" + std::to_string(b) + ":xi2"});
        }
    }

    const Candidate* best = nullptr;
    double best_gap = tol;
    for (const Candidate& c : cands) {
        const double gap = std::abs(c.theta - theta_target);
        if (gap <= best_gap) {
            best_gap = gap;
            best = &c;
        }
    }
    if (!best)
        throw std::invalid_argument("almost_eigen: no spectral vector within the window of theta");

    const fock::LetterExpr x = fock::le_add(
        fock::le_create(best->xi),
        fock::le_annihilate(rep::involution_T(flow.rep, best->xi)));

    EigenDefectReport rep;
    rep.rep_json = rep::rep_to_json(flow.rep);
    rep.theta_target = theta_target;
    rep.lambda = std::exp(theta_target);
    rep.window = window;
    rep.theta_matched = best->theta;
    rep.vector_descr = best->descr;

    for (cd z : default_z_grid()) {
        const fock::LetterExpr sx = modular_letters(flow, x, z);
        const cd factor = std::exp(I * z * theta_target); // λ^{iz}, λ = e^{θ}
        const fock::LetterExpr diff = fock::le_add(sx, fock::le_scale(-factor, x));
        const Eigen::MatrixXcd m = fock::le_to_dense(flow.space, diff);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        EigenDefectPoint p;
        p.z_re = z.real();
        p.z_im = z.imag();
        p.defect = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
        rep.max_defect = std::max(rep.max_defect, p.defect);
        rep.per_point.push_back(p);
    }
    return {x, rep};
}

std::string EigenDefectReport::to_json() const {
    json j;
    j["rep"] = json::parse(rep_json);
    j["operators"] = {{"x", "l(xi)+l*(T xi)"}};
    j["theta_target"] = theta_target;
    j["lambda"] = lambda;
    j["window"] = window;
    j["theta_matched"] = theta_matched;
    j["vector"] = vector_descr;
    j["grid"] = "z in [-1,1]^2 step 0.25";
    j["max_residual"] = max_defect;
    json pts = json::array();
    for (const EigenDefectPoint& p : per_point) {
        json q;
        q["z"] = json::array({p.z_re, p.z_im});
        q["defect"] = p.defect;
        pts.push_back(q);
    }
    j["per_point"] = pts;
    return j.dump();
}

} // namespace awlab::modular
