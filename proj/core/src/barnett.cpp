#include "awlab/barnett.hpp"

#include "awlab/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace awlab::barnett {

using json = nlohmann::ordered_json;
using nc::cd;
using nc::ElemId;

namespace {

Eigen::MatrixXcd pauli_x() {
    Eigen::MatrixXcd m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Eigen::MatrixXcd pauli_z() {
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

BarnettSetup assemble(std::string name, std::shared_ptr<nc::MatrixSpace> N1,
                      std::shared_ptr<nc::MatrixSpace> N2, const Eigen::MatrixXcd& a,
                      const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& c) {
    BarnettSetup s;
    s.name = std::move(name);
    s.N1 = std::move(N1);
    s.N2 = std::move(N2);
    s.product = std::make_shared<nc::FreeProductSpace>(s.name + ":free",
        std::vector<std::shared_ptr<nc::NCSpace>>{s.N1, s.N2});
    s.a = s.N1->intern(a);
    s.b = s.N2->intern(b);
    s.c = s.N2->intern(c);
    s.alpha_a = s.a;
    s.alpha_b = s.b;
    s.alpha_c = s.c;
    return s;
}

} // namespace

void BarnettSetup::set_automorphisms(const Eigen::MatrixXcd& u1, const Eigen::MatrixXcd& u2) {
    auto check = [](const Eigen::MatrixXcd& u, const nc::MatrixSpace& sp, const char* which) {
        if (u.rows() != sp.dim() || u.cols() != sp.dim())
            throw std::invalid_argument(std::string("set_automorphisms: ") + which +
                                        " has wrong dimension");
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
        if ((u.adjoint() * u - id).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument(std::string("set_automorphisms: ") + which +
                                        " is not unitary");
        if ((u * sp.density() - sp.density() * u).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument(std::string("set_automorphisms: ") + which +
                                        " does not commute with the state density");
    };
    check(u1, *N1, "u1");
    check(u2, *N2, "u2");
    alpha_a = N1->intern(u1 * N1->matrix(a) * u1.adjoint());
    alpha_b = N2->intern(u2 * N2->matrix(b) * u2.adjoint());
    alpha_c = N2->intern(u2 * N2->matrix(c) * u2.adjoint());
}

BarnettSetup tracial_setup() {
    auto N1 = nc::MatrixSpace::tracial("N1:M2-trace", 2);
    auto N2 = nc::MatrixSpace::tracial("N2:M2-trace", 2);
    return assemble("tracial-M2xM2", std::move(N1), std::move(N2), pauli_z(), pauli_z(),
                    pauli_x());
}

BarnettSetup geometric_setup(double lambda) {
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw std::invalid_argument("geometric_setup: lambda must lie in (0,1)");
    auto N1 = nc::MatrixSpace::geometric_state("N1:M2-geometric", 2, lambda);
    auto N2 = nc::MatrixSpace::tracial("N2:M2-trace", 2);
    return assemble("geometric-M2xM2", std::move(N1), std::move(N2), pauli_x(), pauli_z(),
                    pauli_x());
}

double c_const(nc::MatrixSpace& space, nc::ElemId a) {
    const double na = space.op_norm(a);
    const ElemId one = space.one();
    const ElemId half = space.modular_halfstep(a); // throws if ρ is singular
    const double d_mod = space.op_norm(space.sub(half, a));
    const double d_isom = space.op_norm(space.sub(space.mul(space.adjoint(a), a), one));
    const double d_coisom = space.op_norm(space.sub(space.mul(a, space.adjoint(a)), one));
    const double st = std::abs(space.phi(a));
    return 2.0 * na * na * na * d_mod + 2.0 * na * na * d_isom +
           3.0 * (1.0 + na * na) * d_coisom + 6.0 * st * na;
}

BarnettConstants ef_consts(const BarnettSetup& setup) {
    BarnettConstants k;
    k.C_a = c_const(*setup.N1, setup.a);
    k.C_b = c_const(*setup.N2, setup.b);
    k.C_c = c_const(*setup.N2, setup.c);
    const double na = setup.N1->op_norm(setup.a);
    const double nb = setup.N2->op_norm(setup.b);
    const double ncn = setup.N2->op_norm(setup.c);
    k.E = 6.0 * na * na * na + 4.0 * nb * nb * nb + 4.0 * ncn * ncn * ncn;
    const ElemId cbs = setup.N2->mul(setup.c, setup.N2->adjoint(setup.b));
    k.F = 3.0 * k.C_a + 2.0 * k.C_b + 2.0 * k.C_c +
          12.0 * std::abs(setup.N2->phi(cbs)) * setup.N2->op_norm(cbs);
    return k;
}

BarnettReport barnett_check(BarnettSetup& setup,
                            const std::vector<std::pair<std::string, nc::ElemId>>& xs) {
    const BarnettConstants k = ef_consts(setup);
    nc::FreeProductSpace& M = *setup.product;

    struct Gen {
        ElemId right, left; // x·right vs left·x with left = α(g)
    };
    const Gen gens[3] = {
        {M.embed(0, setup.a), M.embed(0, setup.alpha_a)},
        {M.embed(1, setup.b), M.embed(1, setup.alpha_b)},
        {M.embed(1, setup.c), M.embed(1, setup.alpha_c)},
    };

    BarnettReport rep;
    rep.setup_name = setup.name;
    rep.consts = k;
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (const auto& [word, x] : xs) {
        BarnettCase bc;
        bc.word = word;
        bc.lhs = M.two_norm(M.sub(x, M.scale(M.phi(x), M.one())));
        double comm = 0.0;
        for (const Gen& g : gens)
            comm = std::max(comm, M.two_norm(M.sub(M.mul(x, g.right), M.mul(g.left, x))));
        bc.rhs = k.E * comm + k.F * M.two_norm(x);
        bc.margin = bc.rhs - bc.lhs;
        rep.min_margin = std::min(rep.min_margin, bc.margin);
        rep.cases.push_back(std::move(bc));
    }
    if (rep.cases.empty()) rep.min_margin = 0.0;
    rep.pass = rep.min_margin >= -kSlack;
    return rep;
}

std::vector<std::pair<std::string, nc::ElemId>> random_polynomials(BarnettSetup& setup, int count,
                                                                   int max_deg,
                                                                   std::uint64_t seed) {
    if (count < 0) throw std::invalid_argument("random_polynomials: count must be >= 0");
    if (max_deg < 0 || max_deg > 8)
        throw std::invalid_argument("random_polynomials: degree budget is max_deg <= 8");

    nc::FreeProductSpace& M = *setup.product;
    // Letter pools per factor: {a, a*} and {b, b*, c, c*}.
    const std::vector<std::pair<ElemId, std::string>> pool1 = {
        {setup.a, "a"}, {setup.N1->adjoint(setup.a), "a*"}};
    const std::vector<std::pair<ElemId, std::string>> pool2 = {
        {setup.b, "b"},
        {setup.N2->adjoint(setup.b), "b*"},
        {setup.c, "c"},
        {setup.N2->adjoint(setup.c), "c*"}};

    constexpr int terms = 4;
    std::vector<std::pair<std::string, nc::ElemId>> out;
    out.reserve(count);
    for (int p = 0; p < count; ++p) {
        ElemId x = 0;
        bool first = true;
        std::string name;
        for (int t = 0; t < terms; ++t) {
            const double coeff =
                util::u_pm1(util::key_of({seed, 0x10ull, (std::uint64_t)p, (std::uint64_t)t}));
            const std::uint64_t klen =
                util::key_of({seed, 0x20ull, (std::uint64_t)p, (std::uint64_t)t});
            const int len =
                std::min(static_cast<int>(util::u01(klen) * (max_deg + 1)), max_deg);
            int factor = util::key_of({seed, 0x30ull, (std::uint64_t)p, (std::uint64_t)t}) & 1;

            std::vector<std::pair<int, ElemId>> letters;
            std::string shape;
            for (int j = 0; j < len; ++j) {
                const auto& pool = factor == 0 ? pool1 : pool2;
                const std::uint64_t kg = util::key_of(
                    {seed, 0x40ull, (std::uint64_t)p, (std::uint64_t)t, (std::uint64_t)j});
                const std::size_t pick = static_cast<std::size_t>(
                    std::min<double>(util::u01(kg) * pool.size(), pool.size() - 1));
                letters.emplace_back(factor, pool[pick].first);
                if (!shape.empty()) shape += ".";
                shape += pool[pick].second;
                factor = 1 - factor;
            }
            const ElemId term = M.scale(cd(coeff, 0.0), M.word(letters));
            x = first ? term : M.add(x, term);
            first = false;
            if (!name.empty()) name += " + ";
            name += "(" + util::fmt_g17(coeff) + ")";
            name += shape.empty() ? "1" : shape;
        }
        out.emplace_back(std::move(name), x);
    }
    return out;
}

BarnettReport barnett_check_random(BarnettSetup& setup, int count, int max_deg,
                                   std::uint64_t seed) {
    BarnettReport rep = barnett_check(setup, random_polynomials(setup, count, max_deg, seed));
    rep.seed = seed;
    return rep;
}

std::string BarnettReport::to_json() const {
    json j;
    j["setup"] = setup_name;
    j["seed"] = seed;
    j["constants"] = {{"C_a", consts.C_a}, {"C_b", consts.C_b}, {"C_c", consts.C_c},
                      {"E", consts.E},     {"F", consts.F}};
    json cs = json::array();
    for (const BarnettCase& c : cases) {
        json q;
        q["word"] = c.word;
        q["lhs"] = c.lhs;
        q["rhs"] = c.rhs;
        q["margin"] = c.margin;
        cs.push_back(q);
    }
    j["cases"] = cs;
    j["summary"] = {{"min_margin", min_margin}, {"pass", pass}};
    return j.dump();
}

} // namespace awlab::barnett
