/*
 * Non-commutative probability spaces (A, φ) with exact state oracles, and
 * their reduced free products.
 *
 * Every space interns its elements and hands out opaque ElemIds; the shared
 * interface supplies *-algebra operations, the state φ, and the centering
 * map a ↦ å = a − φ(a)·1.  Elements produced by center() carry a structural
 * "centered" flag: φ short-circuits them to an exact 0.0, which makes the
 * defining property of freeness — alternating centered words across factors
 * evaluate to zero — hold *exactly* in the recursion, not merely to rounding.
 *
 * Concrete spaces:
 *   MatrixSpace      M_n with a density-matrix state  φ = Tr(ρ·); optional
 *                    modular half-step a ↦ ρ^{−1/2} a ρ^{1/2} when ρ > 0.
 *   VacuumWordSpace  the *-algebra generated by creation/annihilation
 *                    letters on a full Fock space over ℂ^d, in the vacuum
 *                    state; moments are evaluated exactly at a depth that
 *                    covers the longest word, so the oracle is truncation-free.
 *   FreeProductSpace the reduced free product of its factors.  The state is
 *                    computed by the centering recursion: canonicalize the
 *                    word (merge adjacent same-factor letters, fold exact
 *                    scalars), return 0 for alternating centered words, and
 *                    otherwise split the leftmost non-centered letter as
 *                    a = å + φ(a)1.  Termination is by strict decrease of
 *                    (length, #non-centered); values are memoized on the
 *                    canonical word.
 *
 * check_freeness enumerates all alternating centered words over a family
 * partition of the registered generators up to a length budget and reports
 * the largest |φ(w)|.  A partition with fewer than two families is flagged
 * inapplicable (a family is never free from itself in any generic state).
 */
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "awlab/fock.hpp"

namespace awlab::nc {

using cd = std::complex<double>;
using ElemId = std::size_t;

// ── Abstract space ─────────────────────────────────────────────────────────────

class NCSpace {
public:
    explicit NCSpace(std::string name) : name_(std::move(name)) {}
    virtual ~NCSpace() = default;

    const std::string& name() const { return name_; }
    ElemId one() const { return one_; }

    virtual ElemId mul(ElemId a, ElemId b) = 0;
    virtual ElemId add(ElemId a, ElemId b) = 0;
    virtual ElemId scale(cd c, ElemId a) = 0;
    virtual ElemId adjoint(ElemId a) = 0;
    // Exact recognition of c·1 (bitwise); nullopt otherwise.
    virtual std::optional<cd> as_scalar(ElemId a) const = 0;

    // φ(a); returns an exact 0.0 for elements flagged by center().
    cd phi(ElemId a);
    ElemId sub(ElemId a, ElemId b) { return add(a, scale(cd(-1.0, 0.0), b)); }
    // å = a − φ(a)·1, flagged centered; cached per element.
    virtual ElemId center(ElemId a);
    bool centered(ElemId a) const { return centered_.count(a) > 0; }
    // ‖a‖₂ = √φ(a*a) (tiny negative real parts from rounding clamp to 0).
    double two_norm(ElemId a);

    void add_generator(const std::string& gname, ElemId a);
    ElemId generator(const std::string& gname) const; // throws std::invalid_argument
    const std::vector<std::pair<std::string, ElemId>>& generators() const { return gens_; }

protected:
    virtual cd phi_impl(ElemId a) = 0;
    void set_one(ElemId a) { one_ = a; }
    void mark_centered(ElemId a) { centered_.insert(a); }

private:
    std::string name_;
    ElemId one_ = 0;
    std::vector<std::pair<std::string, ElemId>> gens_;
    std::unordered_set<ElemId> centered_;
    std::unordered_map<ElemId, ElemId> center_cache_;
    std::unordered_map<ElemId, cd> phi_cache_;
};

// ── Matrix algebra with a density-matrix state ─────────────────────────────────

class MatrixSpace final : public NCSpace {
public:
    // ρ must be self-adjoint, positive semidefinite, trace 1 (all to 1e−12).
    MatrixSpace(std::string name, Eigen::MatrixXcd rho);

    // Normalized trace: ρ = I/n.
    static std::shared_ptr<MatrixSpace> tracial(std::string name, int n);
    // ρ ∝ diag(1, λ, …, λ^{n−1}); n = 2 gives the diagonal state with
    // weights (1, λ)/(1+λ), large n the truncated geometric state.
    static std::shared_ptr<MatrixSpace> geometric_state(std::string name, int n, double lambda);
    // Smallest n with dropped geometric tail mass λⁿ below mass_tol.
    static int geometric_dim_for_mass(double lambda, double mass_tol);

    ElemId intern(const Eigen::MatrixXcd& m);
    const Eigen::MatrixXcd& matrix(ElemId a) const;
    const Eigen::MatrixXcd& density() const { return rho_; }
    int dim() const { return static_cast<int>(rho_.rows()); }

    // Operator norm = largest singular value.
    double op_norm(ElemId a) const;

    // ρ^{−1/2} a ρ^{1/2}; requires ρ strictly positive.
    bool halfstep_available() const { return halfstep_ok_; }
    ElemId modular_halfstep(ElemId a);

    ElemId mul(ElemId a, ElemId b) override;
    ElemId add(ElemId a, ElemId b) override;
    ElemId scale(cd c, ElemId a) override;
    ElemId adjoint(ElemId a) override;
    std::optional<cd> as_scalar(ElemId a) const override;

protected:
    cd phi_impl(ElemId a) override;

private:
    Eigen::MatrixXcd rho_, rho_half_, rho_invhalf_;
    bool halfstep_ok_ = false;
    std::vector<Eigen::MatrixXcd> elems_;
    std::unordered_map<std::uint64_t, std::vector<ElemId>> buckets_;
};

// ── Fock vacuum word algebra ───────────────────────────────────────────────────

class VacuumWordSpace final : public NCSpace {
public:
    VacuumWordSpace(std::string name, int one_particle_dim);

    ElemId intern(const fock::LetterExpr& x);
    const fock::LetterExpr& expr(ElemId a) const;
    int one_particle_dim() const { return d_; }

    ElemId mul(ElemId a, ElemId b) override;
    ElemId add(ElemId a, ElemId b) override;
    ElemId scale(cd c, ElemId a) override;
    ElemId adjoint(ElemId a) override;
    std::optional<cd> as_scalar(ElemId a) const override;

protected:
    cd phi_impl(ElemId a) override;

private:
    int d_;
    std::vector<fock::LetterExpr> elems_;
    std::unordered_map<std::uint64_t, std::vector<ElemId>> buckets_;
    std::map<int, fock::FockSpace> spaces_; // keyed by depth
};

// ── Reduced free product ──────────────────────────────────────────────────────

class FreeProductSpace final : public NCSpace {
public:
    FreeProductSpace(std::string name, std::vector<std::shared_ptr<NCSpace>> factors);

    int factor_count() const { return static_cast<int>(factors_.size()); }
    NCSpace& factor(int f) { return *factors_.at(f); }

    // Image of a factor element in the product.
    ElemId embed(int f, ElemId a);
    // Product word l₁⋯l_k of factor letters; empty span gives 1.
    ElemId word(std::span<const std::pair<int, ElemId>> letters);
    // φ of a product word without interning it.
    cd word_moment(std::span<const std::pair<int, ElemId>> letters);

    ElemId mul(ElemId a, ElemId b) override;
    ElemId add(ElemId a, ElemId b) override;
    ElemId scale(cd c, ElemId a) override;
    ElemId adjoint(ElemId a) override;
    std::optional<cd> as_scalar(ElemId a) const override;
    // Embedded single letters are centered inside their factor, so the flag
    // carries down to the recursion.
    ElemId center(ElemId a) override;

protected:
    cd phi_impl(ElemId a) override;

private:
    using PWord = std::vector<std::pair<int, ElemId>>;
    struct Term {
        cd coeff;
        PWord w;
    };
    using PolyP = std::vector<Term>;

    void canonicalize_word(cd& coeff, PWord& w) const;
    PolyP canonicalize(PolyP p) const;
    ElemId intern(PolyP p);
    cd phi_word(const PWord& w);

    std::vector<std::shared_ptr<NCSpace>> factors_;
    std::vector<PolyP> elems_;
    std::unordered_map<std::uint64_t, std::vector<ElemId>> buckets_;
    std::map<PWord, cd> word_memo_;
};

// ── Freeness verification ──────────────────────────────────────────────────────

struct FreenessReport {
    bool applicable = true;  // false when the partition has < 2 families
    bool pass = false;
    double max_residual = 0.0;
    std::size_t words_checked = 0;
    int max_len = 0;
    double tol = 0.0;
    std::string worst_word; // dot-joined generator names
};

// Enumerates alternating centered words over the named generator families,
// lengths 2..max_len (budget: max_len ≤ 8), and reports max |φ(w)|.
FreenessReport check_freeness(NCSpace& space,
                              const std::vector<std::vector<std::string>>& families,
                              int max_len, double tol = 1e-10);

// φ of a product word in a free product: spec'd convenience wrapper.
cd free_product_moment(FreeProductSpace& space,
                       std::span<const std::pair<int, ElemId>> letters);

} // namespace awlab::nc
