#pragma once

#include <span>

#include "caw/algebra.hpp"
#include "caw/group.hpp"

namespace caw {

// A linear map taking each basis element to one phase-scaled basis element.
// Every automorphism and twisting map of the constructions has this shape.
class MonomialMap {
  public:
    MonomialMap() = default;
    MonomialMap(AlgebraPtr dom, AlgebraPtr cod, std::vector<BasisIndex> target,
                std::vector<Phase> phase)
        : dom_(std::move(dom)), cod_(std::move(cod)), target_(std::move(target)),
          phase_(std::move(phase)) {
        if (target_.size() != dom_->dim() || phase_.size() != dom_->dim())
            throw InputError("monomial map assignment must cover the domain basis");
    }

    static MonomialMap identity(AlgebraPtr alg) {
        std::vector<BasisIndex> t(alg->dim());
        for (BasisIndex b = 0; b < t.size(); ++b) t[b] = b;
        return MonomialMap(alg, alg, std::move(t), std::vector<Phase>(alg->dim()));
    }

    const AlgebraPtr& domain() const { return dom_; }
    const AlgebraPtr& codomain() const { return cod_; }
    BasisIndex target(BasisIndex b) const { return target_[b]; }
    const Phase& phase(BasisIndex b) const { return phase_[b]; }

    template <class S>
    Element<S> apply(const Element<S>& x) const {
        if (!x.algebra()->same_as(*dom_)) throw InputError("monomial map domain mismatch");
        Element<S> out(cod_);
        std::vector<std::pair<BasisIndex, S>> terms;
        terms.reserve(x.entries().size());
        for (const auto& [idx, v] : x.entries())
            terms.push_back({target_[idx], ScalarOps<S>::scale_phase(v, phase_[idx])});
        out.set_terms(std::move(terms));
        return out;
    }
    template <class S>
    Element<S> apply_basis(BasisIndex b) const {
        return Element<S>::basis(cod_, target_[b], phase_[b]);
    }

    // (*this) after inner.
    MonomialMap compose(const MonomialMap& inner) const {
        if (!inner.cod_->same_as(*dom_)) throw InputError("monomial map composition mismatch");
        std::vector<BasisIndex> t(inner.dom_->dim());
        std::vector<Phase> p(inner.dom_->dim());
        for (BasisIndex b = 0; b < t.size(); ++b) {
            t[b] = target_[inner.target_[b]];
            p[b] = inner.phase_[b] + phase_[inner.target_[b]];
        }
        return MonomialMap(inner.dom_, cod_, std::move(t), std::move(p));
    }

    bool is_bijective() const {
        if (dom_->dim() != cod_->dim()) return false;
        std::vector<bool> seen(cod_->dim(), false);
        for (BasisIndex t : target_) {
            if (seen[t]) return false;
            seen[t] = true;
        }
        return true;
    }

    MonomialMap inverse() const {
        if (!is_bijective()) throw InputError("monomial map is not invertible");
        std::vector<BasisIndex> t(cod_->dim());
        std::vector<Phase> p(cod_->dim());
        for (BasisIndex b = 0; b < dom_->dim(); ++b) {
            t[target_[b]] = b;
            p[target_[b]] = -phase_[b];
        }
        return MonomialMap(cod_, dom_, std::move(t), std::move(p));
    }

    friend bool operator==(const MonomialMap& a, const MonomialMap& b) {
        return a.dom_->same_as(*b.dom_) && a.cod_->same_as(*b.cod_) && a.target_ == b.target_ &&
               a.phase_ == b.phase_;
    }

  private:
    AlgebraPtr dom_, cod_;
    std::vector<BasisIndex> target_;
    std::vector<Phase> phase_;
};

// General linear map given by the images of all basis elements.
template <class S>
class LinearMap {
  public:
    LinearMap() = default;
    LinearMap(AlgebraPtr dom, AlgebraPtr cod, std::vector<Element<S>> images)
        : dom_(std::move(dom)), cod_(std::move(cod)), images_(std::move(images)) {
        if (images_.size() != dom_->dim())
            throw InputError("linear map must assign an image to every basis element");
    }

    static LinearMap from_monomial(const MonomialMap& m) {
        std::vector<Element<S>> images;
        images.reserve(m.domain()->dim());
        for (BasisIndex b = 0; b < m.domain()->dim(); ++b)
            images.push_back(m.template apply_basis<S>(b));
        return LinearMap(m.domain(), m.codomain(), std::move(images));
    }

    const AlgebraPtr& domain() const { return dom_; }
    const AlgebraPtr& codomain() const { return cod_; }
    const Element<S>& image(BasisIndex b) const { return images_[b]; }

    Element<S> apply(const Element<S>& x) const {
        if (!x.algebra()->same_as(*dom_)) throw InputError("linear map domain mismatch");
        Element<S> out(cod_);
        for (const auto& [idx, v] : x.entries())
            for (const auto& [j, w] : images_[idx].entries())
                out.add_term(j, ScalarOps<S>::mul(v, w));
        return out;
    }

  private:
    AlgebraPtr dom_, cod_;
    std::vector<Element<S>> images_;
};

struct StarHomFailure {
    std::string what;
    BasisIndex a = 0, b = 0;
};
struct StarHomReport {
    std::vector<StarHomFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Checks unit preservation, adjoint compatibility and multiplicativity on
// all composable basis pairs. For monomial maps additionally checks that the
// label assignment is injective (per spec of the monomial kind); pass
// require_bijective for automorphism claims.
StarHomReport check_star_homomorphism(const MonomialMap& m, bool require_bijective = false);

template <class S>
StarHomReport check_star_homomorphism(const LinearMap<S>& m) {
    StarHomReport rep;
    const BasisAlgebra& dom = *m.domain();
    Element<S> unit_img = Element<S>::zero(m.codomain());
    for (BasisIndex b : dom.unit_support()) unit_img = unit_img + m.image(b);
    if (unit_img != Element<S>::unit(m.codomain()))
        rep.failures.push_back({"unit not preserved", 0, 0});
    for (BasisIndex b = 0; b < dom.dim(); ++b) {
        MonomialTerm ad = dom.adjoint(b);
        if (m.image(ad.index).scaled_phase(-ad.phase) != m.image(b).adjoint())
            rep.failures.push_back({"adjoint mismatch", b, b});
    }
    dom.for_each_composable([&](BasisIndex a, BasisIndex b) {
        Element<S> lhs = m.image(a) * m.image(b);
        auto prod = dom.mul(a, b);
        Element<S> rhs = prod ? m.image(prod->index).scaled_phase(prod->phase)
                              : Element<S>::zero(m.codomain());
        if (lhs != rhs) rep.failures.push_back({"multiplicativity", a, b});
    });
    return rep;
}

// Conjugation x -> u x u* for a monomially shaped unitary u (one entry per
// row and column key). Basis elements map to single scalar-decorated basis
// elements in O(1) after an O(nnz) index build.
template <class S>
class AdApplier {
  public:
    explicit AdApplier(const Element<S>& u) : alg_(u.algebra().get()) {
        Element<S> us = u.adjoint();
        for (const auto& [idx, v] : u.entries())
            monomial_ &= right_of_u_.emplace(alg_->right_key(idx), std::pair{idx, v}).second;
        for (const auto& [idx, v] : us.entries())
            monomial_ &= left_of_us_.emplace(alg_->left_key(idx), std::pair{idx, v}).second;
    }

    // false when u is not monomially shaped; callers then fall back to
    // element arithmetic
    bool monomial() const { return monomial_; }

    // u e_t u* = scalar * e_index; nullopt if the conjugate vanishes (cannot
    // happen for a unitary u, reported to the caller as a failure)
    std::optional<std::pair<BasisIndex, S>> conjugate_basis(BasisIndex t) const {
        auto ux = right_of_u_.find(alg_->left_key(t));
        if (ux == right_of_u_.end()) return std::nullopt;
        auto m1 = alg_->mul(ux->second.first, t);
        if (!m1) return std::nullopt;
        auto uy = left_of_us_.find(alg_->right_key(m1->index));
        if (uy == left_of_us_.end()) return std::nullopt;
        auto m2 = alg_->mul(m1->index, uy->second.first);
        if (!m2) return std::nullopt;
        S scalar = ScalarOps<S>::scale_phase(
            ScalarOps<S>::mul(ux->second.second, uy->second.second), m1->phase + m2->phase);
        return std::pair{m2->index, scalar};
    }

  private:
    const BasisAlgebra* alg_;
    std::unordered_map<std::uint64_t, std::pair<BasisIndex, S>> right_of_u_, left_of_us_;
    bool monomial_ = true;
};

// Ad(u): x -> u x u*. The monomial form exists whenever conjugation sends
// each basis element to a single phase-scaled basis element (diagonal and
// permutation-shaped unitaries); input must be unitary.
std::optional<MonomialMap> ad_monomial(const Element<Cyc>& u);

template <class S>
LinearMap<S> ad_linear(const Element<S>& u) {
    if (!u.is_unitary()) throw InputError("ad_unitary needs a unitary element");
    const AlgebraPtr& alg = u.algebra();
    Element<S> us = u.adjoint();
    std::vector<Element<S>> images;
    images.reserve(alg->dim());
    for (BasisIndex b = 0; b < alg->dim(); ++b)
        images.push_back(u * Element<S>::basis(alg, b) * us);
    return LinearMap<S>(alg, alg, std::move(images));
}

// E = (1/|G|) sum_g alpha_g for a genuine action (pairwise compositions must
// match the group table; anomalous data is rejected).
template <class S>
LinearMap<S> fixed_point_expectation(const GroupTable& g, std::span<const MonomialMap> action) {
    if (static_cast<int>(action.size()) != g.order)
        throw InputError("fixed_point_expectation needs one map per group element");
    const AlgebraPtr& alg = action[0].domain();
    if (!(action[GroupTable::identity] == MonomialMap::identity(alg)))
        throw InputError("fixed_point_expectation: alpha_e is not the identity");
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            if (!(action[a].compose(action[b]) == action[g.mul(a, b)]))
                throw InputError("fixed_point_expectation rejects non-action (anomalous?) input");
    Rat inv(1, g.order);
    std::vector<Element<S>> images;
    images.reserve(alg->dim());
    for (BasisIndex b = 0; b < alg->dim(); ++b) {
        Element<S> acc(alg);
        for (int a = 0; a < g.order; ++a)
            acc = acc + action[a].template apply_basis<S>(b);
        images.push_back(acc.scaled_rational(inv));
    }
    return LinearMap<S>(alg, alg, std::move(images));
}

// Kronecker tensor of monomial maps between multi-matrix algebras.
MonomialMap tensor_monomial(const MonomialMap& m1, const MonomialMap& m2,
                            const std::shared_ptr<MultiMatrixAlgebra>& dom,
                            const std::shared_ptr<MultiMatrixAlgebra>& cod);

// Tensor basis index of a pair of multi-matrix labels.
BasisIndex tensor_index(const MultiMatrixAlgebra& a, const MultiMatrixAlgebra& b,
                        const MultiMatrixAlgebra& ab, BasisIndex ia, BasisIndex ib);

template <class S>
Element<S> tensor_element(const Element<S>& x, const Element<S>& y,
                          const std::shared_ptr<MultiMatrixAlgebra>& ab) {
    const auto& a = static_cast<const MultiMatrixAlgebra&>(*x.algebra());
    const auto& b = static_cast<const MultiMatrixAlgebra&>(*y.algebra());
    Element<S> out(ab);
    for (const auto& [ia, va] : x.entries())
        for (const auto& [ib, vb] : y.entries())
            out.add_term(tensor_index(a, b, *ab, ia, ib), ScalarOps<S>::mul(va, vb));
    return out;
}

} // namespace caw
