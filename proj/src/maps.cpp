#include "caw/maps.hpp"

#include <set>

namespace caw {

StarHomReport check_star_homomorphism(const MonomialMap& m, bool require_bijective) {
    StarHomReport rep;
    const BasisAlgebra& dom = *m.domain();
    const BasisAlgebra& cod = *m.codomain();

    // unit preservation (image of the domain unit is the codomain unit)
    {
        Element<Cyc> unit_img(m.codomain());
        for (BasisIndex b : dom.unit_support())
            unit_img = unit_img + m.apply_basis<Cyc>(b);
        if (unit_img != Element<Cyc>::unit(m.codomain()))
            rep.failures.push_back({"unit not preserved", 0, 0});
    }
    // injectivity of the label assignment (monomial-kind invariant)
    {
        std::set<BasisIndex> seen;
        for (BasisIndex b = 0; b < dom.dim(); ++b)
            if (!seen.insert(m.target(b)).second) {
                rep.failures.push_back({"label assignment not injective", b, b});
                break;
            }
    }
    if (require_bijective && !m.is_bijective())
        rep.failures.push_back({"not bijective", 0, 0});
    // * compatibility
    for (BasisIndex b = 0; b < dom.dim(); ++b) {
        MonomialTerm da = dom.adjoint(b);
        MonomialTerm ca = cod.adjoint(m.target(b));
        if (m.target(da.index) != ca.index ||
            !(da.phase + m.phase(da.index) == ca.phase - m.phase(b)))
            rep.failures.push_back({"adjoint mismatch", b, b});
    }
    // multiplicativity on composable pairs
    dom.for_each_composable([&](BasisIndex a, BasisIndex b) {
        auto src = dom.mul(a, b);
        auto dst = cod.mul(m.target(a), m.target(b));
        if (!src) {
            if (dst) rep.failures.push_back({"image of zero product nonzero", a, b});
            return;
        }
        if (!dst) {
            rep.failures.push_back({"image product vanishes", a, b});
            return;
        }
        if (dst->index != m.target(src->index) ||
            !(m.phase(a) + m.phase(b) + dst->phase == src->phase + m.phase(src->index)))
            rep.failures.push_back({"multiplicativity", a, b});
    });
    return rep;
}

std::optional<MonomialMap> ad_monomial(const Element<Cyc>& u) {
    if (!u.is_unitary()) throw InputError("ad_unitary needs a unitary element");
    const AlgebraPtr& alg = u.algebra();
    AdApplier<Cyc> ad(u);
    if (!ad.monomial()) return std::nullopt;
    std::vector<BasisIndex> target(alg->dim());
    std::vector<Phase> phase(alg->dim());
    for (BasisIndex b = 0; b < alg->dim(); ++b) {
        auto img = ad.conjugate_basis(b);
        if (!img) return std::nullopt;
        auto root = img->second.as_root();
        if (!root) return std::nullopt;
        target[b] = img->first;
        phase[b] = *root;
    }
    return MonomialMap(alg, alg, std::move(target), std::move(phase));
}

BasisIndex tensor_index(const MultiMatrixAlgebra& a, const MultiMatrixAlgebra& b,
                        const MultiMatrixAlgebra& ab, BasisIndex ia, BasisIndex ib) {
    auto la = a.decode(ia);
    auto lb = b.decode(ib);
    int block = la.block * static_cast<int>(b.blocks().size()) + lb.block;
    int row = la.row * b.block_dim(lb.block) + lb.row;
    int col = la.col * b.block_dim(lb.block) + lb.col;
    return ab.index_of(block, row, col);
}

MonomialMap tensor_monomial(const MonomialMap& m1, const MonomialMap& m2,
                            const std::shared_ptr<MultiMatrixAlgebra>& dom,
                            const std::shared_ptr<MultiMatrixAlgebra>& cod) {
    const auto& d1 = static_cast<const MultiMatrixAlgebra&>(*m1.domain());
    const auto& d2 = static_cast<const MultiMatrixAlgebra&>(*m2.domain());
    const auto& c1 = static_cast<const MultiMatrixAlgebra&>(*m1.codomain());
    const auto& c2 = static_cast<const MultiMatrixAlgebra&>(*m2.codomain());
    std::vector<BasisIndex> target(dom->dim());
    std::vector<Phase> phase(dom->dim());
    for (BasisIndex i1 = 0; i1 < d1.dim(); ++i1)
        for (BasisIndex i2 = 0; i2 < d2.dim(); ++i2) {
            BasisIndex src = tensor_index(d1, d2, *dom, i1, i2);
            target[src] = tensor_index(c1, c2, *cod, m1.target(i1), m2.target(i2));
            phase[src] = m1.phase(i1) + m2.phase(i2);
        }
    return MonomialMap(dom, cod, std::move(target), std::move(phase));
}

} // namespace caw
