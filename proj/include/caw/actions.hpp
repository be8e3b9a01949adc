#pragma once

#include "caw/cochain.hpp"
#include "caw/maps.hpp"

namespace caw {

// An anomalous action (alpha, u) of a finite group on a basis algebra:
// alpha_g are monomial automorphisms, u_{g,h} unitaries with
//   alpha_g alpha_h = Ad(u_{g,h}) alpha_{gh}
// and scalar-valued associator. Normalized: alpha_e = id, u_{e,g} = u_{g,e} = 1.
template <class S>
struct AnomalousAction {
    GroupTable group;
    AlgebraPtr algebra;
    std::vector<MonomialMap> alpha;          // indexed by g
    std::vector<std::vector<Element<S>>> u;  // indexed by (g, h)

    const MonomialMap& alpha_at(int g) const { return alpha[g]; }
    const Element<S>& u_at(int g, int h) const { return u[g][h]; }

    friend bool operator==(const AnomalousAction& a, const AnomalousAction& b) {
        if (!a.group.same_table(b.group) || !a.algebra->same_as(*b.algebra)) return false;
        for (int g = 0; g < a.group.order; ++g)
            if (!(a.alpha[g] == b.alpha[g])) return false;
        for (int g = 0; g < a.group.order; ++g)
            for (int h = 0; h < a.group.order; ++h)
                if (a.u[g][h] != b.u[g][h]) return false;
        return true;
    }
};

struct CheckFailure {
    std::string check;
    std::vector<int> tuple;
    std::string detail;
};

struct ActionReport {
    std::vector<CheckFailure> failures;
    bool valid() const { return failures.empty(); }
};

template <class S>
Element<S> apply_ad(const Element<S>& u, const Element<S>& x) {
    return u * x * u.adjoint();
}

// Validation against the definition; failures are data, not errors.
template <class S>
ActionReport validate_action(const AnomalousAction<S>& a) {
    ActionReport rep;
    const GroupTable& g = a.group;
    if (static_cast<int>(a.alpha.size()) != g.order)
        throw InputError("action needs one automorphism per group element");
    if (!(a.alpha[GroupTable::identity] == MonomialMap::identity(a.algebra)))
        rep.failures.push_back({"normalization", {GroupTable::identity}, "alpha_e != id"});
    for (int x = 0; x < g.order; ++x) {
        if (a.u[GroupTable::identity][x] != Element<S>::unit(a.algebra))
            rep.failures.push_back({"normalization", {0, x}, "u_{e,g} != 1"});
        if (a.u[x][GroupTable::identity] != Element<S>::unit(a.algebra))
            rep.failures.push_back({"normalization", {x, 0}, "u_{g,e} != 1"});
    }
    for (int x = 0; x < g.order; ++x) {
        StarHomReport hom = check_star_homomorphism(a.alpha[x], /*require_bijective=*/true);
        if (!hom.ok())
            rep.failures.push_back({"automorphism", {x}, hom.failures.front().what});
    }
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
            if (!a.u[x][y].is_unitary())
                rep.failures.push_back({"unitary", {x, y}, "u_{g,h} is not unitary"});
    // Eq (1.1): alpha_g alpha_h = Ad(u_{g,h}) alpha_{gh} on every basis element.
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y) {
            MonomialMap lhs = a.alpha[x].compose(a.alpha[y]);
            const Element<S>& uxy = a.u[x][y];
            const MonomialMap& axy = a.alpha[g.mul(x, y)];
            AdApplier<S> ad(uxy);
            for (BasisIndex b = 0; b < a.algebra->dim(); ++b) {
                bool ok;
                if (ad.monomial()) {
                    auto r = ad.conjugate_basis(axy.target(b));
                    ok = r && r->first == lhs.target(b) &&
                         ScalarOps<S>::equal(
                             ScalarOps<S>::scale_phase(r->second, axy.phase(b)),
                             ScalarOps<S>::from_phase(lhs.phase(b)));
                } else {
                    Element<S> l = lhs.template apply_basis<S>(b);
                    Element<S> r = uxy * axy.template apply_basis<S>(b) * uxy.adjoint();
                    ok = (l == r);
                }
                if (!ok) {
                    rep.failures.push_back({"eq11", {x, y}, "fails at " + a.algebra->label(b)});
                    break;
                }
            }
        }
    // Eq (1.2): the associator is a scalar multiple of the unit.
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
            for (int z = 0; z < g.order; ++z) {
                Element<S> e = a.alpha[x].apply(a.u[y][z]) * a.u[x][g.mul(y, z)] *
                               a.u[g.mul(x, y)][z].adjoint() * a.u[x][y].adjoint();
                if (!e.as_scalar_multiple_of_unit())
                    rep.failures.push_back({"eq12", {x, y, z}, "associator is not scalar"});
            }
    return rep;
}

template <class S>
Element<S> anomaly_element(const AnomalousAction<S>& a, int g, int h, int k) {
    const GroupTable& gr = a.group;
    return a.alpha[g].apply(a.u[h][k]) * a.u[g][gr.mul(h, k)] *
           a.u[gr.mul(g, h)][k].adjoint() * a.u[g][h].adjoint();
}

// The anomaly o(alpha, u) as a normalized 3-cocycle (exact backend).
inline Cochain extract_anomaly(const AnomalousAction<Cyc>& a) {
    const GroupTable& g = a.group;
    Cochain w(g, 3);
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
            for (int z = 0; z < g.order; ++z) {
                Element<Cyc> e = anomaly_element(a, x, y, z);
                auto lambda = e.as_scalar_multiple_of_unit();
                auto root = lambda ? lambda->as_root() : std::nullopt;
                if (!root)
                    throw InvariantViolation("anomaly not scalar at (" + std::to_string(x) + "," +
                                             std::to_string(y) + "," + std::to_string(z) + ")");
                w.set(std::array{x, y, z}, *root);
            }
    if (!w.is_normalized() || !is_cocycle(w))
        throw InvariantViolation("extracted anomaly is not a normalized cocycle");
    return w;
}

// True iff every associator scalar matches w (exactly on the exact backend,
// within tolerance on the float backend).
template <class S>
bool anomaly_matches(const AnomalousAction<S>& a, const Cochain& w) {
    const GroupTable& g = a.group;
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
            for (int z = 0; z < g.order; ++z) {
                auto lambda = anomaly_element(a, x, y, z).as_scalar_multiple_of_unit();
                if (!lambda) return false;
                if (!ScalarOps<S>::equal(*lambda,
                                         ScalarOps<S>::from_phase(w(x, y, z))))
                    return false;
            }
    return true;
}

// Unitary perturbation (alpha^v, u^v); the perturbing unitaries must be
// monomially shaped so the perturbed automorphisms stay monomial.
template <class S>
AnomalousAction<S> unitary_perturbation(const AnomalousAction<S>& a,
                                        const std::vector<Element<S>>& v) {
    const GroupTable& g = a.group;
    if (static_cast<int>(v.size()) != g.order)
        throw InputError("perturbation needs one unitary per group element");
    if (v[GroupTable::identity] != Element<S>::unit(a.algebra))
        throw InputError("perturbation must have v_e = 1");
    std::vector<MonomialMap> ad;
    for (int x = 0; x < g.order; ++x) {
        if (!v[x].is_unitary()) throw InputError("perturbation element is not unitary");
        if constexpr (ScalarOps<S>::exact) {
            auto m = ad_monomial(v[x]);
            if (!m) throw InputError("perturbation unitary is not monomially shaped");
            ad.push_back(std::move(*m));
        } else {
            throw InputError("unitary_perturbation runs on the exact backend");
        }
    }
    AnomalousAction<S> out;
    out.group = g;
    out.algebra = a.algebra;
    out.alpha.reserve(g.order);
    for (int x = 0; x < g.order; ++x) out.alpha.push_back(ad[x].compose(a.alpha[x]));
    out.u.assign(g.order, {});
    for (int x = 0; x < g.order; ++x) {
        out.u[x].reserve(g.order);
        for (int y = 0; y < g.order; ++y)
            out.u[x].push_back(v[x] * a.alpha[x].apply(v[y]) * a.u[x][y] *
                               v[g.mul(x, y)].adjoint());
    }
    return out;
}

// Tensor of two actions of the same group on multi-matrix algebras; the
// anomaly adds, and that is asserted on the exact backend.
AnomalousAction<Cyc> tensor_actions(const AnomalousAction<Cyc>& a1,
                                    const AnomalousAction<Cyc>& a2);

template <class S>
AnomalousAction<S> conjugate_action(const AnomalousAction<S>& a, const MonomialMap& iso) {
    if (!iso.domain()->same_as(*a.algebra)) throw InputError("conjugating iso domain mismatch");
    StarHomReport hom = check_star_homomorphism(iso, /*require_bijective=*/true);
    if (!hom.ok()) throw InputError("conjugate_action needs a *-isomorphism");
    MonomialMap inv = iso.inverse();
    AnomalousAction<S> out;
    out.group = a.group;
    out.algebra = iso.codomain();
    for (int g = 0; g < a.group.order; ++g)
        out.alpha.push_back(iso.compose(a.alpha[g]).compose(inv));
    out.u.assign(a.group.order, {});
    for (int g = 0; g < a.group.order; ++g)
        for (int h = 0; h < a.group.order; ++h) out.u[g].push_back(iso.apply(a.u[g][h]));
    return out;
}

template <class S>
struct ConjugacyWitness {
    std::vector<Element<S>> s; // perturbation unitaries
    MonomialMap theta;         // isomorphism
};

template <class S>
bool verify_cocycle_conjugacy(const AnomalousAction<S>& a1, const AnomalousAction<S>& a2,
                              const ConjugacyWitness<S>& w) {
    if (!a1.group.same_table(a2.group)) throw InputError("actions live on different groups");
    AnomalousAction<S> moved = conjugate_action(unitary_perturbation(a1, w.s), w.theta);
    return moved == a2;
}

template <class S>
bool is_alpha_cocycle(const AnomalousAction<S>& a, const std::vector<Element<S>>& v) {
    const GroupTable& g = a.group;
    if (static_cast<int>(v.size()) != g.order)
        throw InputError("alpha-cocycle needs one unitary per group element");
    for (const auto& x : v)
        if (!x.is_unitary()) throw InputError("alpha-cocycle entries must be unitary");
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
            if (v[x] * a.alpha[x].apply(v[y]) != v[g.mul(x, y)]) return false;
    return true;
}

// A finite-stage Rokhlin partition: projections p_g with sum 1 and
// alpha_g(p_h) = p_{gh}. Exact commutation against a designated set of
// elements stands in for centrality in F(A); check_central_in_algebra
// demands commutation with the whole algebra instead.
template <class S>
struct RokhlinPartition {
    std::vector<Element<S>> p;
    std::vector<Element<S>> designated;
    bool check_central_in_algebra = false;
};

template <class S>
ActionReport verify_rokhlin_partition(const AnomalousAction<S>& a,
                                      const RokhlinPartition<S>& part) {
    ActionReport rep;
    const GroupTable& g = a.group;
    if (static_cast<int>(part.p.size()) != g.order)
        throw InputError("partition needs one projection per group element");
    Element<S> sum = Element<S>::zero(a.algebra);
    for (const auto& px : part.p) sum = sum + px;
    if (sum != Element<S>::unit(a.algebra))
        rep.failures.push_back({"partition_sum", {}, "sum of projections is not 1"});
    for (int x = 0; x < g.order; ++x)
        if (!part.p[x].is_projection())
            rep.failures.push_back({"projection", {x}, "p_g is not a projection"});
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
            if (x != y && !(part.p[x] * part.p[y]).is_zero())
                rep.failures.push_back({"orthogonality", {x, y}, "p_g p_h != 0"});
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
            if (a.alpha[x].apply(part.p[y]) != part.p[g.mul(x, y)])
                rep.failures.push_back({"equivariance", {x, y}, "alpha_g(p_h) != p_{gh}"});
    if (part.check_central_in_algebra) {
        auto mm = std::dynamic_pointer_cast<const MultiMatrixAlgebra>(a.algebra);
        for (int x = 0; x < g.order; ++x) {
            if (mm) {
                // center of a multi-matrix algebra: per-block scalar diagonals
                bool ok = true;
                std::vector<std::optional<S>> block_coeff(mm->blocks().size());
                for (const auto& [idx, v] : part.p[x].entries()) {
                    auto l = mm->decode(idx);
                    if (l.row != l.col) ok = false;
                    if (block_coeff[l.block] &&
                        !ScalarOps<S>::equal(*block_coeff[l.block], v))
                        ok = false;
                    block_coeff[l.block] = v;
                }
                for (std::size_t s = 0; s < block_coeff.size() && ok; ++s)
                    if (block_coeff[s]) {
                        // every diagonal of a touched block must be present
                        for (int i = 0; i < mm->block_dim(static_cast<int>(s)); ++i)
                            if (!part.p[x].coeff(mm->index_of(static_cast<int>(s), i, i)))
                                ok = false;
                    }
                if (!ok)
                    rep.failures.push_back({"centrality", {x}, "p_g is not central"});
                continue;
            }
            for (BasisIndex b = 0; b < a.algebra->dim(); ++b) {
                Element<S> eb = Element<S>::basis(a.algebra, b);
                if (!part.p[x].commutes_with(eb)) {
                    rep.failures.push_back({"centrality", {x}, "fails at " + a.algebra->label(b)});
                    break;
                }
            }
        }
    }
    for (int x = 0; x < g.order; ++x)
        for (std::size_t i = 0; i < part.designated.size(); ++i)
            if (!part.p[x].commutes_with(part.designated[i]))
                rep.failures.push_back(
                    {"designated_commutation", {x, static_cast<int>(i)}, "[p_g, s] != 0"});
    return rep;
}

// Finite-stage Rokhlin averaging: phi(m) = sum_g alpha_g(psi(m)) p_g.
// phi is verified to be a unital *-homomorphism (exact, given the stated
// commutation); the equivariance defect alpha_k(phi(m)) - phi(m) is zero
// whenever u == 1 and is reported elementwise otherwise.
template <class S>
struct AverageResult {
    LinearMap<S> phi;
    bool homomorphism_ok = false;
    bool commutation_ok = false;
    // (k, domain basis index) pairs with a nonzero defect
    std::vector<std::pair<int, BasisIndex>> defects;
    bool defect_zero() const { return defects.empty(); }
};

template <class S>
AverageResult<S> rokhlin_average(const AnomalousAction<S>& a, const RokhlinPartition<S>& part,
                                 const LinearMap<S>& psi) {
    if (!psi.codomain()->same_as(*a.algebra))
        throw InputError("rokhlin_average: psi must land in the acted algebra");
    if (!check_star_homomorphism(psi).ok())
        throw InputError("rokhlin_average: psi is not a unital *-homomorphism");
    if (!verify_rokhlin_partition(a, part).valid())
        throw InputError("rokhlin_average: partition fails verification");
    const GroupTable& g = a.group;
    const auto& M = psi.domain();

    AverageResult<S> out;
    out.commutation_ok = true;
    std::vector<Element<S>> images;
    images.reserve(M->dim());
    for (BasisIndex b = 0; b < M->dim(); ++b) {
        Element<S> acc = Element<S>::zero(a.algebra);
        for (int x = 0; x < g.order; ++x) {
            Element<S> moved = a.alpha[x].apply(psi.image(b));
            for (int y = 0; y < g.order; ++y)
                if (!part.p[y].commutes_with(moved)) out.commutation_ok = false;
            acc = acc + moved * part.p[x];
        }
        images.push_back(std::move(acc));
    }
    out.phi = LinearMap<S>(M, a.algebra, std::move(images));
    out.homomorphism_ok = check_star_homomorphism(out.phi).ok();

    bool u_trivial = true;
    for (int x = 0; x < g.order && u_trivial; ++x)
        for (int y = 0; y < g.order && u_trivial; ++y)
            u_trivial = a.u[x][y] == Element<S>::unit(a.algebra);
    for (int k = 0; k < g.order; ++k)
        for (BasisIndex b = 0; b < M->dim(); ++b) {
            Element<S> defect = a.alpha[k].apply(out.phi.image(b)) - out.phi.image(b);
            if (!defect.is_zero()) out.defects.push_back({k, b});
        }
    if (u_trivial && !out.defects.empty())
        throw InvariantViolation("rokhlin_average: nonzero defect for a genuine action");
    return out;
}

// Finite-stage cocycle trivialization: u = sum_g v_g p_g satisfies
// u alpha_g(u*) = v_g exactly, needing only the cocycle identity, the
// equivariance of p and [v_g, p_h] = 0.
template <class S>
Element<S> trivialize_cocycle(const AnomalousAction<S>& a, const RokhlinPartition<S>& part,
                              const std::vector<Element<S>>& v) {
    if (!is_alpha_cocycle(a, v))
        throw InputError("trivialize_cocycle: v violates the alpha-cocycle identity");
    if (!verify_rokhlin_partition(a, part).valid())
        throw InputError("trivialize_cocycle: partition fails verification");
    const GroupTable& g = a.group;
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
            if (!v[x].commutes_with(part.p[y]))
                throw InputError("trivialize_cocycle: v_g must commute with the partition");
    Element<S> u = Element<S>::zero(a.algebra);
    for (int x = 0; x < g.order; ++x) u = u + v[x] * part.p[x];
    if (!u.is_unitary())
        throw InvariantViolation("trivialize_cocycle: u is not unitary");
    for (int x = 0; x < g.order; ++x)
        if (u * a.alpha[x].apply(u.adjoint()) != v[x])
            throw InvariantViolation("trivialize_cocycle: identity fails at g=" +
                                     std::to_string(x));
    return u;
}

// The permutation unitaries v_g = sum_h e_{gh,h} of a matrix-unit family
// indexed by G x G; asserts they form a unitary representation.
template <class S>
std::vector<Element<S>> permutation_unitary_from_units(
    const GroupTable& g, const std::vector<std::vector<Element<S>>>& e) {
    const AlgebraPtr& alg = e[0][0].algebra();
    Element<S> idsum = Element<S>::zero(alg);
    for (int x = 0; x < g.order; ++x) idsum = idsum + e[x][x];
    if (idsum != Element<S>::unit(alg))
        throw InputError("matrix units: diagonal does not sum to 1");
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y) {
            if (e[x][y].adjoint() != e[y][x])
                throw InputError("matrix units: adjoint condition fails");
            for (int z = 0; z < g.order; ++z)
                for (int w = 0; w < g.order; ++w) {
                    Element<S> prod = e[x][y] * e[z][w];
                    Element<S> expect = (y == z) ? e[x][w] : Element<S>::zero(alg);
                    if (prod != expect) throw InputError("matrix units: chain rule fails");
                }
        }
    std::vector<Element<S>> v;
    for (int x = 0; x < g.order; ++x) {
        Element<S> vx = Element<S>::zero(alg);
        for (int h = 0; h < g.order; ++h) vx = vx + e[g.mul(x, h)][h];
        v.push_back(std::move(vx));
    }
    for (int x = 0; x < g.order; ++x) {
        if (!v[x].is_unitary())
            throw InvariantViolation("permutation unitary is not unitary");
        for (int y = 0; y < g.order; ++y)
            if (v[x] * v[y] != v[g.mul(x, y)])
                throw InvariantViolation("permutation unitaries do not represent G");
    }
    return v;
}

// Twisted matrix units f_{g,h} = u* e_{g,h} u; exact equivariance
// alpha_k(f_{g,h}) = f_{kg,kh} is asserted.
template <class S>
std::vector<std::vector<Element<S>>> twist_matrix_units(
    const AnomalousAction<S>& a, const std::vector<std::vector<Element<S>>>& e,
    const Element<S>& u) {
    const GroupTable& g = a.group;
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
            for (int k = 0; k < g.order; ++k)
                if (a.alpha[k].apply(e[x][y]) != e[x][y])
                    throw InputError("twist_matrix_units: units are not alpha-fixed");
    std::vector<Element<S>> v = permutation_unitary_from_units(g, e);
    for (int x = 0; x < g.order; ++x)
        if (u * a.alpha[x].apply(u.adjoint()) != v[x])
            throw InputError("twist_matrix_units: u does not trivialize the permutation cocycle");
    Element<S> us = u.adjoint();
    std::vector<std::vector<Element<S>>> f(g.order);
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y) f[x].push_back(us * e[x][y] * u);
    for (int k = 0; k < g.order; ++k)
        for (int x = 0; x < g.order; ++x)
            for (int y = 0; y < g.order; ++y)
                if (a.alpha[k].apply(f[x][y]) != f[g.mul(k, x)][g.mul(k, y)])
                    throw InvariantViolation("twisted units are not equivariant at k=" +
                                             std::to_string(k));
    return f;
}

} // namespace caw
