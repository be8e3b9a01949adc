#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caw/sweeps.hpp"

using namespace caw;

namespace {

// the genuine action Ad(lambda_G)^(x)factors on B(l^2 G)^(x)factors, u == 1
AnomalousAction<Cyc> regular_action(const GroupTable& g, int factors) {
    auto m = MultiMatrixAlgebra::full(g.order);
    std::shared_ptr<MultiMatrixAlgebra> alg = m;
    if (factors == 2) alg = m->tensor(*m);
    AnomalousAction<Cyc> a;
    a.group = g;
    a.algebra = alg;
    int n = g.order;
    for (int ge = 0; ge < n; ++ge) {
        std::vector<BasisIndex> target(alg->dim());
        for (BasisIndex i = 0; i < alg->dim(); ++i) {
            auto l = alg->decode(i);
            if (factors == 1) {
                target[i] = alg->index_of(0, g.mul(ge, l.row), g.mul(ge, l.col));
            } else {
                int x1 = l.row / n, x2 = l.row % n, y1 = l.col / n, y2 = l.col % n;
                target[i] = alg->index_of(0, g.mul(ge, x1) * n + g.mul(ge, x2),
                                          g.mul(ge, y1) * n + g.mul(ge, y2));
            }
        }
        a.alpha.push_back(
            MonomialMap(alg, alg, std::move(target), std::vector<Phase>(alg->dim())));
    }
    a.u.assign(n, std::vector<Element<Cyc>>(n, Element<Cyc>::unit(alg)));
    return a;
}

} // namespace

TEST_CASE("a genuine action validates with zero anomaly") {
    AnomalousAction<Cyc> a = regular_action(make_named_group("C3"), 1);
    CHECK(validate_action(a).valid());
    CHECK(extract_anomaly(a).is_zero());
}

TEST_CASE("the stage-1 AF action validates and has anomaly omega") {
    for (auto [name, j] : {std::pair<std::string, int>{"C2", 1}, {"C3", 2}, {"C4", 1}}) {
        GroupTable g = make_named_group(name);
        Cochain w = standard_cyclic_cocycle(g.order, j);
        AfTower<Cyc> t = build_af_tower<Cyc>(g, w, 1);
        AnomalousAction<Cyc> a = t.action_at(0);
        CHECK(validate_action(a).valid());
        CHECK(extract_anomaly(a) == w);
    }
}

TEST_CASE("corrupting a u entry produces eq11 failures") {
    GroupTable g = make_named_group("C2");
    AfTower<Cyc> t = build_af_tower<Cyc>(g, standard_cyclic_cocycle(2, 1), 2);
    AnomalousAction<Cyc> a = t.action_at(1);
    Rng rng(5);
    a.u[1][1] = random_monomial_unitary(
        std::dynamic_pointer_cast<const MultiMatrixAlgebra>(a.algebra), 4, rng);
    ActionReport rep = validate_action(a);
    bool has_eq11 = false;
    for (const auto& f : rep.failures) has_eq11 |= (f.check == "eq11");
    CHECK(has_eq11);
}

TEST_CASE("unitary perturbation: trivial v is the identity, anomaly invariant") {
    GroupTable g = make_named_group("C2");
    Cochain w = standard_cyclic_cocycle(2, 1);
    AfTower<Cyc> t = build_af_tower<Cyc>(g, w, 2);
    AnomalousAction<Cyc> a = t.action_at(1);
    std::vector<Element<Cyc>> triv(2, Element<Cyc>::unit(a.algebra));
    CHECK(unitary_perturbation(a, triv) == a);

    Rng rng(17);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<Element<Cyc>> v;
        v.push_back(Element<Cyc>::unit(a.algebra));
        v.push_back(random_monomial_unitary(
            std::dynamic_pointer_cast<const MultiMatrixAlgebra>(a.algebra), 8, rng));
        AnomalousAction<Cyc> pert = unitary_perturbation(a, v);
        CHECK(validate_action(pert).valid());
        CHECK(extract_anomaly(pert) == w);
    }
}

TEST_CASE("perturbation by u_{g,g^-1}-derived phases changes u but not the anomaly") {
    GroupTable g = make_named_group("C4");
    Cochain w = standard_cyclic_cocycle(4, 1);
    AfTower<Cyc> t = build_af_tower<Cyc>(g, w, 2);
    AnomalousAction<Cyc> a = t.action_at(1);
    std::vector<Element<Cyc>> v;
    v.push_back(Element<Cyc>::unit(a.algebra));
    for (int x = 1; x < 4; ++x) v.push_back(a.u[x][g.inv(x)]);
    AnomalousAction<Cyc> pert = unitary_perturbation(a, v);
    CHECK(validate_action(pert).valid());
    CHECK(extract_anomaly(pert) == w);
    bool u_changed = false;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) u_changed |= !(pert.u[x][y] == a.u[x][y]);
    CHECK(u_changed);
}

TEST_CASE("tensor with the trivial action on C preserves the anomaly") {
    GroupTable g = make_named_group("C2");
    Cochain w = standard_cyclic_cocycle(2, 1);
    AfTower<Cyc> t = build_af_tower<Cyc>(g, w, 2);
    AnomalousAction<Cyc> a = t.action_at(1);
    auto c1 = MultiMatrixAlgebra::full(1, "C");
    AnomalousAction<Cyc> triv;
    triv.group = g;
    triv.algebra = c1;
    triv.alpha.assign(2, MonomialMap::identity(c1));
    triv.u.assign(2, std::vector<Element<Cyc>>(2, Element<Cyc>::unit(c1)));
    AnomalousAction<Cyc> prod = tensor_actions(a, triv);
    CHECK(validate_action(prod).valid());
    CHECK(extract_anomaly(prod) == w);
}

TEST_CASE("tensor anomalies add and cancel") {
    GroupTable g = make_named_group("C3");
    Cochain w = standard_cyclic_cocycle(3, 1);
    AfTower<Cyc> tp = build_af_tower<Cyc>(g, w, 2);
    AfTower<Cyc> tm = build_af_tower<Cyc>(g, -w, 2);
    AnomalousAction<Cyc> cancel = tensor_actions(tp.action_at(1), tm.action_at(1));
    CHECK(extract_anomaly(cancel).is_zero());
    AnomalousAction<Cyc> dbl = tensor_actions(tp.action_at(1), tp.action_at(1));
    CHECK(extract_anomaly(dbl) == w + w);
}

TEST_CASE("conjugation by a block relabeling preserves everything") {
    GroupTable g = make_named_group("C4");
    Cochain w = standard_cyclic_cocycle(4, 2);
    AfTower<Cyc> t = build_af_tower<Cyc>(g, w, 2);
    AnomalousAction<Cyc> a = t.action_at(1);
    CHECK(conjugate_action(a, MonomialMap::identity(a.algebra)) == a);
    MonomialMap iso = block_translation_iso(t, 1, 2);
    AnomalousAction<Cyc> b = conjugate_action(a, iso);
    CHECK(validate_action(b).valid());
    CHECK(extract_anomaly(b) == w);
    CHECK(conjugate_action(b, iso.inverse()) == a);
}

TEST_CASE("cocycle conjugacy witnesses verify") {
    GroupTable g = make_named_group("C2");
    Cochain w = standard_cyclic_cocycle(2, 1);
    AfTower<Cyc> t = build_af_tower<Cyc>(g, w, 2);
    AnomalousAction<Cyc> a = t.action_at(1);
    ConjugacyWitness<Cyc> idw{{Element<Cyc>::unit(a.algebra), Element<Cyc>::unit(a.algebra)},
                              MonomialMap::identity(a.algebra)};
    CHECK(verify_cocycle_conjugacy(a, a, idw));

    Rng rng(23);
    std::vector<Element<Cyc>> s = {
        Element<Cyc>::unit(a.algebra),
        random_monomial_unitary(std::dynamic_pointer_cast<const MultiMatrixAlgebra>(a.algebra),
                                4, rng)};
    MonomialMap theta = block_translation_iso(t, 1, 1);
    AnomalousAction<Cyc> b = conjugate_action(unitary_perturbation(a, s), theta);
    CHECK(verify_cocycle_conjugacy(a, b, ConjugacyWitness<Cyc>{s, theta}));
    CHECK(class_equal(extract_anomaly(a), extract_anomaly(b)));

    AfTower<Cyc> t0 = build_af_tower<Cyc>(g, Cochain(g, 3), 2);
    CHECK_FALSE(verify_cocycle_conjugacy(a, t0.action_at(1), idw));
}

TEST_CASE("alpha-cocycles: trivial, coboundary, and a failing constant") {
    GroupTable g = make_named_group("C2");
    Cochain w = standard_cyclic_cocycle(2, 1);
    AfTower<Cyc> t = build_af_tower<Cyc>(g, w, 3);
    AnomalousAction<Cyc> a = t.action_at(2);
    std::vector<Element<Cyc>> triv(2, Element<Cyc>::unit(a.algebra));
    CHECK(is_alpha_cocycle(a, triv));

    Rng rng(31);
    Element<Cyc> wu = random_tower_commuting_unitary(t, 2, rng);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) REQUIRE(wu.commutes_with(a.u[x][y]));
    CHECK(is_alpha_cocycle(a, coboundary_alpha_cocycle(a, wu)));

    Element<Cyc> signed_unit = t.rokhlin[2].p[0] - t.rokhlin[2].p[1];
    REQUIRE(signed_unit.is_unitary());
    std::vector<Element<Cyc>> constant(2, signed_unit);
    CHECK_FALSE(is_alpha_cocycle(a, constant));
}

TEST_CASE("rokhlin partition verification and corruption") {
    GroupTable g = make_named_group("C3");
    Cochain w = standard_cyclic_cocycle(3, 1);
    AfTower<Cyc> t = build_af_tower<Cyc>(g, w, 2);
    AnomalousAction<Cyc> a = t.action_at(1);
    CHECK(verify_rokhlin_partition(a, t.rokhlin[1]).valid());

    RokhlinPartition<Cyc> bad = t.rokhlin[1];
    std::swap(bad.p[1], bad.p[2]);
    ActionReport rep = verify_rokhlin_partition(a, bad);
    bool equivariance_failed = false;
    for (const auto& f : rep.failures) equivariance_failed |= (f.check == "equivariance");
    CHECK(equivariance_failed);
}

TEST_CASE("rokhlin averaging: invariant psi stays put, u == 1 kills the defect") {
    GroupTable g = make_named_group("C2");
    AfTower<Cyc> t0 = build_af_tower<Cyc>(g, Cochain(g, 3), 2);
    AnomalousAction<Cyc> a0 = t0.action_at(1);

    auto dom = MultiMatrixAlgebra::full(1, "C");
    std::vector<Element<Cyc>> im = {Element<Cyc>::unit(a0.algebra)};
    LinearMap<Cyc> unital(dom, a0.algebra, im);
    AverageResult<Cyc> r0 = rokhlin_average(a0, t0.rokhlin[1], unital);
    CHECK(r0.homomorphism_ok);
    CHECK(r0.defect_zero());

    Rng rng(47);
    for (int rep = 0; rep < 3; ++rep) {
        LinearMap<Cyc> psi = random_nonequivariant_hom(t0, 1, rng);
        bool invariant = true;
        for (int k = 0; k < g.order; ++k)
            for (BasisIndex b = 0; b < psi.domain()->dim(); ++b)
                if (!(a0.alpha[k].apply(psi.image(b)) == psi.image(b))) invariant = false;
        CHECK_FALSE(invariant);
        AverageResult<Cyc> r = rokhlin_average(a0, t0.rokhlin[1], psi);
        CHECK(r.homomorphism_ok);
        CHECK(r.commutation_ok);
        CHECK(r.defect_zero()); // exact equivariance for genuine actions
    }
}

TEST_CASE("rokhlin averaging on an anomalous tower reports a nonzero defect") {
    GroupTable g = make_named_group("C2");
    AfTower<Cyc> t = build_af_tower<Cyc>(g, standard_cyclic_cocycle(2, 1), 2);
    Rng rng(53);
    LinearMap<Cyc> psi = random_nonequivariant_hom(t, 1, rng);
    AverageResult<Cyc> r = rokhlin_average(t.action_at(1), t.rokhlin[1], psi);
    CHECK(r.homomorphism_ok); // the homomorphism property is exact regardless
    CHECK(r.commutation_ok);
    CHECK_FALSE(r.defect_zero());
}

TEST_CASE("trivialize_cocycle: trivial input, coboundary input, gate") {
    GroupTable g = make_named_group("C2");
    Cochain w = standard_cyclic_cocycle(2, 1);
    AfTower<Cyc> t = build_af_tower<Cyc>(g, w, 3);
    AnomalousAction<Cyc> a = t.action_at(2);
    const RokhlinPartition<Cyc>& part = t.rokhlin[2];

    std::vector<Element<Cyc>> triv(2, Element<Cyc>::unit(a.algebra));
    CHECK(trivialize_cocycle(a, part, triv) == Element<Cyc>::unit(a.algebra));

    Rng rng(61);
    Element<Cyc> wu = random_tower_commuting_unitary(t, 2, rng);
    auto v = coboundary_alpha_cocycle(a, wu);
    Element<Cyc> u = trivialize_cocycle(a, part, v);
    for (int x = 0; x < 2; ++x) CHECK(u * a.alpha[x].apply(u.adjoint()) == v[x]);

    Element<Cyc> p = part.p[0] - part.p[1];
    std::vector<Element<Cyc>> badv(2, p);
    CHECK_THROWS_AS(trivialize_cocycle(a, part, badv), InputError);
}

TEST_CASE("permutation unitaries from standard matrix units") {
    GroupTable g = make_named_group("C2");
    auto alg = MultiMatrixAlgebra::full(2);
    std::vector<std::vector<Element<Cyc>>> e(2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            e[x].push_back(Element<Cyc>::basis(alg, alg->index_of(0, x, y)));
    auto v = permutation_unitary_from_units(g, e);
    Element<Cyc> swap(alg);
    swap.add_term(alg->index_of(0, 1, 0), Cyc::one());
    swap.add_term(alg->index_of(0, 0, 1), Cyc::one());
    CHECK(v[1] == swap);
    CHECK(v[0] == Element<Cyc>::unit(alg));

    // relabeled units give a conjugated representation, still asserted
    std::vector<std::vector<Element<Cyc>>> e2(2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            e2[x].push_back(Element<Cyc>::basis(alg, alg->index_of(0, 1 - x, 1 - y)));
    auto v2 = permutation_unitary_from_units(g, e2);
    CHECK(v2[1].is_unitary());

    std::vector<std::vector<Element<Cyc>>> bad = e;
    bad[0][1] = bad[0][1].scaled_phase(Phase(1, 3));
    CHECK_THROWS_AS(permutation_unitary_from_units(g, bad), InputError);
}

TEST_CASE("left regular representation from units in M_{|G|}") {
    GroupTable g = make_named_group("C3");
    auto alg = MultiMatrixAlgebra::full(3);
    std::vector<std::vector<Element<Cyc>>> e(3);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            e[x].push_back(Element<Cyc>::basis(alg, alg->index_of(0, x, y)));
    auto v = permutation_unitary_from_units(g, e);
    for (int x = 0; x < 3; ++x) {
        Element<Cyc> lam(alg);
        for (int h = 0; h < 3; ++h) lam.add_term(alg->index_of(0, g.mul(x, h), h), Cyc::one());
        CHECK(v[x] == lam);
    }
}

TEST_CASE("twisted matrix units via the fixed-point expectation") {
    for (const auto& name : {"C2", "C3"}) {
        GroupTable g = make_named_group(name);
        int n = g.order;
        AnomalousAction<Cyc> a = regular_action(g, 2);
        auto alg = std::dynamic_pointer_cast<const MultiMatrixAlgebra>(a.algebra);

        // fixed matrix units e'_{g,h} = |G| * E(e_{0,0} (x) e_{g,h})
        LinearMap<Cyc> E = fixed_point_expectation<Cyc>(
            g, std::span<const MonomialMap>(a.alpha.data(), a.alpha.size()));
        std::vector<std::vector<Element<Cyc>>> e(n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                BasisIndex src = alg->index_of(0, 0 * n + x, 0 * n + y);
                e[x].push_back(E.image(src).scaled_rational(Rat(n, 1)));
            }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int k = 0; k < n; ++k) REQUIRE(a.alpha[k].apply(e[x][y]) == e[x][y]);

        // Rokhlin partition p_h = e_{h,h} (x) 1 for the diagonal action
        RokhlinPartition<Cyc> part;
        for (int h = 0; h < n; ++h) {
            Element<Cyc> p(a.algebra);
            for (int z = 0; z < n; ++z)
                p.add_term(alg->index_of(0, h * n + z, h * n + z), Cyc::one());
            part.p.push_back(std::move(p));
        }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) part.designated.push_back(e[x][y]);
        REQUIRE(verify_rokhlin_partition(a, part).valid());

        auto v = permutation_unitary_from_units(g, e);
        Element<Cyc> u = trivialize_cocycle(a, part, v);
        auto f = twist_matrix_units(a, e, u); // asserts equivariance exactly
        CHECK(f[0][0].is_projection());

        // corrupting u breaks the trivialization precondition
        Element<Cyc> u_bad = Element<Cyc>::zero(a.algebra);
        for (int x = 0; x < n; ++x) u_bad = u_bad + v[x] * part.p[(x + 1) % n];
        if (u_bad.is_unitary()) CHECK_THROWS_AS(twist_matrix_units(a, e, u_bad), InputError);
    }
}

TEST_CASE("twist for the trivial group is the identity case") {
    GroupTable triv; // the one-element group
    auto alg = MultiMatrixAlgebra::full(1, "C");
    AnomalousAction<Cyc> a;
    a.group = triv;
    a.algebra = alg;
    a.alpha.assign(1, MonomialMap::identity(alg));
    a.u.assign(1, std::vector<Element<Cyc>>(1, Element<Cyc>::unit(alg)));
    std::vector<std::vector<Element<Cyc>>> e(1);
    e[0].push_back(Element<Cyc>::unit(alg));
    auto f = twist_matrix_units(a, e, Element<Cyc>::unit(alg));
    CHECK(f[0][0] == e[0][0]);
}
