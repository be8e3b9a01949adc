#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caw/sweeps.hpp"

using namespace caw;

TEST_CASE("k0 of algebras") {
    auto m2 = MultiMatrixAlgebra::full(2);
    K0Data d = k0_of_algebra(*m2);
    CHECK(d.dims == std::vector<std::int64_t>{2});

    auto cg = MultiMatrixAlgebra::functions_on(5);
    K0Data dc = k0_of_algebra(*cg);
    CHECK(dc.dims == std::vector<std::int64_t>(5, 1));

    GroupTable g = make_named_group("C2");
    AfTower<Cyc> t = build_af_tower<Cyc>(g, standard_cyclic_cocycle(2, 1), 2);
    K0Data d2 = k0_of_algebra(*t.stages[1]);
    CHECK(d2.dims == std::vector<std::int64_t>{2, 2});
}

TEST_CASE("k0 of homomorphisms: identity, connecting map, theta") {
    GroupTable g = make_named_group("C3");
    AfTower<Cyc> t = build_af_tower<Cyc>(g, standard_cyclic_cocycle(3, 1), 2);
    K0Map id = k0_of_hom(MonomialMap::identity(t.stages[0]));
    for (std::size_t i = 0; i < id.m.size(); ++i)
        for (std::size_t j = 0; j < id.m[i].size(); ++j)
            CHECK(id.m[i][j] == (i == j ? 1 : 0));

    K0Map phi = k0_of_hom(t.connect[0]);
    for (const auto& row : phi.m)
        for (auto e : row) CHECK(e == 1); // all-ones multiplicity

    // theta_n(g) permutes the blocks by left translation
    K0Map th = k0_of_hom(t.theta[1][1]);
    for (int b = 0; b < 3; ++b)
        for (int bb = 0; bb < 3; ++bb)
            CHECK(th.m[bb][b] == (bb == g.mul(1, b) ? 1 : 0));
}

TEST_CASE("functoriality and order units on sampled maps") {
    GroupTable g = make_named_group("C4");
    AfTower<Cyc> t = build_af_tower<Cyc>(g, standard_cyclic_cocycle(4, 1), 2);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            K0Map lhs = k0_of_hom(t.theta[1][a].compose(t.theta[1][b]));
            K0Map rhs = k0_matmul(k0_of_hom(t.theta[1][a]), k0_of_hom(t.theta[1][b]));
            CHECK(lhs == rhs);
        }
    // unital homs send the order unit to the order unit
    K0Map phi = k0_of_hom(t.connect[0]);
    K0Data dom = k0_of_algebra(*t.stages[0]), cod = k0_of_algebra(*t.stages[1]);
    for (std::size_t i = 0; i < cod.dims.size(); ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < dom.dims.size(); ++j) acc += phi.m[i][j] * dom.dims[j];
        CHECK(acc == cod.dims[i]);
    }
}

TEST_CASE("tower intertwining: the all-ones matrix absorbs block permutations") {
    GroupTable g = make_named_group("C3");
    AfTower<Cyc> t = build_af_tower<Cyc>(g, standard_cyclic_cocycle(3, 2), 3);
    for (int n = 0; n + 1 < t.depth; ++n) {
        K0Map phi = k0_of_hom(t.connect[n]);
        for (int ge = 0; ge < g.order; ++ge)
            CHECK(k0_matmul(phi, k0_of_hom(t.theta[n][ge])) == phi);
    }
}

TEST_CASE("invariant comparison distinguishes C4 classes by anomaly only") {
    GroupTable g = make_named_group("C4");
    AfTower<Cyc> t1 = build_af_tower<Cyc>(g, standard_cyclic_cocycle(4, 1), 2);
    AfTower<Cyc> t2 = build_af_tower<Cyc>(g, standard_cyclic_cocycle(4, 2), 2);
    InvariantComparison cmp =
        compare_invariants(t1.action_at(1), t2.action_at(1), CompareMode::class_level);
    CHECK(cmp.k0_comparable);
    CHECK(cmp.k0_equal); // identical K0 data
    CHECK_FALSE(cmp.anomaly_class);
    CHECK_FALSE(cmp.agree());
}

TEST_CASE("invariants agree for a unitary perturbation") {
    GroupTable g = make_named_group("C2");
    AfTower<Cyc> t = build_af_tower<Cyc>(g, standard_cyclic_cocycle(2, 1), 2);
    AnomalousAction<Cyc> a = t.action_at(1);
    Rng rng(9);
    std::vector<Element<Cyc>> v = {
        Element<Cyc>::unit(a.algebra),
        random_monomial_unitary(std::dynamic_pointer_cast<const MultiMatrixAlgebra>(a.algebra),
                                4, rng)};
    // block-preserving perturbations keep the K0 action
    AnomalousAction<Cyc> b = unitary_perturbation(a, v);
    InvariantComparison cmp = compare_invariants(a, b, CompareMode::pointwise);
    CHECK(cmp.anomaly_pointwise);
    CHECK(cmp.k0_equal);
    CHECK(cmp.agree());
}

TEST_CASE("matched stages of towers of different depth agree") {
    GroupTable g = make_named_group("C3");
    AfTower<Cyc> t1 = build_af_tower<Cyc>(g, standard_cyclic_cocycle(3, 1), 2);
    AfTower<Cyc> t2 = build_af_tower<Cyc>(g, standard_cyclic_cocycle(3, 1), 3);
    InvariantComparison cmp =
        compare_invariants(t1.action_at(1), t2.action_at(1), CompareMode::pointwise);
    CHECK(cmp.agree());
}

TEST_CASE("cocycle conjugacy implies agreeing invariants") {
    GroupTable g = make_named_group("C2");
    AfTower<Cyc> t = build_af_tower<Cyc>(g, standard_cyclic_cocycle(2, 1), 2);
    AnomalousAction<Cyc> a = t.action_at(1);
    Rng rng(15);
    std::vector<Element<Cyc>> s = {
        Element<Cyc>::unit(a.algebra),
        random_monomial_unitary(std::dynamic_pointer_cast<const MultiMatrixAlgebra>(a.algebra),
                                4, rng)};
    MonomialMap theta = block_translation_iso(t, 1, 1);
    AnomalousAction<Cyc> b = conjugate_action(unitary_perturbation(a, s), theta);
    REQUIRE(verify_cocycle_conjugacy(a, b, ConjugacyWitness<Cyc>{s, theta}));
    // block translation relabels K0; compare through the matching relabeling
    std::vector<int> perm = {1, 0};
    InvariantComparison cmp =
        compare_invariants(a, b, CompareMode::class_level, &perm);
    CHECK(cmp.agree());
}

TEST_CASE("group mismatch is an input error") {
    AfTower<Cyc> t2 =
        build_af_tower<Cyc>(make_named_group("C2"), standard_cyclic_cocycle(2, 1), 2);
    AfTower<Cyc> t3 =
        build_af_tower<Cyc>(make_named_group("C3"), standard_cyclic_cocycle(3, 1), 2);
    CHECK_THROWS_AS(
        compare_invariants(t2.action_at(1), t3.action_at(1), CompareMode::class_level),
        InputError);
}
