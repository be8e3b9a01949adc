#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "caw/maps.hpp"

using namespace caw;

namespace {

Cyc random_cyc(std::mt19937_64& rng) {
    Cyc c;
    int terms = 1 + rng() % 3;
    for (int i = 0; i < terms; ++i) {
        std::int64_t den = 1 + rng() % 8;
        c.add_term(Phase(static_cast<std::int64_t>(rng() % den), den),
                   Rat(static_cast<std::int64_t>(rng() % 5) - 2, 1 + rng() % 3));
    }
    return c;
}

Element<Cyc> random_element(const AlgebraPtr& alg, std::mt19937_64& rng) {
    Element<Cyc> e(alg);
    for (int i = 0; i < 6; ++i)
        e.add_term(static_cast<BasisIndex>(rng() % alg->dim()), random_cyc(rng));
    return e;
}

} // namespace

TEST_CASE("phase arithmetic") {
    CHECK(Phase(3, 6) == Phase(1, 2));
    CHECK(Phase(5, 4) == Phase(1, 4));
    CHECK(Phase(1, 3) + Phase(1, 3) + Phase(1, 3) == Phase::zero());
    CHECK(-Phase(1, 4) == Phase(3, 4));
    CHECK(Phase::parse("2/8") == Phase(1, 4));
    CHECK(Phase(1, 2).str() == "1/2");
    CHECK(Phase::zero().str() == "0/1");
}

TEST_CASE("cyc roots multiply by adding phases") {
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 50; ++rep) {
        std::int64_t d1 = 1 + rng() % 12, d2 = 1 + rng() % 12;
        Phase p(static_cast<std::int64_t>(rng() % d1), d1);
        Phase q(static_cast<std::int64_t>(rng() % d2), d2);
        CHECK(Cyc::root(p) * Cyc::root(q) == Cyc::root(p + q));
    }
}

TEST_CASE("full root sums vanish for every conductor up to 16") {
    for (int n = 2; n <= 16; ++n) {
        Cyc sum;
        for (int k = 0; k < n; ++k) sum = sum + Cyc::root(Phase(k, n));
        CHECK(sum.is_zero());
    }
}

TEST_CASE("cyc recognizes hidden rationals and roots") {
    Cyc c = Cyc::root(Phase(1, 3)) + Cyc::root(Phase(2, 3));
    auto r = c.as_rational();
    REQUIRE(r.has_value());
    CHECK(*r == Rat(-1, 1));
    Cyc negroot = Cyc::root(Phase(1, 3)).scaled(Rat(-1, 1));
    auto root = negroot.as_root();
    REQUIRE(root.has_value());
    CHECK(*root == Phase(1, 3) + Phase(1, 2));
}

TEST_CASE("element products follow the matrix-unit chain rule") {
    auto m2 = MultiMatrixAlgebra::full(2);
    auto e = [&](int i, int j) { return Element<Cyc>::basis(m2, m2->index_of(0, i, j)); };
    CHECK(e(0, 0) * e(0, 1) == e(0, 1));
    CHECK((e(0, 1) * e(0, 0)).is_zero());
    Element<Cyc> half = Element<Cyc>::basis(m2, m2->index_of(0, 0, 0), Phase(1, 2));
    CHECK(half * half == e(0, 0));
}

TEST_CASE("element product is associative and adjoint is an anti-homomorphism") {
    auto alg = std::make_shared<MultiMatrixAlgebra>(
        std::vector<std::pair<std::string, int>>{{"a", 2}, {"b", 3}});
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        Element<Cyc> a = random_element(alg, rng);
        Element<Cyc> b = random_element(alg, rng);
        Element<Cyc> c = random_element(alg, rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a * b).adjoint() == b.adjoint() * a.adjoint());
        CHECK(a.adjoint().adjoint() == a);
    }
}

TEST_CASE("unitary and projection predicates") {
    auto m2 = MultiMatrixAlgebra::full(2);
    Element<Cyc> unit = Element<Cyc>::unit(m2);
    CHECK(unit.is_unitary());
    CHECK(unit.is_projection());
    Element<Cyc> p = Element<Cyc>::basis(m2, m2->index_of(0, 0, 0));
    CHECK(p.is_projection());
    CHECK_FALSE(p.is_unitary());
    Element<Cyc> diag(m2);
    diag.add_term(m2->index_of(0, 0, 0), Cyc::root(Phase(1, 4)));
    diag.add_term(m2->index_of(0, 1, 1), Cyc::root(Phase(3, 4)));
    CHECK(diag.is_unitary());
    CHECK_FALSE(diag.is_projection());
}

TEST_CASE("monomial map application, composition, star-hom checks") {
    GroupTable c2 = make_named_group("C2");
    auto alg = MultiMatrixAlgebra::functions_on(2);
    MonomialMap id = MonomialMap::identity(alg);
    CHECK(check_star_homomorphism(id, true).ok());
    Element<Cyc> x = Element<Cyc>::basis(alg, alg->index_of(1, 0, 0));
    CHECK(id.apply(x) == x);

    // lambda_G on C(G): delta_k -> delta_{gk}
    std::vector<BasisIndex> target = {alg->index_of(1, 0, 0), alg->index_of(0, 0, 0)};
    MonomialMap lam(alg, alg, target, std::vector<Phase>(2));
    CHECK(check_star_homomorphism(lam, true).ok());
    CHECK(lam.compose(lam) == id); // lambda(g) lambda(h) = lambda(gh) on C2
    CHECK(lam.inverse() == lam);
}

TEST_CASE("a label swap that breaks *-compatibility is rejected") {
    auto m2 = MultiMatrixAlgebra::full(2);
    // swap e_{00} and e_{01}, fix the rest: not a *-homomorphism
    std::vector<BasisIndex> target = {m2->index_of(0, 0, 1), m2->index_of(0, 0, 0),
                                      m2->index_of(0, 1, 0), m2->index_of(0, 1, 1)};
    MonomialMap bad(m2, m2, target, std::vector<Phase>(4));
    CHECK_FALSE(check_star_homomorphism(bad).ok());
}

TEST_CASE("ad of a diagonal phase unitary decorates off-diagonal units") {
    auto m2 = MultiMatrixAlgebra::full(2);
    Element<Cyc> u(m2);
    u.add_term(m2->index_of(0, 0, 0), Cyc::root(Phase(1, 4)));
    u.add_term(m2->index_of(0, 1, 1), Cyc::one());
    auto ad = ad_monomial(u);
    REQUIRE(ad.has_value());
    CHECK(ad->target(m2->index_of(0, 0, 1)) == m2->index_of(0, 0, 1));
    CHECK(ad->phase(m2->index_of(0, 0, 1)) == Phase(1, 4));
    CHECK(ad->phase(m2->index_of(0, 1, 0)) == Phase(3, 4));
    CHECK(ad->phase(m2->index_of(0, 0, 0)) == Phase::zero());
    CHECK(ad_monomial(Element<Cyc>::unit(m2))->compose(*ad) == *ad); // Ad(1) = id
}

TEST_CASE("ad of the left regular representation translates units") {
    GroupTable g = make_named_group("C3");
    auto alg = MultiMatrixAlgebra::full(3);
    // lambda(1) = sum_h e_{1+h, h}
    Element<Cyc> lam(alg);
    for (int h = 0; h < 3; ++h) lam.add_term(alg->index_of(0, g.mul(1, h), h), Cyc::one());
    auto ad = ad_monomial(lam);
    REQUIRE(ad.has_value());
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            CHECK(ad->target(alg->index_of(0, x, y)) ==
                  alg->index_of(0, g.mul(1, x), g.mul(1, y)));
            CHECK(ad->phase(alg->index_of(0, x, y)) == Phase::zero());
        }
}

TEST_CASE("fixed point expectation for Ad(lambda) on B(l^2(C2))") {
    GroupTable g = make_named_group("C2");
    auto alg = MultiMatrixAlgebra::full(2);
    std::vector<MonomialMap> action;
    for (int ge = 0; ge < 2; ++ge) {
        std::vector<BasisIndex> target(4);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                target[alg->index_of(0, x, y)] = alg->index_of(0, g.mul(ge, x), g.mul(ge, y));
        action.push_back(MonomialMap(alg, alg, std::move(target), std::vector<Phase>(4)));
    }
    LinearMap<Cyc> E = fixed_point_expectation<Cyc>(g, action);
    Element<Cyc> expect(alg);
    expect.add_term(alg->index_of(0, 0, 0), Cyc::rational(Rat(1, 2)));
    expect.add_term(alg->index_of(0, 1, 1), Cyc::rational(Rat(1, 2)));
    CHECK(E.image(alg->index_of(0, 0, 0)) == expect);
    // E is idempotent and invariant: E(alpha_g(x)) = E(x)
    for (BasisIndex b = 0; b < alg->dim(); ++b) {
        CHECK(E.apply(E.image(b)) == E.image(b));
        CHECK(E.apply(action[1].apply_basis<Cyc>(b)) == E.image(b));
    }
    // the trivial action averages to the identity
    std::vector<MonomialMap> trivial = {MonomialMap::identity(alg), MonomialMap::identity(alg)};
    LinearMap<Cyc> Et = fixed_point_expectation<Cyc>(g, trivial);
    for (BasisIndex b = 0; b < alg->dim(); ++b)
        CHECK(Et.image(b) == Element<Cyc>::basis(alg, b));
}

TEST_CASE("fixed point expectation rejects anomalous input") {
    GroupTable g = make_named_group("C2");
    auto alg = MultiMatrixAlgebra::functions_on(2);
    // "action" whose nontrivial map has order 4 on phases: not an action
    std::vector<BasisIndex> target = {alg->index_of(1, 0, 0), alg->index_of(0, 0, 0)};
    std::vector<Phase> phase = {Phase(1, 4), Phase::zero()};
    std::vector<MonomialMap> maps = {MonomialMap::identity(alg),
                                     MonomialMap(alg, alg, target, phase)};
    CHECK_THROWS_AS(fixed_point_expectation<Cyc>(g, maps), InputError);
}

TEST_CASE("float backend mirrors exact arithmetic") {
    auto m2 = MultiMatrixAlgebra::full(2);
    Element<Cplx> u(m2);
    u.add_term(m2->index_of(0, 0, 1), ScalarOps<Cplx>::from_phase(Phase(1, 3)));
    u.add_term(m2->index_of(0, 1, 0), ScalarOps<Cplx>::from_phase(Phase(2, 3)));
    CHECK(u.is_unitary());
    CHECK((u * u.adjoint()) == Element<Cplx>::unit(m2));
}

TEST_CASE("element algebra mismatch is an input error") {
    auto m2 = MultiMatrixAlgebra::full(2);
    auto m3 = MultiMatrixAlgebra::full(3);
    Element<Cyc> a = Element<Cyc>::unit(m2);
    Element<Cyc> b = Element<Cyc>::unit(m3);
    CHECK_THROWS_AS(a * b, InputError);
}

TEST_CASE("star homomorphisms preserve unitarity and projections") {
    auto m2 = MultiMatrixAlgebra::full(2);
    GroupTable g = make_named_group("C2");
    std::vector<BasisIndex> target(4);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            target[m2->index_of(0, x, y)] = m2->index_of(0, g.mul(1, x), g.mul(1, y));
    MonomialMap swap(m2, m2, std::move(target), std::vector<Phase>(4));
    REQUIRE(check_star_homomorphism(swap, true).ok());
    std::mt19937_64 rng(9);
    Element<Cyc> diag(m2);
    diag.add_term(m2->index_of(0, 0, 0), Cyc::root(Phase(1, 8)));
    diag.add_term(m2->index_of(0, 1, 1), Cyc::root(Phase(5, 8)));
    CHECK(swap.apply(diag).is_unitary());
    Element<Cyc> p = Element<Cyc>::basis(m2, m2->index_of(0, 1, 1));
    CHECK(swap.apply(p).is_projection());
}
