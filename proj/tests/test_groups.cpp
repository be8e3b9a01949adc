#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "caw/group.hpp"

using namespace caw;

namespace {

// Independent oracle: a subset is a subgroup iff it contains the identity
// and is closed under product and inverse; enumerate all subsets.
std::set<std::vector<int>> brute_force_subgroups(const GroupTable& g) {
    std::set<std::vector<int>> out;
    for (std::uint32_t mask = 1; mask < (1u << g.order); ++mask) {
        if (!(mask & 1)) continue; // must contain the identity
        std::vector<int> elems;
        for (int i = 0; i < g.order; ++i)
            if (mask & (1u << i)) elems.push_back(i);
        bool closed = true;
        for (int a : elems) {
            if (!(mask & (1u << g.inv(a)))) closed = false;
            for (int b : elems)
                if (!(mask & (1u << g.mul(a, b)))) closed = false;
        }
        if (closed) out.insert(elems);
    }
    return out;
}

} // namespace

TEST_CASE("named groups satisfy the axioms") {
    // construction validates associativity, identity, inverses on all triples
    for (const auto& name : named_group_list()) {
        GroupTable g = make_named_group(name);
        CHECK(g.order >= 2);
        CHECK(g.inv(GroupTable::identity) == GroupTable::identity);
        for (int a = 0; a < g.order; ++a) {
            CHECK(g.inv(g.inv(a)) == a); // involution
        }
    }
    CHECK_THROWS_AS(make_named_group("C9"), InputError);
    CHECK_THROWS_AS(make_named_group("Sym4"), InputError);
}

TEST_CASE("C2 defining table") {
    GroupTable g = make_named_group("C2");
    CHECK(g.order == 2);
    CHECK(g.mul(1, 1) == 0);
}

TEST_CASE("S3 is nonabelian of order 6") {
    GroupTable g = make_named_group("S3");
    CHECK(g.order == 6);
    bool abelian = true;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            if (g.mul(a, b) != g.mul(b, a)) abelian = false;
    CHECK_FALSE(abelian);
}

TEST_CASE("Q8 has a unique element of order 2") {
    GroupTable g = make_named_group("Q8");
    int count = 0;
    for (int a = 0; a < g.order; ++a)
        if (g.element_order(a) == 2) ++count;
    CHECK(count == 1);
}

TEST_CASE("subgroup enumeration against the brute-force oracle") {
    for (const auto& name : {"C2", "C4", "C6", "S3", "D4", "Q8", "C2xC2", "C2xC2xC2"}) {
        GroupTable g = make_named_group(name);
        auto got = enumerate_subgroups(g);
        std::set<std::vector<int>> got_set(got.begin(), got.end());
        CHECK(got_set.size() == got.size()); // no duplicates
        CHECK(got_set == brute_force_subgroups(g));
    }
}

TEST_CASE("subgroup counts for the spec examples") {
    CHECK(enumerate_subgroups(make_named_group("C2")).size() == 2);
    CHECK(enumerate_subgroups(make_named_group("C4")).size() == 3);
    CHECK(enumerate_subgroups(make_named_group("S3")).size() == 6);
}

TEST_CASE("subgroup list is closed under conjugation") {
    for (const auto& name : {"S3", "D4", "Q8"}) {
        GroupTable g = make_named_group(name);
        auto subs = enumerate_subgroups(g);
        std::set<std::vector<int>> set(subs.begin(), subs.end());
        for (const auto& h : subs)
            for (int c = 0; c < g.order; ++c) {
                std::vector<int> conj;
                for (int x : h) conj.push_back(g.mul(g.mul(c, x), g.inv(c)));
                std::sort(conj.begin(), conj.end());
                CHECK(set.count(conj) == 1);
            }
    }
}

TEST_CASE("check_homomorphism basics") {
    GroupTable c4 = make_named_group("C4");
    GroupTable s3 = make_named_group("S3");
    std::vector<int> id = {0, 1, 2, 3};
    CHECK(check_homomorphism(id, c4, c4));
    std::vector<int> to_identity(6, 0);
    CHECK(check_homomorphism(to_identity, s3, s3));
    std::vector<int> shift = {1, 2, 3, 0}; // does not fix the identity
    CHECK_FALSE(check_homomorphism(shift, c4, c4));
}

TEST_CASE("surjection C4 -> C2 (reduction mod 2)") {
    GroupTable c4 = make_named_group("C4");
    GroupTable c2 = make_named_group("C2");
    Surjection rho = make_surjection(c4, c2, {0, 1, 0, 1});
    CHECK(rho.kernel == std::vector<int>{0, 2});
    CHECK(rho.section == std::vector<int>{0, 1});
}

TEST_CASE("surjection C2 -> C2 identity") {
    GroupTable c2 = make_named_group("C2");
    Surjection rho = make_surjection(c2, c2, {0, 1});
    CHECK(rho.kernel == std::vector<int>{0});
}

TEST_CASE("surjection S3 -> C2 (sign)") {
    GroupTable s3 = make_named_group("S3");
    GroupTable c2 = make_named_group("C2");
    // odd permutations are exactly the order-2 elements of S3
    std::vector<int> sign(6);
    for (int a = 0; a < 6; ++a) sign[a] = (s3.element_order(a) == 2) ? 1 : 0;
    Surjection rho = make_surjection(s3, c2, sign);
    CHECK(rho.kernel.size() == 3);
    // the kernel is the cyclic subgroup of order 3
    for (int k : rho.kernel) CHECK((k == 0 || s3.element_order(k) == 3));
    // verify the homomorphism property by enumeration
    CHECK(check_homomorphism(sign, s3, c2));
}

TEST_CASE("surjection rejections name the offending pair") {
    GroupTable c4 = make_named_group("C4");
    GroupTable c2 = make_named_group("C2");
    CHECK_THROWS_AS(make_surjection(c4, c2, {0, 1, 1, 0}), InputError);
    CHECK_THROWS_AS(make_surjection(c4, c2, {0, 0, 0, 0}), InputError); // not onto
    CHECK_THROWS_AS(make_surjection(c4, c2, {0, 1}), InputError);      // not total
}

TEST_CASE("sections compose to the identity and fix e") {
    for (const auto& [gname, tname, map] :
         {std::tuple<std::string, std::string, std::vector<int>>{"C4", "C2", {0, 1, 0, 1}},
          {"C4xC2", "C2", {0, 1, 0, 1, 0, 1, 0, 1}}}) {
        Surjection rho = make_surjection(make_named_group(gname), make_named_group(tname), map);
        CHECK(rho.section[GroupTable::identity] == GroupTable::identity);
        for (int t = 0; t < rho.target.order; ++t) CHECK(rho.map[rho.section[t]] == t);
    }
}

TEST_CASE("subgroup_table validates closure") {
    GroupTable s3 = make_named_group("S3");
    std::vector<int> not_closed = {0, 1};
    bool threw = false;
    try {
        subgroup_table(s3, not_closed);
    } catch (const InputError&) {
        threw = true;
    }
    // {0,1} is closed only if element 1 has order 2; either way the call
    // must produce a valid table or throw
    if (!threw) CHECK(s3.element_order(1) == 2);
}

TEST_CASE("malformed tables are rejected") {
    CHECK_THROWS_AS(GroupTable("bad", {{0, 1}, {1, 1}}), InputError);
    CHECK_THROWS_AS(GroupTable("bad", {{1, 0}, {0, 1}}), InputError);
}
