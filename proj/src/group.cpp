#include "caw/group.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace caw {

GroupTable::GroupTable(std::string name_, std::vector<std::vector<int>> table)
    : name(std::move(name_)), order(static_cast<int>(table.size())), product(std::move(table)) {
    if (order < 1 || order > max_order)
        throw InputError("group order " + std::to_string(order) + " out of range [1,16]");
    for (const auto& row : product)
        if (static_cast<int>(row.size()) != order)
            throw InputError("group '" + name + "': product table is not square");
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            if (product[a][b] < 0 || product[a][b] >= order)
                throw InputError("group '" + name + "': table entry out of range");
    for (int a = 0; a < order; ++a)
        if (product[0][a] != a || product[a][0] != a)
            throw InputError("group '" + name + "': element 0 is not a two-sided identity");
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            for (int c = 0; c < order; ++c)
                if (product[product[a][b]][c] != product[a][product[b][c]])
                    throw InputError("group '" + name + "': not associative at (" +
                                     std::to_string(a) + "," + std::to_string(b) + "," +
                                     std::to_string(c) + ")");
    inverse.assign(order, -1);
    for (int a = 0; a < order; ++a) {
        for (int b = 0; b < order; ++b) {
            if (product[a][b] == 0 && product[b][a] == 0) {
                inverse[a] = b;
                break;
            }
        }
        if (inverse[a] < 0)
            throw InputError("group '" + name + "': element " + std::to_string(a) +
                             " has no two-sided inverse");
    }
}

int GroupTable::element_order(int a) const {
    int x = a, n = 1;
    while (x != identity) {
        x = mul(x, a);
        ++n;
    }
    return n;
}

namespace {

GroupTable cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return GroupTable("C" + std::to_string(n), std::move(t));
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b, const std::string& name) {
    int n = a.order * b.order;
    auto enc = [&](int x, int y) { return x * b.order + y; };
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int x1 = 0; x1 < a.order; ++x1)
        for (int y1 = 0; y1 < b.order; ++y1)
            for (int x2 = 0; x2 < a.order; ++x2)
                for (int y2 = 0; y2 < b.order; ++y2)
                    t[enc(x1, y1)][enc(x2, y2)] = enc(a.mul(x1, x2), b.mul(y1, y2));
    return GroupTable(name, std::move(t));
}

GroupTable symmetric3() {
    // permutations of {0,1,2} in lexicographic one-line order; 0 = identity
    std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    auto find = [&](const std::array<int, 3>& p) {
        for (int i = 0; i < 6; ++i)
            if (perms[i] == p) return i;
        return -1;
    };
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            std::array<int, 3> comp; // (p_i after p_j)(x) = p_i(p_j(x))
            for (int x = 0; x < 3; ++x) comp[x] = perms[i][perms[j][x]];
            t[i][j] = find(comp);
        }
    return GroupTable("S3", std::move(t));
}

GroupTable dihedral4() {
    // r^i s^j with i<4, j<2, index i + 4j; s r^k s = r^{-k}
    auto enc = [](int i, int j) { return i + 4 * j; };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int i1 = 0; i1 < 4; ++i1)
        for (int j1 = 0; j1 < 2; ++j1)
            for (int i2 = 0; i2 < 4; ++i2)
                for (int j2 = 0; j2 < 2; ++j2) {
                    int i = (i1 + (j1 ? (4 - i2) % 4 : i2)) % 4;
                    t[enc(i1, j1)][enc(i2, j2)] = enc(i, j1 ^ j2);
                }
    return GroupTable("D4", std::move(t));
}

GroupTable quaternion8() {
    // 0:1, 1:-1, 2:i, 3:-i, 4:j, 5:-j, 6:k, 7:-k
    auto neg = [](int x) { return x ^ 1; };
    std::vector<std::vector<int>> t(8, std::vector<int>(8, -1));
    auto set = [&](int a, int b, int c) { t[a][b] = c; };
    // base quaternion relations on {1,i,j,k}; signs handled below
    int I = 2, J = 4, K = 6;
    std::map<std::pair<int, int>, int> base = {
        {{0, 0}, 0},      {{0, I}, I},      {{0, J}, J},      {{0, K}, K},
        {{I, 0}, I},      {{J, 0}, J},      {{K, 0}, K},
        {{I, I}, neg(0)}, {{J, J}, neg(0)}, {{K, K}, neg(0)},
        {{I, J}, K},      {{J, K}, I},      {{K, I}, J},
        {{J, I}, neg(K)}, {{K, J}, neg(I)}, {{I, K}, neg(J)},
    };
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int ua = a & ~1, ub = b & ~1;
            int r = base.at({ua, ub});
            int sign = (a & 1) ^ (b & 1);
            set(a, b, sign ? neg(r) : r);
        }
    return GroupTable("Q8", std::move(t));
}

} // namespace

const std::vector<std::string>& named_group_list() {
    static const std::vector<std::string> names = {"C2",     "C3",       "C4",   "C5", "C6",
                                                   "C7",     "C8",       "C2xC2", "C2xC2xC2",
                                                   "C4xC2",  "S3",       "D4",   "Q8"};
    return names;
}

GroupTable make_named_group(const std::string& name) {
    if (name.size() == 2 && name[0] == 'C' && name[1] >= '2' && name[1] <= '8')
        return cyclic(name[1] - '0');
    if (name == "C2xC2") return direct_product(cyclic(2), cyclic(2), name);
    if (name == "C2xC2xC2") return direct_product(direct_product(cyclic(2), cyclic(2), "C2xC2"), cyclic(2), name);
    if (name == "C4xC2") return direct_product(cyclic(4), cyclic(2), name);
    if (name == "S3") return symmetric3();
    if (name == "D4") return dihedral4();
    if (name == "Q8") return quaternion8();
    throw InputError("unknown group name '" + name + "'");
}

namespace {

std::vector<int> closure(const GroupTable& g, std::vector<int> gens) {
    std::set<int> seen(gens.begin(), gens.end());
    seen.insert(GroupTable::identity);
    std::vector<int> todo(seen.begin(), seen.end());
    while (!todo.empty()) {
        int x = todo.back();
        todo.pop_back();
        for (int y : std::vector<int>(seen.begin(), seen.end())) {
            for (int z : {g.mul(x, y), g.mul(y, x), g.inv(x)}) {
                if (seen.insert(z).second) todo.push_back(z);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

} // namespace

std::vector<std::vector<int>> enumerate_subgroups(const GroupTable& g) {
    if (g.order > GroupTable::max_order)
        throw InputError("subgroup enumeration bounded to order <= 16");
    // Incremental closure: grow each known subgroup by one extra generator
    // until a fixpoint. Complete for every finite group, unlike a fixed
    // generator-count cutoff.
    std::set<std::vector<int>> subs;
    subs.insert({GroupTable::identity});
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& h : std::vector<std::vector<int>>(subs.begin(), subs.end())) {
            for (int x = 0; x < g.order; ++x) {
                auto gens = h;
                gens.push_back(x);
                auto hx = closure(g, std::move(gens));
                if (subs.insert(hx).second) grew = true;
            }
        }
    }
    return {subs.begin(), subs.end()};
}

bool check_homomorphism(const std::vector<int>& f, const GroupTable& a, const GroupTable& b) {
    if (static_cast<int>(f.size()) != a.order) return false;
    for (int x : f)
        if (x < 0 || x >= b.order) return false;
    if (f[GroupTable::identity] != GroupTable::identity) return false;
    for (int x = 0; x < a.order; ++x)
        for (int y = 0; y < a.order; ++y)
            if (f[a.mul(x, y)] != b.mul(f[x], f[y])) return false;
    return true;
}

SubgroupTable subgroup_table(const GroupTable& g, const std::vector<int>& elements) {
    std::vector<int> elems = elements;
    std::sort(elems.begin(), elems.end());
    if (elems.empty() || elems[0] != GroupTable::identity)
        throw InputError("subgroup must contain the identity");
    std::map<int, int> pos;
    for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
    int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto it = pos.find(g.mul(elems[i], elems[j]));
            if (it == pos.end())
                throw InputError("element set is not closed under the group product");
            t[i][j] = it->second;
        }
    SubgroupTable out{GroupTable(g.name + "-sub" + std::to_string(n), std::move(t)), elems};
    return out;
}

Surjection make_surjection(const GroupTable& source, const GroupTable& target,
                           const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != source.order)
        throw InputError("surjection map must be total on the source");
    for (int x = 0; x < source.order; ++x)
        for (int y = 0; y < source.order; ++y)
            if (map[source.mul(x, y)] != target.mul(map[x], map[y]))
                throw InputError("not a homomorphism at pair (" + std::to_string(x) + "," +
                                 std::to_string(y) + ")");
    if (map[GroupTable::identity] != GroupTable::identity)
        throw InputError("map does not fix the identity");
    std::vector<int> section(target.order, -1);
    for (int x = 0; x < source.order; ++x)
        if (section[map[x]] < 0) section[map[x]] = x; // smallest preimage index
    for (int gidx = 0; gidx < target.order; ++gidx)
        if (section[gidx] < 0)
            throw InputError("map is not onto: element " + std::to_string(gidx) + " missed");
    std::vector<int> kernel;
    for (int x = 0; x < source.order; ++x)
        if (map[x] == GroupTable::identity) kernel.push_back(x);
    return Surjection{source, target, map, std::move(kernel), std::move(section)};
}

} // namespace caw
