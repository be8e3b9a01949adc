#pragma once

#include <string>
#include <vector>

#include "caw/phase.hpp"

namespace caw {

// A finite group as an explicit multiplication table. Element 0 is the
// identity; the table is validated (associativity, identity, inverses) on
// construction. All groups here have order <= 16.
struct GroupTable {
    std::string name;
    int order = 1;
    std::vector<std::vector<int>> product; // product[a][b]
    std::vector<int> inverse;              // derived

    static constexpr int identity = 0;
    static constexpr int max_order = 16;

    GroupTable() : product{{0}}, inverse{0} {}
    GroupTable(std::string name, std::vector<std::vector<int>> table);

    int mul(int a, int b) const { return product[a][b]; }
    int inv(int a) const { return inverse[a]; }
    int element_order(int a) const;

    bool same_table(const GroupTable& other) const {
        return order == other.order && product == other.product;
    }
};

GroupTable make_named_group(const std::string& name);
const std::vector<std::string>& named_group_list();

// All subgroups as sorted element-index sets, each exactly once.
std::vector<std::vector<int>> enumerate_subgroups(const GroupTable& g);

// True iff f(xy) = f(x)f(y) for all pairs and f(e) = e.
bool check_homomorphism(const std::vector<int>& f, const GroupTable& a, const GroupTable& b);

// The group structure induced on a subgroup, with the index translation
// back to the ambient group (to_parent[i] = ambient index of element i).
struct SubgroupTable {
    GroupTable table;
    std::vector<int> to_parent;
};
SubgroupTable subgroup_table(const GroupTable& g, const std::vector<int>& elements);

// A surjective homomorphism rho with kernel and a set-theoretic section.
// The section picks the smallest preimage index for each target element,
// so it is deterministic; section[identity] = identity always.
struct Surjection {
    GroupTable source; // Gamma
    GroupTable target; // G
    std::vector<int> map;
    std::vector<int> kernel;  // sorted
    std::vector<int> section; // indexed by target elements
};

Surjection make_surjection(const GroupTable& source, const GroupTable& target,
                           const std::vector<int>& map);

} // namespace caw
