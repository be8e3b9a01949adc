#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "caw/cochain.hpp"
#include "caw/snf.hpp"

namespace caw {

// Decides solvability of d(eta) = w over Q/Z and returns one solution.
// w must be a cocycle of degree 2 or 3. The decision runs through the Smith
// normal form of the integer differential matrix on normalized cochains.
std::optional<Cochain> solve_coboundary(const Cochain& w);

struct CohomologyResult {
    std::vector<std::int64_t> elementary_divisors; // > 1, divisibility order
    std::vector<Cochain> representatives;          // one generator per divisor
    std::size_t group_order() const {
        std::size_t n = 1;
        for (auto d : elementary_divisors) n *= static_cast<std::size_t>(d);
        return n;
    }
};

// H^degree(G, (1/m)Z/Z) for degree in {2,3}, as elementary divisors plus
// generator cochains with denominator dividing m.
CohomologyResult cohomology_group(const GroupTable& g, int degree, int coeff_order);

// Every class of the computed cohomology group, as one cochain per class
// (all integer combinations of the generators, starting with zero).
std::vector<Cochain> all_class_representatives(const GroupTable& g, int degree, int coeff_order);

bool class_equal(const Cochain& w1, const Cochain& w2);
std::int64_t class_order(const Cochain& w);

struct SubgroupScanEntry {
    std::vector<int> subgroup;
    bool nontrivial = false;
};
struct SubgroupScan {
    std::vector<SubgroupScanEntry> entries;
    bool hypothesis_holds = false; // nontrivial on every subgroup of order > 1
};
SubgroupScan subgroup_nontriviality_scan(const Cochain& w);

// Searches central extensions of g by cyclic kernels Z_m (m <= max_kernel_order,
// built from H^2(g, Z_m) class representatives) for one that trivializes w:
// returns (rho, c) with d c = rho^* w, preferring c that vanishes on the kernel.
std::optional<std::pair<Surjection, Cochain>> find_trivializing_extension(
    const GroupTable& g, const Cochain& w, int max_kernel_order);

// Replaces a (possibly non-normalized) cocycle by a cohomologous normalized
// one; returns the normalized cocycle and the shifting cochain eta with
// result = w - d(eta).
std::pair<Cochain, Cochain> normalize_cocycle(const Cochain& w);

// The integer matrix of the bar differential C^degree -> C^{degree+1} on the
// normalized cochain bases (tuples with no identity coordinate).
BigMatrix differential_matrix(const GroupTable& g, int degree);

} // namespace caw
