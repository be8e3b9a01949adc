#include "caw/ktheory.hpp"

namespace caw {

K0Data k0_of_algebra(const MultiMatrixAlgebra& a) {
    K0Data out;
    for (const auto& b : a.blocks()) {
        out.labels.push_back(b.name);
        out.dims.push_back(b.dim);
    }
    return out;
}

K0Map k0_matmul(const K0Map& a, const K0Map& b) {
    std::size_t n = a.m.size(), k = b.m.size(), p = k ? b.m[0].size() : 0;
    K0Map out;
    out.m.assign(n, std::vector<std::int64_t>(p, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t l = 0; l < p; ++l) out.m[i][l] += a.m[i][j] * b.m[j][l];
    return out;
}

InvariantComparison compare_invariants(const AnomalousAction<Cyc>& a1,
                                       const AnomalousAction<Cyc>& a2, CompareMode mode,
                                       const std::vector<int>* block_relabel) {
    if (!a1.group.same_table(a2.group)) throw InputError("compare_invariants: group mismatch");
    InvariantComparison out;
    out.mode = mode;
    Cochain w1 = extract_anomaly(a1), w2 = extract_anomaly(a2);
    out.anomaly_pointwise = (w1 == w2);
    out.anomaly_class = class_equal(w1, w2);

    auto m1 = std::dynamic_pointer_cast<const MultiMatrixAlgebra>(a1.algebra);
    auto m2 = std::dynamic_pointer_cast<const MultiMatrixAlgebra>(a2.algebra);
    if (m1 && m2) {
        K0Data d1 = k0_of_algebra(*m1), d2 = k0_of_algebra(*m2);
        std::vector<int> perm;
        if (block_relabel) {
            perm = *block_relabel;
        } else {
            perm.resize(d2.dims.size());
            for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        }
        if (d1.dims.size() == d2.dims.size()) {
            K0Data d2p;
            for (int i : perm) d2p.dims.push_back(d2.dims[i]);
            out.k0_comparable = (d1 == d2p);
        }
        if (out.k0_comparable) {
            // conjugate the second action's K0 matrices by the relabeling
            K0Map P;
            P.m.assign(perm.size(), std::vector<std::int64_t>(perm.size(), 0));
            for (std::size_t i = 0; i < perm.size(); ++i) P.m[i][perm[i]] = 1;
            K0Map Pinv;
            Pinv.m.assign(perm.size(), std::vector<std::int64_t>(perm.size(), 0));
            for (std::size_t i = 0; i < perm.size(); ++i) Pinv.m[perm[i]][i] = 1;
            out.k0_equal = true;
            for (int g = 0; g < a1.group.order; ++g) {
                K0Map lhs = k0_of_hom(a1.alpha[g]);
                K0Map rhs = k0_matmul(P, k0_matmul(k0_of_hom(a2.alpha[g]), Pinv));
                if (!(lhs == rhs)) out.k0_equal = false;
            }
        }
    }
    return out;
}

} // namespace caw
