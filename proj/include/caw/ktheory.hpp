#pragma once

#include "caw/actions.hpp"
#include "caw/cohomology.hpp"

namespace caw {

// K_0 of a multi-matrix algebra: Z^s ordered by N^s, order unit = dims.
// K_1 of any finite-dimensional algebra is 0; recorded, never computed.
struct K0Data {
    std::vector<std::string> labels;
    std::vector<std::int64_t> dims;
    friend bool operator==(const K0Data& a, const K0Data& b) { return a.dims == b.dims; }
};

struct K0Map {
    std::vector<std::vector<std::int64_t>> m; // rows: codomain blocks, cols: domain blocks
    friend bool operator==(const K0Map& a, const K0Map& b) = default;
};

K0Data k0_of_algebra(const MultiMatrixAlgebra& a);

K0Map k0_matmul(const K0Map& a, const K0Map& b);

namespace detail {
// Multiplicity of the image of a minimal domain projection in each codomain
// block: the trace of the image element over that block, which must be a
// nonnegative integer for a *-homomorphism.
template <class Image>
K0Map k0_from_images(const MultiMatrixAlgebra& dom, const MultiMatrixAlgebra& cod,
                     Image&& image_of_min_projection) {
    K0Map out;
    out.m.assign(cod.blocks().size(), std::vector<std::int64_t>(dom.blocks().size(), 0));
    for (std::size_t s = 0; s < dom.blocks().size(); ++s) {
        Element<Cyc> img = image_of_min_projection(static_cast<int>(s));
        std::vector<Cyc> trace(cod.blocks().size(), Cyc::zero());
        for (const auto& [idx, v] : img.entries()) {
            auto l = cod.decode(idx);
            if (l.row == l.col) trace[l.block] = trace[l.block] + v;
        }
        for (std::size_t t = 0; t < cod.blocks().size(); ++t) {
            auto r = trace[t].as_rational();
            if (!r || !r->is_integer() || r->num < 0)
                throw InputError("k0_of_hom: map is not a *-homomorphism (bad trace)");
            out.m[t][s] = r->num;
        }
    }
    return out;
}
} // namespace detail

inline K0Map k0_of_hom(const MonomialMap& m) {
    auto dom = std::dynamic_pointer_cast<const MultiMatrixAlgebra>(m.domain());
    auto cod = std::dynamic_pointer_cast<const MultiMatrixAlgebra>(m.codomain());
    if (!dom || !cod) throw InputError("k0_of_hom needs multi-matrix algebras");
    return detail::k0_from_images(*dom, *cod, [&](int s) {
        return m.apply_basis<Cyc>(dom->index_of(s, 0, 0));
    });
}

inline K0Map k0_of_hom(const LinearMap<Cyc>& m) {
    auto dom = std::dynamic_pointer_cast<const MultiMatrixAlgebra>(m.domain());
    auto cod = std::dynamic_pointer_cast<const MultiMatrixAlgebra>(m.codomain());
    if (!dom || !cod) throw InputError("k0_of_hom needs multi-matrix algebras");
    return detail::k0_from_images(*dom, *cod,
                                  [&](int s) { return m.image(dom->index_of(s, 0, 0)); });
}

enum class CompareMode { pointwise, class_level };

// The classifying data compared by the theorem hypotheses, at finite stage:
// the anomaly (pointwise and as a class) and the K_0 action. K_1 is zero on
// both sides by finite-dimensionality. This mirrors the hypothesis side of
// the classification only; no conjugacy is produced.
struct InvariantComparison {
    bool anomaly_pointwise = false;
    bool anomaly_class = false;
    bool k0_comparable = false;
    bool k0_equal = false;
    bool k1_zero_note = true;
    CompareMode mode = CompareMode::class_level;
    bool agree() const {
        bool anomaly_ok = (mode == CompareMode::pointwise) ? anomaly_pointwise : anomaly_class;
        return anomaly_ok && k0_comparable && k0_equal;
    }
};

InvariantComparison compare_invariants(const AnomalousAction<Cyc>& a1,
                                       const AnomalousAction<Cyc>& a2, CompareMode mode,
                                       const std::vector<int>* block_relabel = nullptr);

} // namespace caw
