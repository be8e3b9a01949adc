#pragma once

#include <random>

#include "caw/tower.hpp"

namespace caw {

using Rng = std::mt19937_64;

// Random normalized 2-cochain on g with denominators dividing max_den.
Cochain random_cochain(const GroupTable& g, int degree, int max_den, Rng& rng);

// Random monomial unitary: per block a random row permutation with random
// phases; entry for the identity is excluded by callers that need v_e = 1.
Element<Cyc> random_monomial_unitary(const std::shared_ptr<const MultiMatrixAlgebra>& alg,
                                     int phase_den, Rng& rng);

// Random unitary on a tower stage that is block diagonal and preserves the
// last tensor coordinate, so it commutes with every u_n(g,h) and with the
// Rokhlin projections.
Element<Cyc> random_tower_commuting_unitary(const AfTower<Cyc>& t, int stage_index, Rng& rng);

// v_g = w alpha_g(w*): an alpha-cocycle whenever w commutes with the u-table
// (checked by the caller via is_alpha_cocycle).
template <class S>
std::vector<Element<S>> coboundary_alpha_cocycle(const AnomalousAction<S>& a,
                                                 const Element<S>& w) {
    std::vector<Element<S>> v;
    for (int g = 0; g < a.group.order; ++g) v.push_back(w * a.alpha[g].apply(w.adjoint()));
    return v;
}

// A seeded non-equivariant unital *-homomorphism into a tower stage: for
// stage 1 a point permutation of C(G), for stage >= 2 the embedding of
// B(l^2 G) into the last tensor leg twisted by a random bijection and
// diagonal phases.
LinearMap<Cyc> random_nonequivariant_hom(const AfTower<Cyc>& t, int stage_index, Rng& rng);

// Block relabeling isomorphism of a tower stage induced by translating the
// block label by s (all blocks have equal dimension).
MonomialMap block_translation_iso(const AfTower<Cyc>& t, int stage_index, int s);

} // namespace caw
