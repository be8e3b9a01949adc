#include "caw/sweeps.hpp"

#include <numeric>

namespace caw {

Cochain random_cochain(const GroupTable& g, int degree, int max_den, Rng& rng) {
    Cochain c(g, degree);
    std::vector<int> args(degree);
    for (std::size_t idx = 0; idx < c.table_size(); ++idx) {
        c.decode(idx, args);
        bool skip = false;
        for (int a : args) skip |= (a == GroupTable::identity);
        if (skip) continue;
        std::int64_t den = 1 + static_cast<std::int64_t>(rng() % max_den);
        c.set(args, Phase(static_cast<std::int64_t>(rng() % den), den));
    }
    return c;
}

Element<Cyc> random_monomial_unitary(const std::shared_ptr<const MultiMatrixAlgebra>& alg,
                                     int phase_den, Rng& rng) {
    Element<Cyc> u(alg);
    for (std::size_t s = 0; s < alg->blocks().size(); ++s) {
        int d = alg->block_dim(static_cast<int>(s));
        std::vector<int> perm(d);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = d - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
        for (int i = 0; i < d; ++i) {
            Phase p(static_cast<std::int64_t>(rng() % phase_den), phase_den);
            u.add_term(alg->index_of(static_cast<int>(s), perm[i], i), Cyc::root(p));
        }
    }
    return u;
}

Element<Cyc> random_tower_commuting_unitary(const AfTower<Cyc>& t, int stage_index, Rng& rng) {
    const auto& alg = t.stages[stage_index];
    StageCoder coder = t.coders[stage_index];
    int n = coder.stage;
    int ord = t.group.order;
    Element<Cyc> u(alg);
    if (n == 1) {
        // C(G): diagonal phases
        for (int k = 0; k < ord; ++k) {
            Phase p(static_cast<std::int64_t>(rng() % (2 * ord)), 2 * ord);
            u.add_term(alg->index_of(k, 0, 0), Cyc::root(p));
        }
        return u;
    }
    // permute row tuples within a fixed last coordinate, per block
    int prefix = 1;
    for (int i = 1; i < n - 1; ++i) prefix *= ord;
    std::vector<int> xs(n - 1);
    for (int k = 0; k < ord; ++k)
        for (int last = 0; last < ord; ++last) {
            std::vector<int> perm(prefix);
            std::iota(perm.begin(), perm.end(), 0);
            for (int i = prefix - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
            for (int i = 0; i < prefix; ++i) {
                int row = perm[i] * ord + last;
                int col = i * ord + last;
                Phase p(static_cast<std::int64_t>(rng() % (2 * ord)), 2 * ord);
                u.add_term(alg->index_of(k, row, col), Cyc::root(p));
            }
        }
    return u;
}

LinearMap<Cyc> random_nonequivariant_hom(const AfTower<Cyc>& t, int stage_index, Rng& rng) {
    const auto& alg = t.stages[stage_index];
    StageCoder coder = t.coders[stage_index];
    int n = coder.stage;
    int ord = t.group.order;
    if (n == 1) {
        auto dom = MultiMatrixAlgebra::functions_on(ord);
        std::vector<int> perm(ord);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = ord - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
        std::vector<Element<Cyc>> images;
        for (int k = 0; k < ord; ++k)
            images.push_back(Element<Cyc>::basis(alg, alg->index_of(perm[k], 0, 0)));
        return LinearMap<Cyc>(dom, alg, std::move(images));
    }
    auto dom = MultiMatrixAlgebra::full(ord, "psiM");
    std::vector<int> sigma(ord);
    std::iota(sigma.begin(), sigma.end(), 0);
    for (int i = ord - 1; i > 0; --i) std::swap(sigma[i], sigma[rng() % (i + 1)]);
    std::vector<Phase> chi(ord);
    for (int i = 0; i < ord; ++i)
        chi[i] = Phase(static_cast<std::int64_t>(rng() % (2 * ord)), 2 * ord);
    int prefix = 1;
    for (int i = 1; i < n - 1; ++i) prefix *= ord;
    std::vector<Element<Cyc>> images;
    for (int x = 0; x < ord; ++x)
        for (int y = 0; y < ord; ++y) {
            Element<Cyc> img(alg);
            Phase p = chi[x] - chi[y];
            for (int k = 0; k < ord; ++k)
                for (int mid = 0; mid < prefix; ++mid)
                    img.add_term(alg->index_of(k, mid * ord + sigma[x], mid * ord + sigma[y]),
                                 Cyc::root(p));
            images.push_back(std::move(img));
        }
    return LinearMap<Cyc>(dom, alg, std::move(images));
}

MonomialMap block_translation_iso(const AfTower<Cyc>& t, int stage_index, int s) {
    const auto& alg = t.stages[stage_index];
    const GroupTable& g = t.group;
    StageCoder coder = t.coders[stage_index];
    int td = coder.tuple_count();
    std::vector<BasisIndex> target(alg->dim());
    std::vector<Phase> phase(alg->dim());
    for (int k = 0; k < g.order; ++k)
        for (int r = 0; r < td; ++r)
            for (int c = 0; c < td; ++c)
                target[alg->index_of(k, r, c)] = alg->index_of(g.mul(s, k), r, c);
    return MonomialMap(alg, alg, std::move(target), std::move(phase));
}

} // namespace caw
