#pragma once

#include "caw/actions.hpp"
#include "caw/ktheory.hpp"

namespace caw {

// Stage-n basis bookkeeping for A_n = C(G) (x) B(l^2 G)^(x)(n-1): blocks are
// labeled by group elements k, rows/columns by tuples (x_1..x_{n-1}) encoded
// base |G| with x_1 most significant.
struct StageCoder {
    int order = 1;
    int stage = 1; // n
    StageCoder() = default;
    StageCoder(int order_, int stage_) : order(order_), stage(stage_) {}
    int tuple_count() const {
        int t = 1;
        for (int i = 1; i < stage; ++i) t *= order;
        return t;
    }
    int encode(std::span<const int> xs) const {
        int idx = 0;
        for (int x : xs) idx = idx * order + x;
        return idx;
    }
    void decode(int idx, std::span<int> xs) const {
        for (std::size_t i = xs.size(); i-- > 0;) {
            xs[i] = idx % order;
            idx /= order;
        }
    }
};

// The two-step recursion for the diagonal correction d_n(g), evaluated at
// the label (k; x_1..x_{n-1}; y_1..y_{n-1}), with the convention
// x_0 = y_0 = k. Base cases: d_1 = id and the displayed d_2 formula.
Phase d_recursion_phase(const GroupTable& g, const Cochain& w, int stage, int gelt, int k,
                        std::span<const int> xs, std::span<const int> ys);

// Independent oracle for the same phase: a direct iterative unrolling of the
// recursion, implemented separately from the builder. The builder's theta_n
// must agree with this on every label.
Phase d_n_phase(const GroupTable& g, const Cochain& w, int stage, int gelt, int k,
                std::span<const int> xs, std::span<const int> ys);

template <class S>
struct AfTower {
    GroupTable group;
    Cochain omega;
    int depth = 1;
    std::vector<std::shared_ptr<MultiMatrixAlgebra>> stages; // A_1..A_depth
    std::vector<StageCoder> coders;
    std::vector<LinearMap<S>> connect;                   // phi_n : A_n -> A_{n+1}
    std::vector<std::vector<MonomialMap>> theta;         // [stage][g]
    std::vector<std::vector<std::vector<Element<S>>>> u; // [stage][g][h]
    std::vector<RokhlinPartition<S>> rokhlin;            // [stage]

    AfTower() : omega(GroupTable(), 3) {}

    AnomalousAction<S> action_at(int stage_index) const {
        return AnomalousAction<S>{group, stages[stage_index], theta[stage_index],
                                  u[stage_index]};
    }
};

struct TowerReport {
    std::vector<CheckFailure> failures;
    bool valid() const { return failures.empty(); }
};

inline constexpr std::size_t kDefaultBasisBudget = 100000;

template <class S>
AfTower<S> build_af_tower(const GroupTable& g, const Cochain& w, int depth,
                          std::size_t basis_budget = kDefaultBasisBudget) {
    if (!w.group().same_table(g) || w.degree() != 3)
        throw InputError("build_af_tower needs a 3-cochain on the acting group");
    if (!w.is_normalized() || !is_cocycle(w))
        throw InputError("build_af_tower needs a normalized 3-cocycle");
    if (depth < 1) throw InputError("tower depth must be >= 1");
    {
        std::size_t labels = 1;
        for (int i = 0; i < 2 * depth - 1; ++i) {
            labels *= static_cast<std::size_t>(g.order);
            if (labels > basis_budget)
                throw InputError("tower exceeds the basis budget at depth " +
                                 std::to_string(depth));
        }
    }

    AfTower<S> t;
    t.group = g;
    t.omega = w;
    t.depth = depth;
    const int ord = g.order;

    for (int n = 1; n <= depth; ++n) {
        StageCoder coder(ord, n);
        int td = coder.tuple_count();
        std::vector<std::pair<std::string, int>> blocks;
        for (int k = 0; k < ord; ++k) blocks.push_back({"A" + std::to_string(n) + ".k" + std::to_string(k), td});
        auto alg = std::make_shared<MultiMatrixAlgebra>(std::move(blocks));
        t.stages.push_back(alg);
        t.coders.push_back(coder);

        // theta_n(g) = d_n(g) o theta'_n(g); the diagonal phase is read at
        // the translated label.
        std::vector<MonomialMap> th;
        std::vector<int> xs(n - 1), ys(n - 1), txs(n - 1), tys(n - 1);
        for (int ge = 0; ge < ord; ++ge) {
            std::vector<BasisIndex> target(alg->dim());
            std::vector<Phase> phase(alg->dim());
            for (int k = 0; k < ord; ++k)
                for (int r = 0; r < td; ++r) {
                    coder.decode(r, xs);
                    for (int c = 0; c < td; ++c) {
                        coder.decode(c, ys);
                        int tk = g.mul(ge, k);
                        for (int i = 0; i < n - 1; ++i) {
                            txs[i] = g.mul(ge, xs[i]);
                            tys[i] = g.mul(ge, ys[i]);
                        }
                        BasisIndex src = alg->index_of(k, r, c);
                        target[src] = alg->index_of(tk, coder.encode(txs), coder.encode(tys));
                        phase[src] = d_recursion_phase(g, w, n, ge, tk, txs, tys);
                    }
                }
            th.push_back(MonomialMap(alg, alg, std::move(target), std::move(phase)));
        }
        t.theta.push_back(std::move(th));

        // u_n: stage 1 is u_1(g,h)(k) = w(k^{-1}, g, h); later stages are
        // pushed through the connecting maps below.
        if (n == 1) {
            std::vector<std::vector<Element<S>>> uu(ord);
            for (int x = 0; x < ord; ++x)
                for (int y = 0; y < ord; ++y) {
                    Element<S> e(alg);
                    for (int k = 0; k < ord; ++k)
                        e.add_term(alg->index_of(k, 0, 0),
                                   ScalarOps<S>::from_phase(w(g.inv(k), x, y)));
                    uu[x].push_back(std::move(e));
                }
            t.u.push_back(std::move(uu));
        }

        // Rokhlin projections p_g = delta_g (x) 1, central in A_n.
        RokhlinPartition<S> part;
        part.check_central_in_algebra = true;
        for (int k = 0; k < ord; ++k) {
            Element<S> p(alg);
            for (int r = 0; r < td; ++r)
                p.add_term(alg->index_of(k, r, r), ScalarOps<S>::one());
            part.p.push_back(std::move(p));
        }
        t.rokhlin.push_back(std::move(part));
    }

    // phi_n(f (x) T) = 1 (x) M_f (x) T: prepend the block label to the
    // row/column tuples, one copy in every block of A_{n+1}.
    for (int n = 1; n < depth; ++n) {
        const auto& dom = t.stages[n - 1];
        const auto& cod = t.stages[n];
        StageCoder dc = t.coders[n - 1], cc = t.coders[n];
        std::vector<Element<S>> images;
        images.reserve(dom->dim());
        std::vector<int> xs(n - 1), ys(n - 1), cxs(n), cys(n);
        for (int k = 0; k < ord; ++k)
            for (int r = 0; r < dc.tuple_count(); ++r)
                for (int c = 0; c < dc.tuple_count(); ++c) {
                    dc.decode(r, xs);
                    dc.decode(c, ys);
                    cxs[0] = k;
                    cys[0] = k;
                    std::copy(xs.begin(), xs.end(), cxs.begin() + 1);
                    std::copy(ys.begin(), ys.end(), cys.begin() + 1);
                    Element<S> img(cod);
                    for (int b = 0; b < ord; ++b)
                        img.add_term(cod->index_of(b, cc.encode(cxs), cc.encode(cys)),
                                     ScalarOps<S>::one());
                    images.push_back(std::move(img));
                }
        t.connect.push_back(LinearMap<S>(dom, cod, std::move(images)));
        std::vector<std::vector<Element<S>>> uu(ord);
        for (int x = 0; x < ord; ++x)
            for (int y = 0; y < ord; ++y)
                uu[x].push_back(t.connect[n - 1].apply(t.u[n - 1][x][y]));
        t.u.push_back(std::move(uu));
    }
    return t;
}

// Exhaustive exact verification of a built tower: the four construction
// conditions, the anomaly, the Rokhlin partitions, the connecting maps
// (unital injective, all-ones Bratteli data) and the agreement of the
// builder's diagonal phases with the independent d_n oracle.
template <class S>
TowerReport verify_tower(const AfTower<S>& t) {
    TowerReport rep;
    const GroupTable& g = t.group;
    const int ord = g.order;
    auto fail = [&](int stage, const std::string& check, std::vector<int> tuple,
                    const std::string& detail) {
        tuple.insert(tuple.begin(), stage);
        rep.failures.push_back({check, std::move(tuple), detail});
    };

    for (int n = 1; n <= t.depth; ++n) {
        AnomalousAction<S> act = t.action_at(n - 1);
        ActionReport v = validate_action(act);
        for (const auto& f : v.failures) fail(n, "stage_" + f.check, f.tuple, f.detail);
        if (!anomaly_matches(act, t.omega)) fail(n, "anomaly", {}, "extract_anomaly != omega");
        ActionReport rok = verify_rokhlin_partition(act, t.rokhlin[n - 1]);
        for (const auto& f : rok.failures) fail(n, "rokhlin_" + f.check, f.tuple, f.detail);

        // oracle agreement on every label
        const auto& alg = t.stages[n - 1];
        StageCoder coder = t.coders[n - 1];
        std::vector<int> xs(n - 1), ys(n - 1);
        for (int ge = 0; ge < ord; ++ge) {
            const MonomialMap& th = t.theta[n - 1][ge];
            bool ok = true;
            for (BasisIndex b = 0; b < alg->dim() && ok; ++b) {
                auto l = alg->decode(th.target(b));
                coder.decode(l.row, xs);
                coder.decode(l.col, ys);
                if (th.phase(b) != d_n_phase(g, t.omega, n, ge, l.block, xs, ys)) {
                    fail(n, "d_oracle", {ge, static_cast<int>(b)},
                         "builder phase disagrees with d_n oracle");
                    ok = false;
                }
            }
        }

        if (n >= t.depth) continue;
        const LinearMap<S>& phi = t.connect[n - 1];
        StarHomReport hom = check_star_homomorphism(phi);
        if (!hom.ok()) fail(n, "phi_homomorphism", {}, hom.failures.front().what);
        // Bratteli data: all-ones multiplicity (unital, injective, complete bipartite)
        if constexpr (ScalarOps<S>::exact) {
            K0Map mult = k0_of_hom(phi);
            for (const auto& row : mult.m)
                for (std::int64_t e : row)
                    if (e != 1) fail(n, "phi_bratteli", {}, "multiplicity matrix is not all-ones");
        }
        for (int x = 0; x < ord; ++x)
            for (int y = 0; y < ord; ++y)
                if (phi.apply(t.u[n - 1][x][y]) != t.u[n][x][y])
                    fail(n, "condition3", {x, y}, "phi(u_n) != u_{n+1}");
        for (int ge = 0; ge < ord; ++ge) {
            const MonomialMap& thn = t.theta[n - 1][ge];
            const MonomialMap& thn1 = t.theta[n][ge];
            bool ok = true;
            for (BasisIndex b = 0; b < t.stages[n - 1]->dim() && ok; ++b) {
                Element<S> lhs = phi.apply(thn.template apply_basis<S>(b));
                Element<S> rhs = thn1.apply(phi.image(b));
                if (lhs != rhs) {
                    fail(n, "condition4", {ge, static_cast<int>(b)},
                         "phi o theta_n != theta_{n+1} o phi");
                    ok = false;
                }
            }
        }
    }
    return rep;
}

} // namespace caw
