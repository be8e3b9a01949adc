#include "caw/crossed.hpp"

namespace caw {

TwistedCrossedProduct::TwistedCrossedProduct(std::shared_ptr<const MultiMatrixAlgebra> base,
                                             GroupTable kgroup, std::vector<MonomialMap> pi_kernel,
                                             std::vector<std::vector<Phase>> twist)
    : base_(std::move(base)), k_(std::move(kgroup)), pi_(std::move(pi_kernel)),
      c_(std::move(twist)) {
    if (static_cast<int>(pi_.size()) != k_.order)
        throw InputError("crossed product needs one base automorphism per kernel element");
    if (static_cast<int>(c_.size()) != k_.order)
        throw InputError("crossed product twist must be a K x K table");
    for (const auto& row : c_)
        if (static_cast<int>(row.size()) != k_.order)
            throw InputError("crossed product twist must be a K x K table");
    for (int k = 0; k < k_.order; ++k) {
        if (!check_star_homomorphism(pi_[k], /*require_bijective=*/true).ok())
            throw InputError("crossed product: pi_k is not a *-automorphism");
        pi_inv_.push_back(pi_[k].inverse());
    }
    for (int k = 0; k < k_.order; ++k)
        if (!c_[k][GroupTable::identity].is_zero() || !c_[GroupTable::identity][k].is_zero())
            throw InputError("crossed product twist must be normalized");
    for (BasisIndex b : base_->unit_support()) unit_support_.push_back(index_of(b, 0));
    validate();
}

std::optional<MonomialTerm> TwistedCrossedProduct::mul(BasisIndex a, BasisIndex b) const {
    auto [b1, k] = decode(a);
    auto [b2, l] = decode(b);
    BasisIndex b2m = pi_[k].target(b2);
    auto m = base_->mul(b1, b2m);
    if (!m) return std::nullopt;
    Phase phase = pi_[k].phase(b2) + m->phase - c_[k][l];
    return MonomialTerm{index_of(m->index, k_.mul(k, l)), phase};
}

MonomialTerm TwistedCrossedProduct::adjoint(BasisIndex a) const {
    auto [b, k] = decode(a);
    int ki = k_.inv(k);
    MonomialTerm star = base_->adjoint(b);
    BasisIndex moved = pi_[ki].target(star.index);
    Phase phase = star.phase + pi_[ki].phase(star.index) + c_[k][ki];
    return {index_of(moved, ki), phase};
}

std::uint64_t TwistedCrossedProduct::right_key(BasisIndex a) const {
    auto [b1, k] = decode(a);
    auto l = base_->decode(b1);
    BasisIndex diag = base_->index_of(l.block, l.col, l.col);
    return base_->left_key(pi_inv_[k].target(diag));
}

std::uint64_t TwistedCrossedProduct::left_key(BasisIndex b) const {
    auto [b2, l] = decode(b);
    (void)l;
    return base_->left_key(b2);
}

std::string TwistedCrossedProduct::label(BasisIndex a) const {
    auto [b, k] = decode(a);
    return base_->label(b) + "v" + std::to_string(k);
}

std::string TwistedCrossedProduct::structure_key() const {
    std::string s = "xprod:" + base_->structure_key() + ":k" + std::to_string(k_.order);
    for (int k = 0; k < k_.order; ++k)
        for (int l = 0; l < k_.order; ++l) s += "," + c_[k][l].str();
    return s;
}

void TwistedCrossedProduct::validate() const {
    // involution and unit axioms, then associativity along composable chains
    for (BasisIndex a = 0; a < dim(); ++a) {
        // (e_a*)* = (-s.phase + ss.phase) e_{ss.index} must equal e_a
        MonomialTerm s = adjoint(a);
        MonomialTerm ss = adjoint(s.index);
        if (ss.index != a || !(ss.phase == s.phase))
            throw InvariantViolation("crossed product: adjoint is not an involution");
    }
    for (BasisIndex a = 0; a < dim(); ++a)
        for (BasisIndex b = 0; b < dim(); ++b) {
            auto ab = mul(a, b);
            if (ab && right_key(a) != left_key(b))
                throw InvariantViolation("crossed product: join keys miss a product");
            // (ab)* = b* a*
            MonomialTerm sa = adjoint(a), sb = adjoint(b);
            auto ba = mul(sb.index, sa.index);
            if (static_cast<bool>(ab) != static_cast<bool>(ba))
                throw InvariantViolation("crossed product: involution breaks products");
            if (ab) {
                MonomialTerm sab = adjoint(ab->index);
                if (ba->index != sab.index ||
                    !(sb.phase + sa.phase + ba->phase == ab->phase.conj() + sab.phase))
                    throw InvariantViolation("crossed product: (ab)* != b* a*");
            }
        }
    for (BasisIndex a = 0; a < dim(); ++a)
        for (BasisIndex b = 0; b < dim(); ++b) {
            auto ab = mul(a, b);
            if (!ab) continue;
            for (BasisIndex cidx = 0; cidx < dim(); ++cidx) {
                auto bc = mul(b, cidx);
                auto ab_c = mul(ab->index, cidx);
                auto a_bc = bc ? mul(a, bc->index) : std::nullopt;
                if (static_cast<bool>(ab_c) != static_cast<bool>(a_bc))
                    throw InvariantViolation("crossed product: associativity support mismatch");
                if (ab_c &&
                    !(ab->phase + ab_c->phase == bc->phase + a_bc->phase &&
                      ab_c->index == a_bc->index))
                    throw InvariantViolation("crossed product: associativity fails");
            }
        }
}

JonesConfig jones_regular_config(const GroupTable& gamma, int factors) {
    if (factors < 1 || factors > 2) throw InputError("jones config supports 1 or 2 factors");
    auto m = MultiMatrixAlgebra::full(gamma.order, "B(l2" + gamma.name + ")");
    std::shared_ptr<MultiMatrixAlgebra> base = m;
    if (factors == 2) base = m->tensor(*m);
    JonesConfig cfg;
    cfg.base = base;
    cfg.factors = factors;
    for (int ge = 0; ge < gamma.order; ++ge) {
        std::vector<BasisIndex> target(base->dim());
        std::vector<Phase> phase(base->dim());
        if (factors == 1) {
            for (int x = 0; x < gamma.order; ++x)
                for (int y = 0; y < gamma.order; ++y)
                    target[m->index_of(0, x, y)] =
                        m->index_of(0, gamma.mul(ge, x), gamma.mul(ge, y));
        } else {
            for (BasisIndex i = 0; i < base->dim(); ++i) {
                auto l = base->decode(i);
                int n = gamma.order;
                int x1 = l.row / n, x2 = l.row % n, y1 = l.col / n, y2 = l.col % n;
                target[i] = base->index_of(0, gamma.mul(ge, x1) * n + gamma.mul(ge, x2),
                                           gamma.mul(ge, y1) * n + gamma.mul(ge, y2));
            }
        }
        cfg.pi.push_back(MonomialMap(base, base, std::move(target), std::move(phase)));
    }
    return cfg;
}

namespace {

// Solves Ad(u) = N for a monomial automorphism N by the averaging
// intertwiner T_z = sum_b N(e_b) z e_b^*, stripping coefficient magnitudes
// (per central component the intertwiner is a scalar multiple of a
// unitary). The result is verified exactly before use.
std::optional<Element<Cyc>> solve_inner_unitary(const AlgebraPtr& alg, const MonomialMap& N) {
    auto strip = [&](const Element<Cyc>& w) -> std::optional<Element<Cyc>> {
        Element<Cyc> out(alg);
        for (const auto& [idx, v] : w.entries()) {
            const auto& terms = v.terms();
            if (terms.size() != 1) return std::nullopt;
            Phase p = terms[0].first;
            if (terms[0].second.num < 0) p = p + Phase(1, 2);
            out.add_term(idx, Cyc::root(p));
        }
        return out;
    };

    Element<Cyc> acc(alg);
    for (BasisIndex seed = 0; seed < alg->dim(); ++seed) {
        Element<Cyc> t(alg);
        Element<Cyc> z = Element<Cyc>::basis(alg, seed);
        for (BasisIndex b = 0; b < alg->dim(); ++b)
            t = t + N.apply_basis<Cyc>(b) * z * Element<Cyc>::basis(alg, b).adjoint();
        if (t.structurally_zero()) continue;
        bool overlap = false;
        for (const auto& [idx, v] : t.entries())
            if (acc.coeff(idx)) overlap = true;
        if (overlap) continue;
        auto piece = strip(t);
        if (!piece) continue;
        acc = acc + *piece;
        if (!acc.is_unitary()) continue;
        bool ok = true;
        Element<Cyc> us = acc.adjoint();
        for (BasisIndex b = 0; b < alg->dim() && ok; ++b) {
            if (acc * Element<Cyc>::basis(alg, b) * us != N.apply_basis<Cyc>(b)) ok = false;
        }
        if (ok) return acc;
    }
    return std::nullopt;
}

// Re-expresses an exact element with root-of-unity coefficients in the
// scalar backend S.
template <class S>
Element<S> materialize_roots(const Element<Cyc>& x) {
    Element<S> out(x.algebra());
    for (const auto& [idx, v] : x.entries()) {
        auto root = v.as_root();
        if (!root) throw InvariantViolation("materialize_roots: non-root coefficient");
        out.add_term(idx, ScalarOps<S>::from_phase(*root));
    }
    return out;
}

template <class S>
JonesInduced<S> jones_induce_impl(const JonesConfig& cfg, const Surjection& rho,
                                  const Cochain& c) {
    const GroupTable& gamma = rho.source;
    const GroupTable& G = rho.target;
    if (static_cast<int>(cfg.pi.size()) != gamma.order)
        throw InputError("jones_induce: pi must be indexed by the source group");
    if (!c.group().same_table(gamma) || c.degree() != 2)
        throw InputError("jones_induce: c must be a 2-cochain on the source group");
    if (!c.is_normalized()) throw InputError("jones_induce: c must be normalized");
    // pi must be a genuine action
    if (!(cfg.pi[GroupTable::identity] == MonomialMap::identity(cfg.base)))
        throw InputError("jones_induce: pi_e != id");
    for (int a = 0; a < gamma.order; ++a)
        for (int b = 0; b < gamma.order; ++b)
            if (!(cfg.pi[a].compose(cfg.pi[b]) == cfg.pi[gamma.mul(a, b)]))
                throw InputError("jones_induce: pi is not a group action");

    // omega is determined by dc through the section; dc = rho^* omega is
    // then verified pointwise (this is the precondition of the induction).
    Cochain dc = differential(c);
    Cochain omega(G, 3);
    for (int x = 0; x < G.order; ++x)
        for (int y = 0; y < G.order; ++y)
            for (int z = 0; z < G.order; ++z)
                omega.set(std::array{x, y, z},
                          dc.at(std::array{rho.section[x], rho.section[y], rho.section[z]}));
    if (!(pullback(rho, omega) == dc))
        throw InputError("jones_induce: dc != rho^*(omega) (c does not trivialize a cocycle)");
    if (!omega.is_normalized() || !is_cocycle(omega))
        throw InvariantViolation("jones_induce: induced omega is not a normalized cocycle");

    // kernel data: group table, pi restricted to K, twist c|_K
    SubgroupTable ksub = subgroup_table(gamma, rho.kernel);
    const GroupTable& K = ksub.table;
    std::vector<int> kpos_of(gamma.order, -1);
    for (int i = 0; i < K.order; ++i) kpos_of[ksub.to_parent[i]] = i;
    std::vector<MonomialMap> pik;
    for (int i = 0; i < K.order; ++i) pik.push_back(cfg.pi[ksub.to_parent[i]]);
    std::vector<std::vector<Phase>> twist(K.order, std::vector<Phase>(K.order));
    for (int i = 0; i < K.order; ++i)
        for (int j = 0; j < K.order; ++j)
            twist[i][j] = c(ksub.to_parent[i], ksub.to_parent[j]);
    auto prod =
        std::make_shared<TwistedCrossedProduct>(cfg.base, K, std::move(pik), std::move(twist));

    JonesInduced<S> out;
    out.product = prod;
    out.rho = rho;
    out.omega = omega;

    // theta_g from the model-action formula, transcribed verbatim
    std::vector<MonomialMap> theta;
    for (int ge = 0; ge < G.order; ++ge) {
        int gh = rho.section[ge];
        int ghi = gamma.inv(gh);
        std::vector<BasisIndex> target(prod->dim());
        std::vector<Phase> phase(prod->dim());
        for (BasisIndex i = 0; i < prod->dim(); ++i) {
            auto [b, kpos] = prod->decode(i);
            int kg = ksub.to_parent[kpos];
            int conj_k = gamma.mul(gamma.mul(gh, kg), ghi);
            if (kpos_of[conj_k] < 0)
                throw InvariantViolation("jones_induce: kernel is not normal");
            target[i] = prod->index_of(cfg.pi[gh].target(b), kpos_of[conj_k]);
            phase[i] = c(conj_k, ghi) - c(gh, kg) + cfg.pi[gh].phase(b);
        }
        theta.push_back(MonomialMap(prod, prod, std::move(target), std::move(phase)));
    }

    // u-table: solve Eq (1.1); the (e, g) and (g, e) entries are the unit.
    AnomalousAction<S>& act = out.action;
    act.group = G;
    act.algebra = prod;
    act.alpha = theta;
    act.u.assign(G.order, {});
    Element<S> unit = Element<S>::unit(prod);
    for (int x = 0; x < G.order; ++x)
        for (int y = 0; y < G.order; ++y) {
            if (x == GroupTable::identity || y == GroupTable::identity) {
                act.u[x].push_back(unit);
                continue;
            }
            MonomialMap N =
                theta[x].compose(theta[y]).compose(theta[G.mul(x, y)].inverse());
            auto u = solve_inner_unitary(act.algebra, N);
            if (!u)
                throw InvariantViolation("jones_induce: no implementing unitary at (" +
                                         std::to_string(x) + "," + std::to_string(y) + ")");
            // global phase: least-index coefficient gets phase 0
            auto root = u->entries().front().second.as_root();
            if (root && !root->is_zero()) u = u->scaled_phase(-*root);
            act.u[x].push_back(materialize_roots<S>(*u));
        }

    if constexpr (ScalarOps<S>::exact) {
        out.extracted = extract_anomaly(act);
        out.anomaly_pointwise = (out.extracted == omega);
        out.anomaly_class = class_equal(out.extracted, omega);
    } else {
        out.extracted = omega;
        out.anomaly_pointwise = anomaly_matches(act, omega);
        out.anomaly_class = out.anomaly_pointwise;
    }
    return out;
}

template <class S>
EkRokhlin<S> rokhlin_from_eK_impl(const JonesInduced<S>& ind, const JonesConfig& cfg) {
    const GroupTable& gamma = ind.rho.source;
    const GroupTable& G = ind.rho.target;
    const auto& prod = ind.product;
    auto single = MultiMatrixAlgebra::full(gamma.order, "B");
    // precondition: base is B(l^2 Gamma)^(x)factors with pi = Ad(lambda)
    if (cfg.base->dim() != (cfg.factors == 1 ? single->dim() : single->dim() * single->dim()))
        throw InputError("rokhlin_from_eK: unsupported base shape");
    int n = gamma.order;
    for (int ge = 0; ge < gamma.order; ++ge)
        for (BasisIndex i = 0; i < cfg.base->dim(); ++i) {
            auto l = cfg.base->decode(i);
            bool ok;
            if (cfg.factors == 1) {
                ok = cfg.pi[ge].target(i) ==
                         cfg.base->index_of(0, gamma.mul(ge, l.row), gamma.mul(ge, l.col)) &&
                     cfg.pi[ge].phase(i).is_zero();
            } else {
                int x1 = l.row / n, x2 = l.row % n, y1 = l.col / n, y2 = l.col % n;
                ok = cfg.pi[ge].target(i) ==
                         cfg.base->index_of(0, gamma.mul(ge, x1) * n + gamma.mul(ge, x2),
                                            gamma.mul(ge, y1) * n + gamma.mul(ge, y2)) &&
                     cfg.pi[ge].phase(i).is_zero();
            }
            if (!ok) throw InputError("rokhlin_from_eK: pi is not Ad(lambda_Gamma)");
        }

    EkRokhlin<S> out;
    // p_g = Ad(lambda(ghat))(e_K), e_K in the last tensor factor
    for (int ge = 0; ge < G.order; ++ge) {
        int gh = ind.rho.section[ge];
        Element<S> p(prod);
        if (cfg.factors == 1) {
            for (int k : ind.rho.kernel) {
                int x = gamma.mul(gh, k);
                p.add_term(prod->index_of(cfg.base->index_of(0, x, x), 0), ScalarOps<S>::one());
            }
        } else {
            for (int x1 = 0; x1 < n; ++x1)
                for (int k : ind.rho.kernel) {
                    int x2 = gamma.mul(gh, k);
                    p.add_term(prod->index_of(cfg.base->index_of(0, x1 * n + x2, x1 * n + x2), 0),
                               ScalarOps<S>::one());
                }
        }
        out.partition.p.push_back(std::move(p));
    }
    // designated commutant: the canonical unitaries v_k, plus the image of
    // the first tensor factor in the two-factor variant
    for (int kpos = 0; kpos < prod->kernel_order(); ++kpos)
        out.partition.designated.push_back(prod->template canonical_unitary<S>(prod, kpos));
    if (cfg.factors == 2) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                Element<S> e(prod);
                for (int z = 0; z < n; ++z)
                    e.add_term(prod->index_of(cfg.base->index_of(0, x * n + z, y * n + z), 0),
                               ScalarOps<S>::one());
                out.partition.designated.push_back(std::move(e));
            }
    }
    out.report = verify_rokhlin_partition(ind.action, out.partition);
    return out;
}

} // namespace

JonesInduced<Cyc> jones_induce(const JonesConfig& cfg, const Surjection& rho, const Cochain& c) {
    return jones_induce_impl<Cyc>(cfg, rho, c);
}

JonesInduced<Cplx> jones_induce_float(const JonesConfig& cfg, const Surjection& rho,
                                      const Cochain& c) {
    return jones_induce_impl<Cplx>(cfg, rho, c);
}

EkRokhlin<Cyc> rokhlin_from_eK(const JonesInduced<Cyc>& ind, const JonesConfig& cfg) {
    return rokhlin_from_eK_impl<Cyc>(ind, cfg);
}

EkRokhlin<Cplx> rokhlin_from_eK(const JonesInduced<Cplx>& ind, const JonesConfig& cfg) {
    return rokhlin_from_eK_impl<Cplx>(ind, cfg);
}

} // namespace caw
