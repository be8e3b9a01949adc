#pragma once

#include "caw/actions.hpp"
#include "caw/cohomology.hpp"

namespace caw {

// The twisted crossed product B x|_{pi, conj(c)} K presented by structure
// constants on the basis (b, k) ~ e_b v_k:
//   (a v_k)(b v_l) = a pi_k(b) conj(c(k,l)) v_{kl},
//   (a v_k)^*      = c(k,k^{-1}) pi_{k^{-1}}(a^*) v_{k^{-1}},
// so the canonical unitaries obey v_k v_l = conj(c(k,l)) v_{kl}.
// Associativity and the involution axioms are asserted at construction.
class TwistedCrossedProduct final : public BasisAlgebra {
  public:
    TwistedCrossedProduct(std::shared_ptr<const MultiMatrixAlgebra> base, GroupTable kgroup,
                          std::vector<MonomialMap> pi_kernel,
                          std::vector<std::vector<Phase>> twist);

    const std::shared_ptr<const MultiMatrixAlgebra>& base() const { return base_; }
    const GroupTable& kernel_group() const { return k_; }
    int kernel_order() const { return k_.order; }

    BasisIndex index_of(BasisIndex b, int kpos) const {
        return static_cast<BasisIndex>(static_cast<std::size_t>(b) * k_.order + kpos);
    }
    std::pair<BasisIndex, int> decode(BasisIndex i) const {
        return {static_cast<BasisIndex>(i / k_.order), static_cast<int>(i % k_.order)};
    }

    std::size_t dim() const override { return base_->dim() * k_.order; }
    std::optional<MonomialTerm> mul(BasisIndex a, BasisIndex b) const override;
    MonomialTerm adjoint(BasisIndex a) const override;
    const std::vector<BasisIndex>& unit_support() const override { return unit_support_; }
    std::uint64_t right_key(BasisIndex a) const override;
    std::uint64_t left_key(BasisIndex b) const override;
    std::string label(BasisIndex a) const override;
    std::string structure_key() const override;

    template <class S>
    Element<S> canonical_unitary(std::shared_ptr<const TwistedCrossedProduct> self,
                                 int kpos) const {
        Element<S> v(std::move(self));
        for (BasisIndex b : base_->unit_support()) v.add_term(index_of(b, kpos), ScalarOps<S>::one());
        return v;
    }
    // Embeds a base element as b v_e.
    template <class S>
    Element<S> embed(std::shared_ptr<const TwistedCrossedProduct> self,
                     const Element<S>& x) const {
        Element<S> out(std::move(self));
        for (const auto& [idx, v] : x.entries()) out.add_term(index_of(idx, 0), v);
        return out;
    }

  private:
    void validate() const;

    std::shared_ptr<const MultiMatrixAlgebra> base_;
    GroupTable k_;
    std::vector<MonomialMap> pi_;     // per kernel position, on the base
    std::vector<MonomialMap> pi_inv_; // inverses
    std::vector<std::vector<Phase>> c_;
    std::vector<BasisIndex> unit_support_;
};

// The (B, pi) configuration fed into the induction: B = B(l^2 Gamma)^(x) n
// with pi = Ad(lambda_Gamma)^(x) n, n = 1 or 2 tensor factors.
struct JonesConfig {
    std::shared_ptr<MultiMatrixAlgebra> base;
    std::vector<MonomialMap> pi; // per Gamma element
    int factors = 1;
};
JonesConfig jones_regular_config(const GroupTable& gamma, int factors = 1);

template <class S>
struct JonesInduced {
    AnomalousAction<S> action;
    std::shared_ptr<const TwistedCrossedProduct> product;
    Surjection rho;
    Cochain omega;     // induced from dc through the section
    Cochain extracted; // the anomaly of the constructed action
    bool anomaly_pointwise = false;
    bool anomaly_class = false;
};

// The model-action induction: theta_g(a v_k) =
//   c(gkg^{-1}, g^{-1}) conj(c(g, k)) pi_g(a) v_{g k g^{-1}}  (hats omitted),
// with the section stored in rho. The u-table is solved from Eq (1.1) as the
// monomial unitary intertwining theta_g theta_h and theta_{gh}, normalized
// so u_{e,g} = u_{g,e} = 1 and the least-index coefficient has phase 0.
JonesInduced<Cyc> jones_induce(const JonesConfig& cfg, const Surjection& rho, const Cochain& c);

// Same construction on the float backend (for backend-agreement runs).
JonesInduced<Cplx> jones_induce_float(const JonesConfig& cfg, const Surjection& rho,
                                      const Cochain& c);

// Rokhlin projections from e_K: p_g = Ad(lambda(ghat))(e_K) placed in the
// last tensor factor of B. Verifies the partition, theta-equivariance,
// [p_g, v_k] = 0, and (with two factors) commutation with the first factor.
template <class S>
struct EkRokhlin {
    RokhlinPartition<S> partition;
    ActionReport report;
};
EkRokhlin<Cyc> rokhlin_from_eK(const JonesInduced<Cyc>& ind, const JonesConfig& cfg);
EkRokhlin<Cplx> rokhlin_from_eK(const JonesInduced<Cplx>& ind, const JonesConfig& cfg);

} // namespace caw
