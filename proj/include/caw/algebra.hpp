#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "caw/cyc.hpp"
#include "caw/phase.hpp"

namespace caw {

using BasisIndex = std::uint32_t;

struct MonomialTerm {
    BasisIndex index;
    Phase phase;
};

// A finite *-algebra presented by monomial structure data: products and
// adjoints of basis elements are single phase-scaled basis elements (or
// zero), and the unit is a 0-phase sum of basis elements. Both the
// multi-matrix algebras and the twisted crossed products take this shape.
class BasisAlgebra {
  public:
    virtual ~BasisAlgebra() = default;

    virtual std::size_t dim() const = 0;
    virtual std::optional<MonomialTerm> mul(BasisIndex a, BasisIndex b) const = 0;
    virtual MonomialTerm adjoint(BasisIndex a) const = 0;
    virtual const std::vector<BasisIndex>& unit_support() const = 0;

    // mul(a, b) can be nonzero only if right_key(a) == left_key(b).
    virtual std::uint64_t right_key(BasisIndex a) const = 0;
    virtual std::uint64_t left_key(BasisIndex b) const = 0;

    virtual std::string label(BasisIndex a) const = 0;
    // Structural identity; algebras with equal keys are interchangeable.
    virtual std::string structure_key() const = 0;

    bool same_as(const BasisAlgebra& other) const {
        return this == &other || structure_key() == other.structure_key();
    }

    // Buckets of basis indices sharing a left key; used for sparse products
    // and for enumerating composable pairs without an O(dim^2) sweep.
    const std::unordered_map<std::uint64_t, std::vector<BasisIndex>>& left_buckets() const {
        if (left_buckets_.empty() && dim() > 0) {
            for (BasisIndex b = 0; b < dim(); ++b)
                left_buckets_[left_key(b)].push_back(b);
        }
        return left_buckets_;
    }

    void for_each_composable(const std::function<void(BasisIndex, BasisIndex)>& fn) const {
        const auto& buckets = left_buckets();
        for (BasisIndex a = 0; a < dim(); ++a) {
            auto it = buckets.find(right_key(a));
            if (it == buckets.end()) continue;
            for (BasisIndex b : it->second) fn(a, b);
        }
    }

  private:
    mutable std::unordered_map<std::uint64_t, std::vector<BasisIndex>> left_buckets_;
};

using AlgebraPtr = std::shared_ptr<const BasisAlgebra>;

// A finite direct sum of full matrix algebras with labeled matrix units.
class MultiMatrixAlgebra final : public BasisAlgebra {
  public:
    struct Block {
        std::string name;
        int dim;
        std::size_t offset;
    };
    struct Label {
        int block, row, col;
    };

    explicit MultiMatrixAlgebra(std::vector<std::pair<std::string, int>> blocks);

    const std::vector<Block>& blocks() const { return blocks_; }
    int block_dim(int s) const { return blocks_[s].dim; }

    BasisIndex index_of(int block, int row, int col) const {
        const Block& b = blocks_[block];
        return static_cast<BasisIndex>(b.offset + static_cast<std::size_t>(row) * b.dim + col);
    }
    Label decode(BasisIndex i) const {
        int s = block_of_[i];
        std::size_t r = i - blocks_[s].offset;
        return {s, static_cast<int>(r / blocks_[s].dim), static_cast<int>(r % blocks_[s].dim)};
    }

    std::size_t dim() const override { return dim_; }
    std::optional<MonomialTerm> mul(BasisIndex a, BasisIndex b) const override {
        Label la = decode(a), lb = decode(b);
        if (la.block != lb.block || la.col != lb.row) return std::nullopt;
        return MonomialTerm{index_of(la.block, la.row, lb.col), Phase::zero()};
    }
    MonomialTerm adjoint(BasisIndex a) const override {
        Label l = decode(a);
        return {index_of(l.block, l.col, l.row), Phase::zero()};
    }
    const std::vector<BasisIndex>& unit_support() const override { return unit_support_; }
    std::uint64_t right_key(BasisIndex a) const override {
        Label l = decode(a);
        return (std::uint64_t(l.block) << 32) | std::uint64_t(l.col);
    }
    std::uint64_t left_key(BasisIndex b) const override {
        Label l = decode(b);
        return (std::uint64_t(l.block) << 32) | std::uint64_t(l.row);
    }
    std::string label(BasisIndex a) const override;
    std::string structure_key() const override;

    static std::shared_ptr<MultiMatrixAlgebra> full(int n, const std::string& name = "M");
    // C(G): one 1-dimensional block per group element.
    static std::shared_ptr<MultiMatrixAlgebra> functions_on(int group_order);
    std::shared_ptr<MultiMatrixAlgebra> tensor(const MultiMatrixAlgebra& other) const;

  private:
    std::vector<Block> blocks_;
    std::vector<int> block_of_;
    std::vector<BasisIndex> unit_support_;
    std::size_t dim_ = 0;
};

// A sparse element with coefficients in the scalar backend S.
template <class S>
class Element {
  public:
    using Ops = ScalarOps<S>;

    Element() = default;
    explicit Element(AlgebraPtr alg) : alg_(std::move(alg)) {}

    static Element zero(AlgebraPtr alg) { return Element(std::move(alg)); }
    static Element unit(AlgebraPtr alg) {
        Element e(alg);
        for (BasisIndex b : alg->unit_support()) e.entries_.push_back({b, Ops::one()});
        return e;
    }
    static Element basis(AlgebraPtr alg, BasisIndex b, const Phase& p = Phase::zero()) {
        Element e(std::move(alg));
        e.entries_.push_back({b, Ops::from_phase(p)});
        return e;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<std::pair<BasisIndex, S>>& entries() const { return entries_; }
    bool structurally_zero() const { return entries_.empty(); }

    void add_term(BasisIndex b, const S& v) {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), b,
                                   [](const auto& e, BasisIndex x) { return e.first < x; });
        if (it != entries_.end() && it->first == b) {
            it->second = Ops::add(it->second, v);
            if (Ops::is_zero(it->second)) entries_.erase(it);
        } else if (!Ops::is_zero(v)) {
            entries_.insert(it, {b, v});
        }
    }
    std::optional<S> coeff(BasisIndex b) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), b,
                                   [](const auto& e, BasisIndex x) { return e.first < x; });
        if (it == entries_.end() || it->first != b) return std::nullopt;
        return it->second;
    }

    friend Element operator+(const Element& a, const Element& b) {
        a.require_same_algebra(b);
        Element out = a;
        for (const auto& [idx, v] : b.entries_) out.add_term(idx, v);
        return out;
    }
    friend Element operator-(const Element& a, const Element& b) {
        a.require_same_algebra(b);
        Element out = a;
        for (const auto& [idx, v] : b.entries_) out.add_term(idx, Ops::neg(v));
        return out;
    }
    friend Element operator*(const Element& a, const Element& b) {
        a.require_same_algebra(b);
        // hash-join on the composability keys, indexing the larger factor
        Element out(a.alg_);
        std::vector<std::pair<BasisIndex, S>> terms;
        if (a.entries_.size() <= b.entries_.size()) {
            std::unordered_multimap<std::uint64_t, std::size_t> bidx;
            bidx.reserve(b.entries_.size());
            for (std::size_t i = 0; i < b.entries_.size(); ++i)
                bidx.emplace(a.alg_->left_key(b.entries_[i].first), i);
            for (const auto& [ia, va] : a.entries_) {
                auto range = bidx.equal_range(a.alg_->right_key(ia));
                for (auto it = range.first; it != range.second; ++it) {
                    const auto& [ib, vb] = b.entries_[it->second];
                    auto prod = a.alg_->mul(ia, ib);
                    if (!prod) continue;
                    terms.push_back(
                        {prod->index, Ops::scale_phase(Ops::mul(va, vb), prod->phase)});
                }
            }
        } else {
            std::unordered_multimap<std::uint64_t, std::size_t> aidx;
            aidx.reserve(a.entries_.size());
            for (std::size_t i = 0; i < a.entries_.size(); ++i)
                aidx.emplace(a.alg_->right_key(a.entries_[i].first), i);
            for (const auto& [ib, vb] : b.entries_) {
                auto range = aidx.equal_range(a.alg_->left_key(ib));
                for (auto it = range.first; it != range.second; ++it) {
                    const auto& [ia, va] = a.entries_[it->second];
                    auto prod = a.alg_->mul(ia, ib);
                    if (!prod) continue;
                    terms.push_back(
                        {prod->index, Ops::scale_phase(Ops::mul(va, vb), prod->phase)});
                }
            }
        }
        out.set_terms(std::move(terms));
        return out;
    }
    Element adjoint() const {
        Element out(alg_);
        std::vector<std::pair<BasisIndex, S>> terms;
        terms.reserve(entries_.size());
        for (const auto& [idx, v] : entries_) {
            MonomialTerm t = alg_->adjoint(idx);
            terms.push_back({t.index, Ops::scale_phase(Ops::conj(v), t.phase)});
        }
        out.set_terms(std::move(terms));
        return out;
    }
    Element scaled(const S& s) const {
        Element out(alg_);
        for (const auto& [idx, v] : entries_) out.add_term(idx, Ops::mul(v, s));
        return out;
    }
    Element scaled_phase(const Phase& p) const {
        Element out(alg_);
        for (const auto& [idx, v] : entries_) out.add_term(idx, Ops::scale_phase(v, p));
        return out;
    }
    Element scaled_rational(const Rat& r) const {
        Element out(alg_);
        for (const auto& [idx, v] : entries_) out.add_term(idx, Ops::scale_rational(v, r));
        return out;
    }

    bool is_zero() const {
        for (const auto& [idx, v] : entries_)
            if (!Ops::is_zero(v)) return false;
        return true;
    }
    friend bool operator==(const Element& a, const Element& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    bool is_unitary() const {
        Element u = unit(alg_);
        return (*this) * adjoint() == u && adjoint() * (*this) == u;
    }
    bool is_projection() const {
        return (*this) == adjoint() && (*this) == (*this) * (*this);
    }
    bool commutes_with(const Element& other) const {
        return (*this) * other == other * (*this);
    }

    // If the element equals lambda * 1 for a scalar lambda, returns lambda.
    std::optional<S> as_scalar_multiple_of_unit() const {
        const auto& sup = alg_->unit_support();
        if (sup.empty()) return std::nullopt;
        auto first = coeff(sup[0]);
        S lambda = first ? *first : Ops::zero();
        Element expected = unit(alg_).scaled(lambda);
        if (!((*this) - expected).is_zero()) return std::nullopt;
        return lambda;
    }

    void require_same_algebra(const Element& other) const {
        if (!alg_ || !other.alg_ || !alg_->same_as(*other.alg_))
            throw InputError("element algebra mismatch");
    }

    // bulk assignment: sorts and combines duplicate indices
    void set_terms(std::vector<std::pair<BasisIndex, S>> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        entries_.clear();
        for (auto& [idx, v] : terms) {
            if (!entries_.empty() && entries_.back().first == idx) {
                entries_.back().second = Ops::add(entries_.back().second, v);
                if (Ops::is_zero(entries_.back().second)) entries_.pop_back();
            } else if (!Ops::is_zero(v)) {
                entries_.push_back({idx, std::move(v)});
            }
        }
    }

  private:
    AlgebraPtr alg_;
    std::vector<std::pair<BasisIndex, S>> entries_;
};

using ElementX = Element<Cyc>;
using ElementF = Element<Cplx>;

} // namespace caw
