#pragma once

#include <span>
#include <vector>

#include "caw/group.hpp"
#include "caw/phase.hpp"

namespace caw {

// A normalized n-cochain G^n -> Q/Z, stored as a dense value table.
// Normalized means the value vanishes whenever any argument is the identity.
class Cochain {
  public:
    Cochain() : Cochain(GroupTable(), 1) {}
    Cochain(GroupTable group, int degree)
        : group_(std::move(group)), degree_(degree),
          values_(pow_order(group_.order, degree)) {
        if (degree < 1 || degree > 4) throw InputError("cochain degree must be in [1,4]");
    }

    const GroupTable& group() const { return group_; }
    int degree() const { return degree_; }
    std::size_t table_size() const { return values_.size(); }

    std::size_t index(std::span<const int> args) const {
        std::size_t idx = 0;
        for (int a : args) idx = idx * group_.order + static_cast<std::size_t>(a);
        return idx;
    }
    void decode(std::size_t idx, std::span<int> args) const {
        for (std::size_t i = args.size(); i-- > 0;) {
            args[i] = static_cast<int>(idx % group_.order);
            idx /= group_.order;
        }
    }

    const Phase& at(std::span<const int> args) const { return values_[index(args)]; }
    const Phase& at_index(std::size_t idx) const { return values_[idx]; }
    Phase& at(std::span<const int> args) { return values_[index(args)]; }
    const Phase& operator()(int a, int b) const { return at(std::array{a, b}); }
    const Phase& operator()(int a, int b, int c) const { return at(std::array{a, b, c}); }
    void set(std::span<const int> args, const Phase& p) { values_[index(args)] = p; }

    bool is_normalized() const;
    bool is_zero() const;

    friend Cochain operator+(const Cochain& a, const Cochain& b) {
        a.require_compatible(b);
        Cochain out = a;
        for (std::size_t i = 0; i < out.values_.size(); ++i)
            out.values_[i] = out.values_[i] + b.values_[i];
        return out;
    }
    friend Cochain operator-(const Cochain& a, const Cochain& b) {
        a.require_compatible(b);
        Cochain out = a;
        for (std::size_t i = 0; i < out.values_.size(); ++i)
            out.values_[i] = out.values_[i] - b.values_[i];
        return out;
    }
    Cochain operator-() const {
        Cochain out = *this;
        for (auto& v : out.values_) v = -v;
        return out;
    }
    friend Cochain operator*(std::int64_t k, const Cochain& c) {
        Cochain out = c;
        for (auto& v : out.values_) v = k * v;
        return out;
    }
    friend bool operator==(const Cochain& a, const Cochain& b) {
        return a.degree_ == b.degree_ && a.group_.same_table(b.group_) && a.values_ == b.values_;
    }

    void require_compatible(const Cochain& other) const {
        if (degree_ != other.degree_ || !group_.same_table(other.group_))
            throw InputError("cochain group/degree mismatch");
    }

  private:
    static std::size_t pow_order(int order, int degree) {
        std::size_t n = 1;
        for (int i = 0; i < degree; ++i) n *= static_cast<std::size_t>(order);
        return n;
    }

    GroupTable group_;
    int degree_;
    std::vector<Phase> values_;
};

// Bar-resolution differential with trivial action on the coefficients.
// degree n input, degree n+1 output; input degree <= 3.
Cochain differential(const Cochain& c);

bool is_cocycle(const Cochain& c);

// The canonical degree-3 representative on C_n:
//   w_j(a,b,c) = j*a*[b+c >= n] / n  (mod 1),
// a cocycle of class order n / gcd(n,j).
Cochain standard_cyclic_cocycle(int n, int j);

// (rho^* w)(g_1..g_k) = w(rho g_1, ..., rho g_k); result lives on the source.
Cochain pullback(const Surjection& rho, const Cochain& w);

// Restriction of values to a subgroup (as returned by enumerate_subgroups);
// the result lives on the subgroup's own table.
Cochain restrict_cochain(const Cochain& w, const std::vector<int>& subgroup);

} // namespace caw
