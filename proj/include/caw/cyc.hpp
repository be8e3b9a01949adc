#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "caw/phase.hpp"

namespace caw {

// Largest conductor the exact zero test will handle; 2^4 * 3^2 * 5 * 7.
inline constexpr std::int64_t kCycConductorCap = 5040;

struct CycCapExceeded : std::runtime_error {
    explicit CycCapExceeded(std::int64_t n)
        : std::runtime_error("cyclotomic conductor " + std::to_string(n) +
                             " exceeds cap; use the float backend") {}
};

// The N-th cyclotomic polynomial as integer coefficients (degree phi(N)),
// computed by exact division of x^N - 1 and memoized.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t n);

// A finite Q-linear combination of roots of unity, sum r_i * e^{2 pi i p_i}.
// Terms are kept sorted by phase with nonzero weights; the zero test reduces
// modulo the cyclotomic polynomial of the lcm of the phase denominators.
class Cyc {
  public:
    Cyc() = default;
    static Cyc zero() { return Cyc(); }
    static Cyc one() { return root(Phase::zero()); }
    static Cyc root(const Phase& p) {
        Cyc c;
        c.terms_.push_back({p, Rat::of(1)});
        return c;
    }
    static Cyc rational(const Rat& r) {
        Cyc c;
        if (!r.is_zero()) c.terms_.push_back({Phase::zero(), r});
        return c;
    }

    const std::vector<std::pair<Phase, Rat>>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    friend Cyc operator+(const Cyc& a, const Cyc& b) {
        Cyc out;
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
                out.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
                out.terms_.push_back(b.terms_[j++]);
            } else {
                Rat w = a.terms_[i].second + b.terms_[j].second;
                if (!w.is_zero()) out.terms_.push_back({a.terms_[i].first, w});
                ++i;
                ++j;
            }
        }
        return out;
    }
    friend Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }
    Cyc operator-() const {
        Cyc out = *this;
        for (auto& t : out.terms_) t.second = -t.second;
        return out;
    }
    friend Cyc operator*(const Cyc& a, const Cyc& b) {
        Cyc out;
        for (const auto& [pa, ra] : a.terms_)
            for (const auto& [pb, rb] : b.terms_) out.add_term(pa + pb, ra * rb);
        return out;
    }
    Cyc conj() const {
        Cyc out;
        for (const auto& [p, r] : terms_) out.add_term(-p, r);
        return out;
    }
    Cyc scaled(const Rat& r) const {
        Cyc out;
        if (r.is_zero()) return out;
        out.terms_ = terms_;
        for (auto& t : out.terms_) t.second = t.second * r;
        return out;
    }
    Cyc scaled(const Phase& p) const {
        Cyc out;
        for (const auto& [q, r] : terms_) out.add_term(q + p, r);
        return out;
    }

    // Exact zero test by reduction modulo the cyclotomic polynomial.
    bool is_zero() const;

    friend bool operator==(const Cyc& a, const Cyc& b) {
        if (a.terms_ == b.terms_) return true;
        return (a - b).is_zero();
    }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    // If the value is exactly one root of unity, returns its phase.
    std::optional<Phase> as_root() const;
    // If the value is rational, returns it.
    std::optional<Rat> as_rational() const;

    std::complex<double> eval() const {
        std::complex<double> z{0.0, 0.0};
        for (const auto& [p, r] : terms_) {
            double t = 2.0 * M_PI * p.turns();
            z += r.value() * std::complex<double>(std::cos(t), std::sin(t));
        }
        return z;
    }

    void add_term(const Phase& p, const Rat& r) {
        if (r.is_zero()) return;
        auto it = std::lower_bound(terms_.begin(), terms_.end(), p,
                                   [](const auto& t, const Phase& q) { return t.first < q; });
        if (it != terms_.end() && it->first == p) {
            it->second = it->second + r;
            if (it->second.is_zero()) terms_.erase(it);
        } else {
            terms_.insert(it, {p, r});
        }
    }

  private:
    std::vector<std::pair<Phase, Rat>> terms_;
};

// Complex-double scalar for the float backend; comparisons use a global
// tolerance set from the run configuration.
struct Cplx {
    std::complex<double> v{0.0, 0.0};
    static inline double tolerance = 1e-9;
};

// Scalar backend trait. Everything the element/map machinery needs from a
// coefficient type lives here, so the same algorithms run exactly (Cyc) or
// in floating point (Cplx).
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Cyc> {
    static Cyc zero() { return Cyc::zero(); }
    static Cyc one() { return Cyc::one(); }
    static Cyc from_phase(const Phase& p) { return Cyc::root(p); }
    static Cyc add(const Cyc& a, const Cyc& b) { return a + b; }
    static Cyc sub(const Cyc& a, const Cyc& b) { return a - b; }
    static Cyc mul(const Cyc& a, const Cyc& b) { return a * b; }
    static Cyc neg(const Cyc& a) { return -a; }
    static Cyc conj(const Cyc& a) { return a.conj(); }
    static Cyc scale_rational(const Cyc& a, const Rat& r) { return a.scaled(r); }
    static Cyc scale_phase(const Cyc& a, const Phase& p) { return a.scaled(p); }
    static bool is_zero(const Cyc& a) { return a.is_zero(); }
    static bool equal(const Cyc& a, const Cyc& b) { return a == b; }
    static std::complex<double> eval(const Cyc& a) { return a.eval(); }
    static constexpr bool exact = true;
};

template <>
struct ScalarOps<Cplx> {
    static Cplx zero() { return {}; }
    static Cplx one() { return {{1.0, 0.0}}; }
    static Cplx from_phase(const Phase& p) {
        double t = 2.0 * M_PI * p.turns();
        return {{std::cos(t), std::sin(t)}};
    }
    static Cplx add(const Cplx& a, const Cplx& b) { return {a.v + b.v}; }
    static Cplx sub(const Cplx& a, const Cplx& b) { return {a.v - b.v}; }
    static Cplx mul(const Cplx& a, const Cplx& b) { return {a.v * b.v}; }
    static Cplx neg(const Cplx& a) { return {-a.v}; }
    static Cplx conj(const Cplx& a) { return {std::conj(a.v)}; }
    static Cplx scale_rational(const Cplx& a, const Rat& r) { return {a.v * r.value()}; }
    static Cplx scale_phase(const Cplx& a, const Phase& p) { return {a.v * from_phase(p).v}; }
    static bool is_zero(const Cplx& a) { return std::abs(a.v) <= Cplx::tolerance; }
    static bool equal(const Cplx& a, const Cplx& b) { return is_zero(sub(a, b)); }
    static std::complex<double> eval(const Cplx& a) { return a.v; }
    static constexpr bool exact = false;
};

} // namespace caw
