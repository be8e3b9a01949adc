#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace caw {

// Thrown on malformed user input (bad tables, mismatched algebras, ...).
// The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an exact identity that the construction guarantees fails to
// hold; carries the offending tuple in the message.
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::int64_t checked_i64(__int128 v, const char* ctx) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error(std::string("integer overflow in ") + ctx);
    return static_cast<std::int64_t>(v);
}

inline std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

} // namespace detail

// A reduced rational p/q with q > 0. Used for exact scalar weights.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n, std::int64_t d) {
        if (d == 0) throw InputError("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        std::int64_t g = detail::gcd_i64(n, d);
        if (g > 1) { n /= g; d /= g; }
        num = n;
        den = d;
    }
    static Rat of(std::int64_t n) { return Rat(n, 1); }

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        __int128 n = (__int128)a.num * b.den + (__int128)b.num * a.den;
        __int128 d = (__int128)a.den * b.den;
        return reduce128(n, d);
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + Rat(-b.num, b.den); }
    Rat operator-() const { return Rat(-num, den); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return reduce128((__int128)a.num * b.num, (__int128)a.den * b.den);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw InputError("rational division by zero");
        return reduce128((__int128)a.num * b.den, (__int128)a.den * b.num);
    }
    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }

    double value() const { return double(num) / double(den); }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

  private:
    static Rat reduce128(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        Rat r;
        r.num = detail::checked_i64(n, "Rat");
        r.den = detail::checked_i64(d, "Rat");
        return r;
    }
};

// An element of Q/Z written as a reduced fraction num/den with
// 0 <= num < den; stands for the circle phase e^{2*pi*i*num/den}.
// Addition is mod 1, conjugation is the mod-1 complement.
struct Phase {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Phase() = default;
    Phase(std::int64_t n, std::int64_t d) {
        if (d == 0) throw InputError("phase with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        n %= d;
        if (n < 0) n += d;
        std::int64_t g = detail::gcd_i64(n, d);
        if (g > 1) { n /= g; d /= g; }
        num = n;
        den = d;
    }
    static Phase zero() { return Phase(); }
    static Phase of(const Rat& r) { return Phase(r.num, r.den); }

    bool is_zero() const { return num == 0; }

    friend Phase operator+(const Phase& a, const Phase& b) {
        __int128 n = (__int128)a.num * b.den + (__int128)b.num * a.den;
        __int128 d = (__int128)a.den * b.den;
        return reduce128(n, d);
    }
    friend Phase operator-(const Phase& a, const Phase& b) { return a + (-b); }
    Phase operator-() const { return Phase(-num, den); }
    Phase conj() const { return -*this; }
    friend Phase operator*(std::int64_t k, const Phase& p) {
        return reduce128((__int128)k * p.num, p.den);
    }
    friend bool operator==(const Phase& a, const Phase& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Phase& a, const Phase& b) { return !(a == b); }
    friend bool operator<(const Phase& a, const Phase& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }

    // Fraction of a full turn, in [0,1).
    double turns() const { return double(num) / double(den); }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    // Parses "p/q" (or a bare integer, which reduces to the zero phase).
    static Phase parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Phase(std::stoll(s), 1);
            return Phase(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::logic_error&) {
            throw InputError("cannot parse phase '" + s + "'");
        }
    }

  private:
    static Phase reduce128(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        n %= d;
        if (n < 0) n += d;
        __int128 a = n, b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        Phase p;
        p.num = detail::checked_i64(n, "Phase");
        p.den = detail::checked_i64(d, "Phase");
        return p;
    }
};

inline std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
    __int128 l = (__int128)(a / std::gcd(a, b)) * b;
    return detail::checked_i64(l, "lcm");
}

} // namespace caw
