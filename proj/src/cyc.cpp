#include "caw/cyc.hpp"

namespace caw {

namespace {

// Exact division of integer polynomials, num / div with div monic.
std::vector<std::int64_t> poly_divide_exact(std::vector<std::int64_t> num,
                                            const std::vector<std::int64_t>& div) {
    std::size_t dn = num.size() - 1, dd = div.size() - 1;
    std::vector<std::int64_t> q(dn - dd + 1, 0);
    for (std::size_t i = dn + 1; i-- > dd;) {
        std::int64_t c = num[i];
        if (c == 0) continue;
        q[i - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * div[j];
    }
    for (std::int64_t c : num)
        if (c != 0) throw std::logic_error("cyclotomic division not exact");
    return q;
}

std::map<std::int64_t, std::vector<std::int64_t>> g_phi_cache;
std::mutex g_phi_mutex;

const std::vector<std::int64_t>& phi_unlocked(std::int64_t n) {
    auto it = g_phi_cache.find(n);
    if (it != g_phi_cache.end()) return it->second;
    std::vector<std::int64_t> poly(n + 1, 0);
    poly[0] = -1;
    poly[n] = 1;
    for (std::int64_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const auto& phid = phi_unlocked(d); // std::map nodes are reference-stable
        poly = poly_divide_exact(std::move(poly), phid);
    }
    return g_phi_cache.emplace(n, std::move(poly)).first->second;
}

// Writes the value as a polynomial in zeta_n and reduces mod Phi_n.
// Returns the reduced coefficient vector (length = deg Phi_n).
std::vector<Rat> reduced_coeffs(const std::vector<std::pair<Phase, Rat>>& terms, std::int64_t n) {
    std::vector<Rat> coeff(n + 1);
    for (const auto& [p, r] : terms) {
        std::size_t e = static_cast<std::size_t>(p.num * (n / p.den));
        coeff[e] = coeff[e] + r;
    }
    const auto& phi = cyclotomic_polynomial(n);
    std::size_t deg = phi.size() - 1;
    for (std::size_t i = coeff.size(); i-- > deg;) {
        Rat c = coeff[i];
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j <= deg; ++j)
            coeff[i - deg + j] = coeff[i - deg + j] - c * Rat::of(phi[j]);
    }
    coeff.resize(deg);
    return coeff;
}

std::int64_t conductor(const std::vector<std::pair<Phase, Rat>>& terms) {
    std::int64_t n = 1;
    for (const auto& [p, r] : terms) n = lcm_checked(n, p.den);
    if (n > kCycConductorCap) throw CycCapExceeded(n);
    return n;
}

} // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t n) {
    std::lock_guard<std::mutex> lock(g_phi_mutex);
    return phi_unlocked(n);
}

bool Cyc::is_zero() const {
    if (terms_.empty()) return true;
    if (terms_.size() == 1) return false; // canonical form keeps weights nonzero
    std::int64_t n = conductor(terms_);
    for (const Rat& c : reduced_coeffs(terms_, n))
        if (!c.is_zero()) return false;
    return true;
}

std::optional<Phase> Cyc::as_root() const {
    if (terms_.size() == 1 && terms_[0].second == Rat::of(1)) return terms_[0].first;
    if (terms_.empty()) return std::nullopt;
    // Roots of unity inside Q(zeta_n) all have order dividing lcm(2, n).
    std::int64_t n = lcm_checked(conductor(terms_), 2);
    if (n > 720) return std::nullopt; // non-monomial representations stay tiny in practice
    for (std::int64_t k = 0; k < n; ++k) {
        Phase cand(k, n);
        if ((*this - Cyc::root(cand)).is_zero()) return cand;
    }
    return std::nullopt;
}

std::optional<Rat> Cyc::as_rational() const {
    if (terms_.empty()) return Rat::of(0);
    if (terms_.size() == 1) {
        if (terms_[0].first.is_zero()) return terms_[0].second;
        if (terms_[0].first == Phase(1, 2)) return -terms_[0].second;
        return std::nullopt;
    }
    std::int64_t n = conductor(terms_);
    auto coeff = reduced_coeffs(terms_, n);
    for (std::size_t i = 1; i < coeff.size(); ++i)
        if (!coeff[i].is_zero()) return std::nullopt;
    return coeff[0];
}

} // namespace caw
