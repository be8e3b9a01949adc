#include "caw/cochain.hpp"

#include <array>

namespace caw {

bool Cochain::is_normalized() const {
    std::vector<int> args(degree_);
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
        decode(idx, args);
        bool has_identity = false;
        for (int a : args) has_identity |= (a == GroupTable::identity);
        if (has_identity && !values_[idx].is_zero()) return false;
    }
    return true;
}

bool Cochain::is_zero() const {
    for (const auto& v : values_)
        if (!v.is_zero()) return false;
    return true;
}

Cochain differential(const Cochain& c) {
    if (c.degree() > 3) throw InputError("differential supports degree <= 3 input");
    const GroupTable& g = c.group();
    int n = c.degree();
    Cochain out(g, n + 1);
    std::vector<int> args(n + 1), sub(n);
    for (std::size_t idx = 0; idx < out.table_size(); ++idx) {
        out.decode(idx, args);
        Phase v;
        // d c(g0,...,gn) = c(g1..gn) + sum (-1)^i c(..g_{i-1}g_i..) + (-1)^{n+1} c(g0..g_{n-1})
        for (int i = 0; i < n; ++i) sub[i] = args[i + 1];
        v = v + c.at(sub);
        int sign = -1;
        for (int i = 1; i <= n; ++i) {
            int k = 0;
            for (int j = 0; j <= n; ++j) {
                if (j == i) continue;
                sub[k++] = (j == i - 1) ? g.mul(args[i - 1], args[i]) : args[j];
            }
            v = (sign > 0) ? v + c.at(sub) : v - c.at(sub);
            sign = -sign;
        }
        for (int i = 0; i < n; ++i) sub[i] = args[i];
        v = (sign > 0) ? v + c.at(sub) : v - c.at(sub);
        out.set(args, v);
    }
    return out;
}

bool is_cocycle(const Cochain& c) { return differential(c).is_zero(); }

Cochain standard_cyclic_cocycle(int n, int j) {
    if (n < 2) throw InputError("standard_cyclic_cocycle needs n >= 2");
    if (j < 0 || j >= n) throw InputError("standard_cyclic_cocycle needs 0 <= j < n");
    GroupTable g = make_named_group("C" + std::to_string(n));
    if (g.order != n) throw InputError("cyclic group order out of named range");
    Cochain w(g, 3);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                int carry = (b + c >= n) ? 1 : 0;
                w.set(std::array{a, b, c}, Phase(static_cast<std::int64_t>(j) * a * carry, n));
            }
    return w;
}

Cochain pullback(const Surjection& rho, const Cochain& w) {
    if (!w.group().same_table(rho.target)) throw InputError("pullback: cochain not on the target group");
    if (w.degree() > 3) throw InputError("pullback supports degree <= 3");
    Cochain out(rho.source, w.degree());
    std::vector<int> args(w.degree()), img(w.degree());
    for (std::size_t idx = 0; idx < out.table_size(); ++idx) {
        out.decode(idx, args);
        for (std::size_t i = 0; i < args.size(); ++i) img[i] = rho.map[args[i]];
        out.set(args, w.at(img));
    }
    return out;
}

Cochain restrict_cochain(const Cochain& w, const std::vector<int>& subgroup) {
    SubgroupTable sub = subgroup_table(w.group(), subgroup);
    Cochain out(sub.table, w.degree());
    std::vector<int> args(w.degree()), parent(w.degree());
    for (std::size_t idx = 0; idx < out.table_size(); ++idx) {
        out.decode(idx, args);
        for (std::size_t i = 0; i < args.size(); ++i) parent[i] = sub.to_parent[args[i]];
        out.set(args, w.at(parent));
    }
    return out;
}

} // namespace caw
