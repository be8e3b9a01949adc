#include "caw/cohomology.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace caw {

namespace {

// ---- normalized tuple indexing: coordinates range over {1..ord-1} ----

std::size_t norm_count(int order, int degree) {
    std::size_t n = 1;
    for (int i = 0; i < degree; ++i) n *= static_cast<std::size_t>(order - 1);
    return n;
}

std::size_t norm_index(int order, std::span<const int> args) {
    std::size_t idx = 0;
    for (int a : args) idx = idx * (order - 1) + static_cast<std::size_t>(a - 1);
    return idx;
}

void norm_decode(int order, std::size_t idx, std::span<int> args) {
    for (std::size_t i = args.size(); i-- > 0;) {
        args[i] = 1 + static_cast<int>(idx % (order - 1));
        idx /= (order - 1);
    }
}

// Visits the bar-differential terms of d c(args) for an (n+1)-tuple: the
// callback receives the n-tuple argument of each c(...) term and its sign.
template <class F>
void bar_terms(const GroupTable& g, std::span<const int> args, F&& visit) {
    int n = static_cast<int>(args.size()) - 1;
    std::vector<int> sub(n);
    for (int i = 0; i < n; ++i) sub[i] = args[i + 1];
    visit(sub, +1);
    int sign = -1;
    for (int i = 1; i <= n; ++i) {
        int k = 0;
        for (int j = 0; j <= n; ++j) {
            if (j == i) continue;
            sub[k++] = (j == i - 1) ? g.mul(args[i - 1], args[i]) : args[j];
        }
        visit(sub, sign);
        sign = -sign;
    }
    for (int i = 0; i < n; ++i) sub[i] = args[i];
    visit(sub, sign);
}

std::string group_fingerprint(const GroupTable& g) {
    std::string s = std::to_string(g.order);
    for (const auto& row : g.product)
        for (int v : row) s += "," + std::to_string(v);
    return s;
}

const SmithForm& cached_differential_snf(const GroupTable& g, int degree) {
    static std::map<std::string, SmithForm> cache;
    static std::mutex mtx;
    std::string key = std::to_string(degree) + "|" + group_fingerprint(g);
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, smith_normal_form(differential_matrix(g, degree))).first->second;
}

BigRat phase_to_rat(const Phase& p) { return BigRat(p.num, p.den); }

Phase rat_to_phase(const BigRat& q) {
    BigInt num = numerator(q), den = denominator(q);
    num %= den;
    if (num < 0) num += den;
    if (den > INT64_MAX) throw std::overflow_error("phase denominator too large");
    return Phase(num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>());
}

} // namespace

BigMatrix differential_matrix(const GroupTable& g, int degree) {
    std::size_t rows = norm_count(g.order, degree + 1);
    std::size_t cols = norm_count(g.order, degree);
    BigMatrix D(rows, cols);
    std::vector<int> args(degree + 1);
    for (std::size_t r = 0; r < rows; ++r) {
        norm_decode(g.order, r, args);
        bar_terms(g, args, [&](std::span<const int> sub, int sign) {
            for (int a : sub)
                if (a == GroupTable::identity) return; // normalized cochains vanish there
            D(r, norm_index(g.order, sub)) += sign;
        });
    }
    return D;
}

std::optional<Cochain> solve_coboundary(const Cochain& w) {
    if (w.degree() < 2 || w.degree() > 3)
        throw InputError("solve_coboundary supports degree 2 and 3");
    if (!w.is_normalized()) throw InputError("solve_coboundary needs a normalized cochain");
    if (!is_cocycle(w)) throw InputError("solve_coboundary input is not a cocycle");
    const GroupTable& g = w.group();
    int n = w.degree();
    const SmithForm& snf = cached_differential_snf(g, n - 1);
    std::vector<BigRat> b(norm_count(g.order, n));
    std::vector<int> args(n);
    for (std::size_t r = 0; r < b.size(); ++r) {
        norm_decode(g.order, r, args);
        b[r] = phase_to_rat(w.at(args));
    }
    auto x = solve_mod_one(snf, b);
    if (!x) return std::nullopt;
    Cochain eta(g, n - 1);
    std::vector<int> sub(n - 1);
    for (std::size_t c = 0; c < x->size(); ++c) {
        norm_decode(g.order, c, sub);
        eta.set(sub, rat_to_phase((*x)[c]));
    }
    if (!(differential(eta) == w))
        throw InvariantViolation("solve_coboundary produced eta with d(eta) != w");
    return eta;
}

CohomologyResult cohomology_group(const GroupTable& g, int degree, int coeff_order) {
    if (degree < 2 || degree > 3) throw InputError("cohomology_group supports degree 2 and 3");
    if (g.order > 8) throw InputError("cohomology_group bounded to |G| <= 8");
    if (coeff_order < 1) throw InputError("coefficient order must be positive");
    const int ord = g.order;
    const std::size_t cn = norm_count(ord, degree);
    const std::int64_t m = coeff_order;

    // Lattice of mod-m cocycles: x with D2 x == 0 (mod m), in the basis
    // B = R2 * diag(m / gcd(s_i, m), .., 1).
    const SmithForm snf2 = smith_normal_form(differential_matrix(g, degree));
    BigMatrix B(cn, cn);
    for (std::size_t j = 0; j < cn; ++j) {
        BigInt f = 1;
        if (j < snf2.rank) {
            BigInt s = snf2.diag[j];
            f = m / gcd(BigInt(m), s);
        }
        for (std::size_t i = 0; i < cn; ++i) B(i, j) = snf2.right.a[i][j] * f;
    }

    // Subgroup of coboundaries plus m * Z^cn, expressed in that basis.
    BigMatrix D1 = differential_matrix(g, degree - 1);
    std::size_t mcols = D1.cols + cn;
    std::vector<std::vector<BigRat>> Bq(cn, std::vector<BigRat>(cn));
    for (std::size_t i = 0; i < cn; ++i)
        for (std::size_t j = 0; j < cn; ++j) Bq[i][j] = BigRat(B(i, j));
    BigMatrix C(cn, mcols);
    std::vector<BigRat> col(cn);
    for (std::size_t c = 0; c < mcols; ++c) {
        for (std::size_t i = 0; i < cn; ++i)
            col[i] = (c < D1.cols) ? BigRat(D1(i, c)) : BigRat((c - D1.cols) == i ? m : 0);
        auto sol = solve_rational(Bq, col);
        for (std::size_t i = 0; i < cn; ++i) {
            if (denominator(sol[i]) != 1)
                throw InvariantViolation("coboundary lattice not inside cocycle lattice");
            C(i, c) = numerator(sol[i]);
        }
    }

    const SmithForm snf3 = smith_normal_form(std::move(C));
    if (snf3.rank < cn)
        throw InvariantViolation("cohomology quotient unexpectedly infinite");

    CohomologyResult out;
    for (std::size_t i = 0; i < cn; ++i) {
        BigInt d = snf3.diag[i];
        if (d <= 1) continue;
        out.elementary_divisors.push_back(d.convert_to<std::int64_t>());
        // generator: column i of B * L3^{-1}, read as a cochain with values /m
        Cochain rep(g, degree);
        std::vector<int> args(degree);
        for (std::size_t r = 0; r < cn; ++r) {
            BigInt v = 0;
            for (std::size_t k = 0; k < cn; ++k) v += B(r, k) * snf3.left_inverse.a[k][i];
            norm_decode(ord, r, args);
            BigInt num = v % m;
            rep.set(args, Phase(num.convert_to<std::int64_t>(), m));
        }
        if (!is_cocycle(rep))
            throw InvariantViolation("cohomology representative is not a cocycle");
        out.representatives.push_back(std::move(rep));
    }
    return out;
}

std::vector<Cochain> all_class_representatives(const GroupTable& g, int degree, int coeff_order) {
    CohomologyResult h = cohomology_group(g, degree, coeff_order);
    std::vector<Cochain> out;
    std::vector<std::int64_t> k(h.elementary_divisors.size(), 0);
    while (true) {
        Cochain w(g, degree);
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i] != 0) w = w + k[i] * h.representatives[i];
        out.push_back(std::move(w));
        std::size_t i = 0;
        for (; i < k.size(); ++i) {
            if (++k[i] < h.elementary_divisors[i]) break;
            k[i] = 0;
        }
        if (i == k.size()) break;
    }
    return out;
}

bool class_equal(const Cochain& w1, const Cochain& w2) {
    w1.require_compatible(w2);
    return solve_coboundary(w1 - w2).has_value();
}

std::int64_t class_order(const Cochain& w) {
    for (std::int64_t k = 1; k <= w.group().order; ++k)
        if (solve_coboundary(k * w)) return k;
    throw InvariantViolation("class order exceeds |G|; input not a cocycle?");
}

SubgroupScan subgroup_nontriviality_scan(const Cochain& w) {
    if (w.degree() != 3) throw InputError("subgroup scan expects a 3-cocycle");
    SubgroupScan out;
    out.hypothesis_holds = true;
    for (const auto& h : enumerate_subgroups(w.group())) {
        Cochain rw = restrict_cochain(w, h);
        bool nontrivial = !solve_coboundary(rw).has_value();
        if (h.size() > 1 && !nontrivial) out.hypothesis_holds = false;
        out.entries.push_back({h, nontrivial});
    }
    return out;
}

namespace {

// Central extension of g by Z_m with 2-cocycle beta (values in 0..m-1):
// elements (x, a) indexed x*m + a, product (x,a)(y,b) = (xy, a+b+beta(x,y)).
GroupTable central_extension(const GroupTable& g, int m,
                             const std::vector<std::vector<int>>& beta, const std::string& name) {
    int n = g.order * m;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int x = 0; x < g.order; ++x)
        for (int a = 0; a < m; ++a)
            for (int y = 0; y < g.order; ++y)
                for (int b = 0; b < m; ++b)
                    t[x * m + a][y * m + b] = g.mul(x, y) * m + (a + b + beta[x][y]) % m;
    return GroupTable(name, std::move(t));
}

struct ExtensionCandidate {
    Surjection rho;
    Cochain c;
    bool kernel_trivial;
};

// Tries to adjust c by a coboundary so that it vanishes on the kernel;
// possible exactly when [c|_K] = 0 in H^2(K, Q/Z).
std::optional<Cochain> kernel_trivialize(const Surjection& rho, const Cochain& c) {
    Cochain ck = restrict_cochain(c, rho.kernel);
    auto eta = solve_coboundary(ck);
    if (!eta) return std::nullopt;
    // extend eta by zero off the kernel and shift
    Cochain gamma(rho.source, 1);
    for (std::size_t i = 0; i < rho.kernel.size(); ++i) {
        int parent = rho.kernel[i];
        int local = static_cast<int>(i);
        gamma.set(std::array{parent}, eta->at(std::array{local}));
    }
    Cochain adjusted = c - differential(gamma);
    for (int k : rho.kernel)
        for (int l : rho.kernel)
            if (!adjusted(k, l).is_zero())
                throw InvariantViolation("kernel trivialization failed pointwise");
    return adjusted;
}

} // namespace

std::optional<std::pair<Surjection, Cochain>> find_trivializing_extension(
    const GroupTable& g, const Cochain& w, int max_kernel_order) {
    if (w.degree() != 3 || !is_cocycle(w))
        throw InputError("find_trivializing_extension expects a 3-cocycle");
    std::optional<std::pair<Surjection, Cochain>> first_plain;

    auto consider = [&](const Surjection& rho) -> std::optional<std::pair<Surjection, Cochain>> {
        auto c = solve_coboundary(pullback(rho, w));
        if (!c) return std::nullopt;
        if (auto ct = kernel_trivialize(rho, *c))
            return std::make_pair(rho, *ct); // preferred: trivial on the kernel
        if (!first_plain) first_plain = std::make_pair(rho, *c);
        return std::nullopt;
    };

    // m = 1: the group itself.
    {
        std::vector<int> idmap(g.order);
        std::iota(idmap.begin(), idmap.end(), 0);
        if (auto hit = consider(make_surjection(g, g, idmap))) return hit;
    }
    for (int m = 2; m <= max_kernel_order; ++m) {
        if (g.order * m > GroupTable::max_order) break;
        int combo = 0;
        for (const Cochain& beta_ph : all_class_representatives(g, 2, m)) {
            std::vector<std::vector<int>> beta(g.order, std::vector<int>(g.order, 0));
            for (int x = 0; x < g.order; ++x)
                for (int y = 0; y < g.order; ++y) {
                    Phase p = beta_ph(x, y);
                    beta[x][y] = static_cast<int>((p.num * (m / p.den)) % m);
                }
            std::string name = "Ext(" + g.name + ",Z" + std::to_string(m) + ")#" +
                               std::to_string(combo++);
            GroupTable gamma = central_extension(g, m, beta, name);
            std::vector<int> rmap(gamma.order);
            for (int i = 0; i < gamma.order; ++i) rmap[i] = i / m;
            if (auto hit = consider(make_surjection(gamma, g, rmap))) return hit;
        }
    }
    return first_plain;
}

std::pair<Cochain, Cochain> normalize_cocycle(const Cochain& w) {
    if (!is_cocycle(w)) throw InputError("normalize_cocycle expects a cocycle");
    if (w.is_normalized()) return {w, Cochain(w.group(), w.degree() - 1)};
    const GroupTable& g = w.group();
    int n = w.degree();
    // Solve d(eta) = w on the identity-containing tuples, over full cochain
    // tables (eta need not be normalized).
    std::vector<std::size_t> bad;
    std::vector<int> args(n);
    Cochain probe(g, n);
    for (std::size_t idx = 0; idx < probe.table_size(); ++idx) {
        probe.decode(idx, args);
        for (int a : args)
            if (a == GroupTable::identity) {
                bad.push_back(idx);
                break;
            }
    }
    Cochain eta(g, n - 1);
    BigMatrix D(bad.size(), eta.table_size());
    std::vector<BigRat> b(bad.size());
    for (std::size_t r = 0; r < bad.size(); ++r) {
        probe.decode(bad[r], args);
        bar_terms(g, args, [&](std::span<const int> sub, int sign) {
            D(r, eta.index(sub)) += sign;
        });
        b[r] = phase_to_rat(w.at_index(bad[r]));
    }
    auto x = solve_mod_one(smith_normal_form(std::move(D)), b);
    if (!x) throw InputError("cocycle cannot be normalized by a coboundary shift");
    std::vector<int> sub(n - 1);
    for (std::size_t c = 0; c < x->size(); ++c) {
        eta.decode(c, sub);
        eta.set(sub, rat_to_phase((*x)[c]));
    }
    Cochain normalized = w - differential(eta);
    if (!normalized.is_normalized() || !is_cocycle(normalized))
        throw InvariantViolation("normalization shift failed");
    return {normalized, eta};
}

} // namespace caw
