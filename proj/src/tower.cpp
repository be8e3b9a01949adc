#include "caw/tower.hpp"

namespace caw {

Phase d_recursion_phase(const GroupTable& g, const Cochain& w, int stage, int gelt, int k,
                        std::span<const int> xs, std::span<const int> ys) {
    if (stage == 1) return Phase::zero();
    auto x = [&](int i) { return i == 0 ? k : xs[i - 1]; };
    auto y = [&](int i) { return i == 0 ? k : ys[i - 1]; };
    int gi = g.inv(gelt);
    if (stage == 2)
        return w(g.inv(x(1)), gelt, g.mul(gi, k)) - w(g.inv(y(1)), gelt, g.mul(gi, k));
    int n = stage;
    Phase step = w(g.inv(x(n - 1)), gelt, g.mul(gi, x(n - 2))) -
                 w(g.inv(x(n - 3)), gelt, g.mul(gi, x(n - 2))) -
                 w(g.inv(y(n - 1)), gelt, g.mul(gi, y(n - 2))) +
                 w(g.inv(y(n - 3)), gelt, g.mul(gi, y(n - 2)));
    return step + d_recursion_phase(g, w, n - 2, gelt, k, xs.first(n - 3), ys.first(n - 3));
}

Phase d_n_phase(const GroupTable& g, const Cochain& w, int stage, int gelt, int k,
                std::span<const int> xs, std::span<const int> ys) {
    // Iterative unrolling, kept deliberately separate from the recursive
    // builder: peel two tensor legs per step, x_0 = y_0 = k.
    Phase acc;
    int gi = g.inv(gelt);
    int j = stage;
    auto x = [&](int i) { return i == 0 ? k : xs[i - 1]; };
    auto y = [&](int i) { return i == 0 ? k : ys[i - 1]; };
    while (j >= 3) {
        acc = acc + w(g.inv(x(j - 1)), gelt, g.mul(gi, x(j - 2)));
        acc = acc - w(g.inv(x(j - 3)), gelt, g.mul(gi, x(j - 2)));
        acc = acc - w(g.inv(y(j - 1)), gelt, g.mul(gi, y(j - 2)));
        acc = acc + w(g.inv(y(j - 3)), gelt, g.mul(gi, y(j - 2)));
        j -= 2;
    }
    if (j == 2) {
        acc = acc + w(g.inv(x(1)), gelt, g.mul(gi, k));
        acc = acc - w(g.inv(y(1)), gelt, g.mul(gi, k));
    }
    return acc;
}

} // namespace caw
