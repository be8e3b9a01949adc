#include "caw/snf.hpp"

#include <stdexcept>

namespace caw {

BigMatrix matmul(const BigMatrix& x, const BigMatrix& y) {
    if (x.cols != y.rows) throw std::logic_error("matmul shape mismatch");
    BigMatrix out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x.a[i][k] == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                if (y.a[k][j] != 0) out.a[i][j] += x.a[i][k] * y.a[k][j];
        }
    return out;
}

namespace {

struct Reducer {
    BigMatrix A, L, R, Linv;

    explicit Reducer(BigMatrix m)
        : A(std::move(m)), L(BigMatrix::identity(A.rows)), R(BigMatrix::identity(A.cols)),
          Linv(BigMatrix::identity(A.rows)) {}

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap(A.a[i], A.a[j]);
        std::swap(L.a[i], L.a[j]);
        for (std::size_t k = 0; k < Linv.rows; ++k) std::swap(Linv.a[k][i], Linv.a[k][j]);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < A.rows; ++k) std::swap(A.a[k][i], A.a[k][j]);
        for (std::size_t k = 0; k < R.rows; ++k) std::swap(R.a[k][i], R.a[k][j]);
    }
    void negate_row(std::size_t i) {
        for (auto& v : A.a[i]) v = -v;
        for (auto& v : L.a[i]) v = -v;
        for (std::size_t k = 0; k < Linv.rows; ++k) Linv.a[k][i] = -Linv.a[k][i];
    }
    // row_i -= q * row_j
    void add_row(std::size_t i, std::size_t j, const BigInt& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < A.cols; ++k) A.a[i][k] -= q * A.a[j][k];
        for (std::size_t k = 0; k < L.cols; ++k) L.a[i][k] -= q * L.a[j][k];
        for (std::size_t k = 0; k < Linv.rows; ++k) Linv.a[k][j] += q * Linv.a[k][i];
    }
    // col_i -= q * col_j
    void add_col(std::size_t i, std::size_t j, const BigInt& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < A.rows; ++k) A.a[k][i] -= q * A.a[k][j];
        for (std::size_t k = 0; k < R.rows; ++k) R.a[k][i] -= q * R.a[k][j];
    }
};

} // namespace

SmithForm smith_normal_form(BigMatrix input) {
    Reducer red(std::move(input));
    BigMatrix& A = red.A;
    std::size_t n = std::min(A.rows, A.cols);

    for (std::size_t t = 0; t < n; ++t) {
        // pivot: smallest nonzero absolute value in the trailing submatrix
        std::size_t pi = t, pj = t;
        BigInt best = 0;
        for (std::size_t i = t; i < A.rows; ++i)
            for (std::size_t j = t; j < A.cols; ++j) {
                if (A.a[i][j] == 0) continue;
                BigInt v = abs(A.a[i][j]);
                if (best == 0 || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;
        red.swap_rows(t, pi);
        red.swap_cols(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < A.rows; ++i) {
                if (A.a[i][t] == 0) continue;
                BigInt q = A.a[i][t] / A.a[t][t];
                red.add_row(i, t, q);
                if (A.a[i][t] != 0) { // nonzero remainder becomes the new pivot
                    red.swap_rows(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < A.cols; ++j) {
                if (A.a[t][j] == 0) continue;
                BigInt q = A.a[t][j] / A.a[t][t];
                red.add_col(j, t, q);
                if (A.a[t][j] != 0) {
                    red.swap_cols(t, j);
                    clean = false;
                }
            }
        }
        if (A.a[t][t] < 0) red.negate_row(t);
    }

    // enforce the divisibility chain d_t | d_{t+1}
    for (std::size_t t = 0; t + 1 < n; ++t) {
        if (A.a[t][t] == 0) break;
        for (std::size_t s = t + 1; s < n; ++s) {
            if (A.a[s][s] % A.a[t][t] == 0) continue;
            // fold row s into the pivot position and re-reduce the 2x2 corner
            red.add_col(t, s, BigInt(-1)); // col_t += col_s
            bool clean = false;
            while (!clean) {
                clean = true;
                if (A.a[s][t] != 0) {
                    BigInt q = A.a[s][t] / A.a[t][t];
                    red.add_row(s, t, q);
                    if (A.a[s][t] != 0) {
                        red.swap_rows(t, s);
                        clean = false;
                        continue;
                    }
                }
                if (A.a[t][s] != 0) {
                    BigInt q = A.a[t][s] / A.a[t][t];
                    red.add_col(s, t, q);
                    if (A.a[t][s] != 0) {
                        red.swap_cols(t, s);
                        clean = false;
                    }
                }
            }
            if (A.a[t][t] < 0) red.negate_row(t);
            if (A.a[s][s] < 0) red.negate_row(s);
        }
    }

    SmithForm out;
    out.rows = A.rows;
    out.cols = A.cols;
    out.left = std::move(red.L);
    out.right = std::move(red.R);
    out.left_inverse = std::move(red.Linv);
    out.diag.resize(n);
    for (std::size_t t = 0; t < n; ++t) out.diag[t] = A.a[t][t];
    out.rank = 0;
    while (out.rank < n && out.diag[out.rank] != 0) ++out.rank;
    return out;
}

std::optional<std::vector<BigRat>> solve_mod_one(const SmithForm& snf,
                                                 const std::vector<BigRat>& b) {
    if (b.size() != snf.rows) throw std::logic_error("solve_mod_one: size mismatch");
    // L A R = S, so A x == b (mod 1) iff S y == L b (mod 1) with x = R y.
    std::vector<BigRat> lb(snf.rows);
    for (std::size_t i = 0; i < snf.rows; ++i) {
        BigRat acc = 0;
        for (std::size_t j = 0; j < snf.rows; ++j)
            if (snf.left.a[i][j] != 0 && b[j] != 0) acc += BigRat(snf.left.a[i][j]) * b[j];
        lb[i] = acc;
    }
    // rows past the rank demand an integral right-hand side
    for (std::size_t i = snf.rank; i < snf.rows; ++i)
        if (denominator(lb[i]) != 1) return std::nullopt;
    std::vector<BigRat> y(snf.cols, BigRat(0));
    for (std::size_t i = 0; i < snf.rank; ++i) y[i] = lb[i] / BigRat(snf.diag[i]);
    std::vector<BigRat> x(snf.cols, BigRat(0));
    for (std::size_t i = 0; i < snf.cols; ++i) {
        BigRat acc = 0;
        for (std::size_t j = 0; j < snf.cols; ++j)
            if (snf.right.a[i][j] != 0 && y[j] != 0) acc += BigRat(snf.right.a[i][j]) * y[j];
        x[i] = acc;
    }
    return x;
}

std::vector<BigRat> solve_rational(std::vector<std::vector<BigRat>> M, std::vector<BigRat> b) {
    std::size_t n = M.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && M[piv][col] == 0) ++piv;
        if (piv == n) throw std::logic_error("solve_rational: singular matrix");
        std::swap(M[piv], M[col]);
        std::swap(b[piv], b[col]);
        BigRat d = M[col][col];
        for (std::size_t j = col; j < n; ++j) M[col][j] /= d;
        b[col] /= d;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || M[i][col] == 0) continue;
            BigRat f = M[i][col];
            for (std::size_t j = col; j < n; ++j) M[i][j] -= f * M[col][j];
            b[i] -= f * b[col];
        }
    }
    return b;
}

} // namespace caw
