#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

namespace caw {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

struct BigMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<BigInt>> a;

    BigMatrix() = default;
    BigMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r, std::vector<BigInt>(c)) {}
    static BigMatrix identity(std::size_t n) {
        BigMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.a[i][i] = 1;
        return m;
    }
    BigInt& operator()(std::size_t i, std::size_t j) { return a[i][j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return a[i][j]; }
};

BigMatrix matmul(const BigMatrix& x, const BigMatrix& y);

// Smith normal form: unimodular L (rows x rows), R (cols x cols) with
// L * A * R = diag(d_1..d_r, 0..), d_i >= 1 and d_i | d_{i+1}.
// left_inverse is the inverse of L, tracked during the reduction.
struct SmithForm {
    BigMatrix left, right, left_inverse;
    std::vector<BigInt> diag; // length min(rows, cols), zeros at the end
    std::size_t rank = 0;
    std::size_t rows = 0, cols = 0;
};

SmithForm smith_normal_form(BigMatrix A);

// Solves A x == b (mod 1) for rational x given the Smith form of A.
// Returns a solution or nullopt when none exists over the rationals mod 1.
std::optional<std::vector<BigRat>> solve_mod_one(const SmithForm& snf,
                                                 const std::vector<BigRat>& b);

// Solves the square rational system M x = b by Gaussian elimination.
// Throws std::logic_error if M is singular.
std::vector<BigRat> solve_rational(std::vector<std::vector<BigRat>> M, std::vector<BigRat> b);

} // namespace caw
