// Exact integer and rational helpers shared by the lattice and algebra code.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace milnor {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

IntMatrix identity_matrix(std::size_t n);
IntMatrix transpose(const IntMatrix &m);
IntMatrix multiply(const IntMatrix &a, const IntMatrix &b);
IntVector multiply(const IntMatrix &a, const IntVector &x);

// Fraction-free determinant.
BigInt bareiss_det(const IntMatrix &m);

// Complex number with rational parts; enough field structure for rank
// computations at exact sample points.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long long r) : re(r) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussianRational inverse() const;
    std::string to_string() const;

    friend GaussianRational operator+(const GaussianRational &a, const GaussianRational &b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational &a, const GaussianRational &b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational &a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational &a, const GaussianRational &b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational &a, const GaussianRational &b) {
        return a * b.inverse();
    }
    GaussianRational &operator+=(const GaussianRational &o) { return *this = *this + o; }
    GaussianRational &operator-=(const GaussianRational &o) { return *this = *this - o; }
    GaussianRational &operator*=(const GaussianRational &o) { return *this = *this * o; }
    friend bool operator==(const GaussianRational &a, const GaussianRational &b) {
        return a.re == b.re && a.im == b.im;
    }
};

// Rank of a dense matrix over any exact field type with +, -, *, / and
// is_zero-compatible comparison to zero.
template <class F>
std::size_t exact_rank(std::vector<std::vector<F>> m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == F(0)) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        const F inv = F(1) / m[rank][c];
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c] == F(0)) continue;
            const F f = m[r][c] * inv;
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

} // namespace milnor
