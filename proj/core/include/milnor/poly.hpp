// Sparse polynomials in x, y, z, t with exact Gaussian-rational coefficients.
#pragma once

#include "milnor/exact.hpp"

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace milnor {

class PolyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Exponents = std::array<int, 4>; // x, y, z, t

class MultiPoly {
public:
    MultiPoly() = default;
    static MultiPoly constant(const GaussianRational &c);
    static MultiPoly x();
    static MultiPoly y();
    static MultiPoly z();
    static MultiPoly t();
    static MultiPoly monomial(const GaussianRational &c, const Exponents &e);

    const std::map<Exponents, GaussianRational> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    int degree_in(int var) const;
    // Which of x, y, z, t occur.
    std::array<bool, 4> uses() const;

    MultiPoly operator+(const MultiPoly &o) const;
    MultiPoly operator-(const MultiPoly &o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly &o) const;
    MultiPoly pow(int n) const;
    friend bool operator==(const MultiPoly &, const MultiPoly &) = default;

    // Substitutes t = value, exactly.
    MultiPoly at_t(const Rational &value) const;
    // Derivative in variable 0..3.
    MultiPoly diff(int var) const;
    std::string to_string() const;

private:
    void add_term(const Exponents &e, const GaussianRational &c);
    std::map<Exponents, GaussianRational> terms_;
};

MultiPoly operator*(const GaussianRational &c, const MultiPoly &p);

// Double-precision evaluator of a polynomial in x, y, z at a fixed t.
class CompiledPoly {
public:
    CompiledPoly(const MultiPoly &p, double t);
    std::complex<double> value(const std::array<std::complex<double>, 3> &v) const;
    std::array<std::complex<double>, 3> gradient(const std::array<std::complex<double>, 3> &v) const;
    std::array<std::array<std::complex<double>, 3>, 3>
    hessian(const std::array<std::complex<double>, 3> &v) const;
    // Derivative of the gradient in t.
    std::array<std::complex<double>, 3> gradient_t(const std::array<std::complex<double>, 3> &v) const;

private:
    struct Term {
        std::array<int, 3> e;
        std::complex<double> c;  // coefficient at the given t
        std::complex<double> ct; // its t-derivative
    };
    std::vector<Term> terms_;
};

struct FamilyParams {
    int p = 0, q = 0, r = 0;
    GaussianRational a{0};
    std::optional<Rational> lambda;
    Rational l{0};
    Rational mu{0};
    std::optional<MultiPoly> hpq; // user-supplied h_{p,q}(x, y)
    std::optional<MultiPoly> qr;  // user-supplied Q_r(z)
};

// Names: tilde_m, check_m, M, L, M_r, N_pqr, tpqr_germ.
MultiPoly builtin_family(const std::string &name, const FamilyParams &params = {});
std::vector<std::string> builtin_family_names();

} // namespace milnor
