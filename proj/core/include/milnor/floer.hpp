// Floer complexes of the surgery torus with a rank-one local system against
// the vanishing cycles of T_{p,q,r}, over Laurent polynomials in the two
// holonomies, plus the surgery exactness and Maslov predicates.
#pragma once

#include "milnor/exact.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace milnor {

class FloerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Element of Z[alpha^{+-1}, beta^{+-1}]: exponent pair -> coefficient.
class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly constant(std::int64_t c);
    static LaurentPoly monomial(std::int64_t c, int alpha_exp, int beta_exp);

    const std::map<std::pair<int, int>, std::int64_t> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // A unit of the Laurent ring: a single monomial with coefficient +-1.
    bool is_unit() const;

    LaurentPoly operator+(const LaurentPoly &o) const;
    LaurentPoly operator-(const LaurentPoly &o) const;
    LaurentPoly operator*(const LaurentPoly &o) const;
    friend bool operator==(const LaurentPoly &, const LaurentPoly &) = default;

    GaussianRational evaluate(const GaussianRational &alpha, const GaussianRational &beta) const;
    std::complex<double> evaluate(std::complex<double> alpha, std::complex<double> beta) const;
    std::string to_string() const;

private:
    void add_term(std::pair<int, int> e, std::int64_t c);
    std::map<std::pair<int, int>, std::int64_t> terms_;
};

struct Generator {
    std::string name;
    int degree = 0;
};

struct LaurentComplex {
    std::vector<Generator> generators;
    // diff[row][col]: coefficient of generator row in the differential of col.
    std::vector<std::vector<LaurentPoly>> diff;

    // Throws FloerError unless the differential raises degree by one and
    // squares to zero as a Laurent identity.
    void validate() const;
    bool squares_to_zero() const;
};

// Vanishing-cycle labels of T_{p,q,r}: A, B, P1.., Q1.., R1...
std::vector<std::string> tpqr_cycle_labels(int p, int q, int r);
LaurentComplex tpqr_floer_complex(int p, int q, int r, const std::string &cycle);

struct CohomologyRanks {
    std::map<int, std::size_t> by_degree; // nonzero ranks only
    std::size_t total = 0;
};

CohomologyRanks cohomology_at(const LaurentComplex &c, const GaussianRational &alpha,
                              const GaussianRational &beta);
CohomologyRanks cohomology_at(const LaurentComplex &c, std::complex<double> alpha,
                              std::complex<double> beta, double rank_tol = 1e-9);

struct SurgeryData {
    std::pair<double, double> disc_areas{0, 0};
    std::pair<double, double> surgery_params{0, 0};
    int index_diff = 0;
};

struct SurgeryVerdict {
    bool exact = false;
    bool maslov_zero = false;
};

SurgeryVerdict surgery_predicates(const SurgeryData &s, double area_tol);

struct CyclePairing {
    std::string cycle;
    std::size_t rank = 0;
};

struct ObstructionReport {
    int p = 0, q = 0, r = 0;
    std::uint64_t seed = 0;
    GaussianRational alpha;
    GaussianRational beta;
    std::vector<CyclePairing> pairings;
    std::size_t self_rank = 4; // HF(T, T) = H*(T^2), quoted
    bool all_vanish = false;
    std::string verdict;
};

// Draws a holonomy pair from `seed`, avoiding alpha = 1 and beta = 1.
std::pair<GaussianRational, GaussianRational> sample_holonomy(std::uint64_t seed);
ObstructionReport generation_obstruction_report(int p, int q, int r, std::uint64_t seed = 0);
ObstructionReport generation_obstruction_report(int p, int q, int r, const GaussianRational &alpha,
                                                const GaussianRational &beta);

} // namespace milnor
