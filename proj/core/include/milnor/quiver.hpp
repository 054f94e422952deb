// Quivers with relations, their path algebras, one-sided twisted complexes
// and the tilting comparison between the directed Fukaya algebra of
// T_{p,q,r} and the Chen-Krause algebra.
#pragma once

#include "milnor/exact.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace milnor {

class QuiverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Arrow {
    std::string src;
    std::string dst;
    std::string name;
};

// Arrows listed in traversal order: the first arrow leaves the source.
struct RelationTerm {
    std::int64_t coef = 1;
    std::vector<std::string> path;
};
using Relation = std::vector<RelationTerm>;

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;

    std::size_t vertex_index(const std::string &v) const;
    std::size_t arrow_index(const std::string &a) const;
    // Throws QuiverError on unknown names, cycles or ill-typed relations.
    void validate() const;
};

struct Path {
    std::size_t src = 0;
    std::size_t dst = 0;
    std::vector<std::size_t> arrows; // traversal order; empty for an idempotent
};

// Dense coordinates over the basis of a PathAlgebra.
using Element = std::vector<Rational>;

class PathAlgebra {
public:
    explicit PathAlgebra(Quiver q);

    const Quiver &quiver() const { return quiver_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Path> &basis() const { return basis_; }
    // Global basis indices of the paths from s to t.
    const std::vector<std::size_t> &bucket(std::size_t s, std::size_t t) const;
    std::size_t bucket_dim(const std::string &s, const std::string &t) const;
    std::string path_name(const Path &p) const;

    Element zero() const { return Element(dim(), Rational(0)); }
    // Normal form of a path given by arrow names in traversal order, or the
    // idempotent of `vertex` when `arrows` is empty.
    Element path(const std::vector<std::string> &arrows, const std::string &vertex = {}) const;
    Element idempotent(const std::string &vertex) const;
    // g o f: first f, then g.
    Element compose(const Element &g, const Element &f) const;
    bool is_zero(const Element &e) const;
    // Source and target vertex when e lies in a single bucket.
    std::optional<std::pair<std::size_t, std::size_t>> bucket_of(const Element &e) const;

    // Structure constants: product(i, j) = basis_i o basis_j.
    const Element *product(std::size_t i, std::size_t j) const;
    bool associative() const;

private:
    struct Bucket {
        std::vector<Path> paths;                 // every path s -> t, canonical order
        std::vector<std::vector<Rational>> rref; // ideal rows, pivot = 1
        std::vector<std::size_t> pivot;          // pivot column per row
        std::vector<long> column_to_basis;       // -1 for pivot columns
    };
    Element reduce(std::size_t s, std::size_t t, std::size_t path_col) const;
    std::size_t path_column(const Path &p) const;

    Quiver quiver_;
    std::vector<Path> basis_;
    std::map<std::pair<std::size_t, std::size_t>, Bucket> buckets_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> basis_buckets_;
    std::map<std::pair<std::size_t, std::size_t>, Element> table_;
};

// Quotient dimensions per (source, target) computed over Z/prime.
std::map<std::pair<std::string, std::string>, std::size_t>
bucket_dimensions_mod_p(const Quiver &q, std::uint64_t prime);

// Directed Fukaya algebra of T_{p,q,r}: vertices A, B, P1.., Q1.., R1..;
// arrows u, v: A->B, p_B, q_B, r_B and arm arrows p1.., q1.., r1...
Quiver tpqr_fukaya_quiver(int p, int q, int r);
// Chen-Krause algebra: vertices A, B, P'1.., Q'1.., R'1..; arrows a1, a2,
// b1, b2, b3 and arm arrows x1.., y1.., z1... `perturbed` replaces the
// relation b3(a1 - a2) by b3 a1.
Quiver chen_krause_quiver(int p, int q, int r, bool perturbed = false);

struct TwistedComplex {
    std::vector<std::pair<std::string, int>> objects; // vertex and shift
    // (k, l) -> component of the differential from object l to object k, l < k
    std::map<std::pair<std::size_t, std::size_t>, Element> differential;
};

// Throws QuiverError unless the differential is strictly lower triangular,
// typed by the objects, of degree one and squares to zero.
void check_twisted_complex(const PathAlgebra &alg, const TwistedComplex &c);
// Cohomology dimensions of Hom(c1, c2) by degree; zero degrees omitted.
std::map<int, std::size_t> twisted_hom(const PathAlgebra &alg, const TwistedComplex &c1,
                                       const TwistedComplex &c2);

// The object {X1 -> X2 -> ... -> X_{len}} on an arm of the Fukaya algebra,
// with X in {P, Q, R}; arm_object(alg, 'P', p, i) is P'_i.
TwistedComplex arm_object(const PathAlgebra &alg, char arm, int arm_length, int i);
TwistedComplex single_object(const std::string &vertex);

struct MirrorPair {
    std::string src;
    std::string dst;
    std::size_t algebra_dim = 0;
    std::map<int, std::size_t> hom_dims;
    std::size_t image_rank = 0;
};

struct MirrorReport {
    int p = 0, q = 0, r = 0;
    bool perturbed = false;
    bool pass = false;
    std::size_t algebra_dim = 0;
    std::size_t endomorphism_dim = 0;
    std::vector<MirrorPair> pairs;
    std::vector<std::string> witnesses;
};

MirrorReport verify_mirror(int p, int q, int r, bool perturbed = false);

} // namespace milnor
