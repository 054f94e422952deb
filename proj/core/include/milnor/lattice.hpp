// Intersection lattices of vanishing cycles, distinguished bases and
// Picard-Lefschetz mutations.
#pragma once

#include "milnor/exact.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace milnor {

class LatticeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ordered cycle names plus their symmetric Gram matrix, diagonal -2.
struct IntersectionLattice {
    std::vector<std::string> labels;
    IntMatrix gram;

    std::size_t rank() const { return labels.size(); }
    // Index of a label, or throws LatticeError.
    std::size_t index_of(const std::string &label) const;
    std::optional<std::size_t> find(const std::string &label) const;
    std::int64_t pairing(const std::string &a, const std::string &b) const;
    // Throws LatticeError when the stored data breaks an invariant.
    void validate() const;

    friend bool operator==(const IntersectionLattice &, const IntersectionLattice &) = default;
};

IntersectionLattice make_lattice(std::vector<std::string> labels, IntMatrix gram);

struct DistinguishedBasis {
    IntersectionLattice lattice;
    IntMatrix initial_gram;
    // Column j holds the current cycle j in the initial basis.
    std::optional<IntMatrix> coords;
    // Per current position: twists applied to that cycle, oldest first.
    std::vector<std::vector<std::string>> history;

    static DistinguishedBasis from_lattice(const IntersectionLattice &lattice,
                                           bool track_coords = true);
    const std::vector<std::string> &labels() const { return lattice.labels; }
    const IntMatrix &gram() const { return lattice.gram; }
};

enum class StepKind { right, left, swap, twist, rotate, rename };

struct Step {
    StepKind kind = StepKind::right;
    std::size_t position = 0; // 1-based, for right/left/swap/rotate
    std::string target;       // twist target or old name
    std::string tool;         // twist tool or new name
    bool inverse = false;

    static Step right(std::size_t pos) { return {StepKind::right, pos, {}, {}, false}; }
    static Step left(std::size_t pos) { return {StepKind::left, pos, {}, {}, false}; }
    static Step swap(std::size_t pos) { return {StepKind::swap, pos, {}, {}, false}; }
    static Step rotate(std::size_t pos) { return {StepKind::rotate, pos, {}, {}, false}; }
    static Step twist(std::string target, std::string tool, bool inverse = false) {
        return {StepKind::twist, 0, std::move(target), std::move(tool), inverse};
    }
    static Step rename(std::string from, std::string to) {
        return {StepKind::rename, 0, std::move(from), std::move(to), false};
    }

    std::string to_string() const;
    friend bool operator==(const Step &, const Step &) = default;
};

struct MutationScript {
    std::vector<Step> steps;

    // One step per line; blank lines and '#' comments are skipped.
    static MutationScript parse(const std::string &text);
    std::string to_text() const;
};

struct LatticeInvariants {
    std::size_t rank_of_form = 0;
    std::size_t nullity = 0;
    BigInt det = 0;
    std::pair<std::size_t, std::size_t> signature{0, 0};
    // All mu diagonal entries of the Smith form, zeros last.
    std::vector<BigInt> smith;

    friend bool operator==(const LatticeInvariants &, const LatticeInvariants &) = default;
};

struct SmithDecomposition {
    std::vector<BigInt> diagonal;
    // Inverse of the right transform V in U*G*V = D; rows give coordinates
    // of a vector in the basis formed by the columns of V.
    std::vector<std::vector<BigInt>> right_inverse;
};

IntVector reflect(const IntersectionLattice &lattice, std::size_t a, const IntVector &x);

// Elementary steps only (right, left, swap, rotate, rename).
DistinguishedBasis mutate(const DistinguishedBasis &basis, const Step &step);

// Resolves a named twist into elementary steps on the current basis.
std::vector<Step> resolve_twist(const DistinguishedBasis &basis, const Step &twist);

struct ScriptRun {
    DistinguishedBasis result;
    std::vector<Step> elementary;
};

ScriptRun run_script(const DistinguishedBasis &basis, const MutationScript &script);

SmithDecomposition smith_decomposition(const IntMatrix &m);
std::pair<std::size_t, std::size_t> rational_signature(const IntMatrix &gram,
                                                       std::size_t *rank = nullptr);
LatticeInvariants invariants(const IntersectionLattice &lattice);

// Reference Dynkin form of T_{p,q,r}; validates 1/p+1/q+1/r <= 1.
IntersectionLattice gabrielov_tpqr_form(int p, int q, int r);
// Same shape without the curvature precondition, e.g. for T_{3,3,2}-type
// arm data; arms of length p-1, q-1, r-1 must still be non-negative.
IntersectionLattice tpqr_arm_form(int p, int q, int r);

struct TorusClassReport {
    bool in_nullspace = false;
    bool primitive = false;
};

TorusClassReport torus_class_report(const IntersectionLattice &lattice);

// Diagonal +-1 matrix D with D*G1*D = G2 after permuting lattice one into
// label order of lattice two. Returns the signs in lattice-two order.
std::optional<std::vector<int>> sign_normalization(const IntersectionLattice &a,
                                                   const IntersectionLattice &b);
bool equal_up_to_sign(const IntersectionLattice &a, const IntersectionLattice &b);

// Swap and rotation steps carrying the current order to `target` when the
// two orders differ by trivial mutations and cyclic rotations.
std::vector<Step> reorder_by_trivial_mutations(const IntersectionLattice &lattice,
                                               const std::vector<std::string> &target);

std::string to_dot(const IntersectionLattice &lattice);

} // namespace milnor
