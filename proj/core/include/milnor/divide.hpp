// Divides of real morsifications: validation, the intersection form of the
// associated distinguished basis, and the ribbon-surface model of the fibre.
#pragma once

#include "milnor/lattice.hpp"

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace milnor {

class DivideError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Port i of a crossing; ports are numbered counter-clockwise 0..3 and the
// sector between port i and port i+1 is sector i+1.
struct Dart {
    std::string crossing;
    int port = 0;
    auto operator<=>(const Dart &) const = default;
};

// Every dart of every crossing maps to its partner, or to nullopt when the
// arc runs to the boundary of the disc.
struct HalfEdgeStructure {
    std::map<Dart, std::optional<Dart>> link;
};

struct Region {
    std::string id;
    int sign = 1; // +1 maximum, -1 minimum
};

struct Incidence {
    std::string region;
    std::string crossing;
    int mult = 1;
};

struct Divide {
    int branches = 0;
    std::vector<std::string> crossings;
    std::vector<Region> regions;
    std::vector<Incidence> incidence;
    std::vector<std::pair<std::string, std::string>> adjacency;
    std::optional<HalfEdgeStructure> half_edges;
};

struct RibbonSurface {
    long euler = 0;
    long boundary_components = 0;
    long genus = 0;
    // One bit per crossing: a consistent choice of local orientation.
    std::map<std::string, int> orientation;
};

// Returns mu = 2k - r + 1 after checking the structural invariants.
int validate(const Divide &d);

DistinguishedBasis acampo_form(const Divide &d);
// Incidences with multiplicity above one.
std::vector<std::string> acampo_warnings(const Divide &d);

RibbonSurface divide_to_surface(const Divide &d);

// Divide described by its branches as ordered lists of crossing visits.
// Each crossing is visited twice; `signs` gives the orientation of the
// crossing (sign of the cross product of first and second tangent, the
// first visit being the lexicographically smaller (branch, index)).
struct StrandData {
    std::vector<std::vector<std::string>> branches;
    std::map<std::string, int> signs;
};

// Fixes the max/min colouring: sector `sector` at `crossing` gets `sign`.
struct SectorReference {
    std::string crossing;
    int sector = 0;
    int sign = -1;
};

HalfEdgeStructure half_edges_from_strands(const StrandData &strands);
// Regions are named r0, r1, ... in tracing order.
Divide divide_from_strands(const StrandData &strands, const SectorReference &ref);

// Divide of the h_{p,q} morsification: seven-point kernel a..g plus chains
// of p-3 and q-3 extra crossings, named p3, p5, ... and q3, q5, ...; lens
// regions are named p4, p6, ... and q4, q6, .... Ordered for acampo_form as
// minima (a), saddles (chains, b, c, d, e), maxima (f, g, lenses).
Divide hpq_divide(int p, int q);
// The kernel divide alone, hpq_divide(3, 3).
Divide kernel_divide();
// Four lines in general position: x = 0, y = 0, y = x + 2, y = -x - 1.
Divide four_lines_divide();
StrandData hpq_strands(int p, int q);
StrandData four_lines_strands();

// Mutation script carrying the stabilised h_{p,q} basis to the reference
// T_{p,q,2} form: the kernel twists, relabelling, then a trailing block of
// trivial mutations and rotations reaching A, B, P2.., Q2.., P1, Q1, R1.
// `suffix` is appended to the divide labels (":1" after d = 1 stabilisation).
MutationScript tpq2_script(int p, int q, const std::string &suffix = ":1");

} // namespace milnor
