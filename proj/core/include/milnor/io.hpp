// JSON, CSV and text serialisation for every data type of the library.
#pragma once

#include "milnor/critpath.hpp"
#include "milnor/divide.hpp"
#include "milnor/floer.hpp"
#include "milnor/lattice.hpp"
#include "milnor/poly.hpp"
#include "milnor/quiver.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace milnor {

using Json = nlohmann::ordered_json;

// Malformed or ill-shaped input. The message carries line and column for
// syntax errors.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::filesystem::path &path);
// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path &path, const std::string &content);
Json parse_json(const std::string &text, const std::string &source = "<input>");
std::string dump_json(const Json &j);

Rational rational_from_json(const Json &j);
Json rational_to_json(const Rational &r);
GaussianRational gaussian_from_json(const Json &j);
Json gaussian_to_json(const GaussianRational &g);
Json complex_to_json(std::complex<double> c);

// {"labels": [...], "gram": [[...]]}; unknown keys are ignored.
IntersectionLattice lattice_from_json(const Json &j);
Json lattice_to_json(const IntersectionLattice &l);
Json invariants_to_json(const LatticeInvariants &inv);
// Lattice JSON plus "invariants", "coords" and "history" blocks.
Json basis_to_json(const DistinguishedBasis &b);

// Either the explicit form (branches, crossings, regions, incidence,
// adjacency, optional half_edges) or {"strands": {...}, "reference": {...}}.
Divide divide_from_json(const Json &j);
Json divide_to_json(const Divide &d);
Json surface_to_json(const RibbonSurface &s);

Quiver quiver_from_json(const Json &j);
Json quiver_to_json(const Quiver &q);
Json mirror_report_to_json(const MirrorReport &r);

LaurentPoly laurent_from_json(const Json &j);
Json laurent_to_json(const LaurentPoly &p);
LaurentComplex laurent_complex_from_json(const Json &j);
Json laurent_complex_to_json(const LaurentComplex &c);
Json cohomology_to_json(const CohomologyRanks &r);
Json obstruction_to_json(const ObstructionReport &r);

// {"terms": [{"exp": [x, y, z, t], "coef": <rational or [re, im]>}]}.
MultiPoly poly_from_json(const Json &j);
Json poly_to_json(const MultiPoly &p);
Json solve_to_json(const SolveResult &r);
Json track_to_json(const CriticalTrack &t);
// Columns t, path_id, re(value), im(value), escaped.
std::string track_to_csv(const CriticalTrack &t);

} // namespace milnor
