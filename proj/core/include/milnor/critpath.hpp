// Critical points of polynomial functions and their continuation along a
// one-parameter family.
#pragma once

#include "milnor/poly.hpp"

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

namespace milnor {

class CritError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Point3 = std::array<std::complex<double>, 3>;

struct SolveOptions {
    std::size_t starts = 3000;
    std::uint64_t seed = 0;
    double box_radius = 4.0;
    double dedupe_tol = 1e-6;
    double residual_tol = 1e-9;
    int max_iterations = 200;
    // Jacobians with reciprocal condition number below this are reported
    // as near-degenerate.
    double degenerate_rcond = 1e-8;
    unsigned threads = 1;
};

struct CriticalPoint {
    Point3 point{};
    std::complex<double> value;
    double residual = 0;
    double rcond = 0;
    bool degenerate = false;
};

struct SolveResult {
    std::vector<CriticalPoint> points; // canonical order
    std::size_t bezout_bound = 0;
    std::size_t converged_starts = 0;
    // Distinct critical values, merged at dedupe_tol.
    std::vector<std::complex<double>> values;
};

// Solves grad f = 0 in the variables among x, y, z that occur in f (t is
// fixed to `t`).
SolveResult grad_solve(const MultiPoly &f, const SolveOptions &opts = {}, double t = 0.0);

struct TrackOptions {
    SolveOptions solve;
    double escape_radius = 1e3;
    double min_step = 1e-7;
    int corrector_iterations = 12;
};

struct TrackPoint {
    Point3 point{};
    std::complex<double> value;
    bool escaped = false;
    double residual = 0;
    double rcond = 0;
};

struct PathSummary {
    bool escaped = false;
    double escape_t = 0; // first grid value at which the path was flagged
    bool lost = false;
    double lost_t = 0;
    bool degenerate_end = false;
};

struct CriticalTrack {
    std::vector<double> t_grid;
    // snapshots[k][path]: state of each path at t_grid[k]; once escaped, the
    // last state is repeated with escaped = true.
    std::vector<std::vector<TrackPoint>> snapshots;
    std::vector<PathSummary> paths;

    std::size_t escaped_count() const;
    std::size_t surviving_count() const;
};

std::vector<double> uniform_grid(std::size_t points, double t0 = 0.0, double t1 = 1.0);
CriticalTrack track_family(const MultiPoly &family, const std::vector<double> &t_grid,
                           const TrackOptions &opts = {});

} // namespace milnor
