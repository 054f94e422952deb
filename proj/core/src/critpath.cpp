#include "milnor/critpath.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace milnor {

namespace {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

struct System {
    const CompiledPoly &f;
    std::vector<int> active;

    Point3 embed(const Vec &v) const {
        Point3 p{0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < active.size(); ++i) p[static_cast<std::size_t>(active[i])] = v(static_cast<Eigen::Index>(i));
        return p;
    }
    Vec grad(const Vec &v) const {
        const auto g = f.gradient(embed(v));
        Vec out(static_cast<Eigen::Index>(active.size()));
        for (std::size_t i = 0; i < active.size(); ++i) out(static_cast<Eigen::Index>(i)) = g[static_cast<std::size_t>(active[i])];
        return out;
    }
    Vec grad_t(const Vec &v) const {
        const auto g = f.gradient_t(embed(v));
        Vec out(static_cast<Eigen::Index>(active.size()));
        for (std::size_t i = 0; i < active.size(); ++i) out(static_cast<Eigen::Index>(i)) = g[static_cast<std::size_t>(active[i])];
        return out;
    }
    Mat hess(const Vec &v) const {
        const auto h = f.hessian(embed(v));
        const auto n = static_cast<Eigen::Index>(active.size());
        Mat out(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                out(i, j) = h[static_cast<std::size_t>(active[static_cast<std::size_t>(i)])]
                             [static_cast<std::size_t>(active[static_cast<std::size_t>(j)])];
        return out;
    }
};

double inf_norm(const Vec &v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

double reciprocal_condition(const Mat &m) {
    if (m.size() == 0) return 1.0;
    Eigen::JacobiSVD<Mat> svd(m);
    const auto &s = svd.singularValues();
    if (s(0) == 0.0) return 0.0;
    return s(s.size() - 1) / s(0);
}

// Solves m dx = rhs, falling back to a Levenberg-Marquardt regularised
// least-squares step when m is close to singular.
Vec robust_solve(const Mat &m, const Vec &rhs) {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &s = svd.singularValues();
    if (s.size() && s(0) > 0 && s(s.size() - 1) / s(0) > 1e-12) return svd.solve(rhs);
    const double lam = 1e-12 * (s.size() ? s(0) * s(0) : 1.0) + 1e-300;
    const Mat a = m.adjoint() * m + lam * Mat::Identity(m.cols(), m.cols());
    return a.ldlt().solve(m.adjoint() * rhs);
}

// Damped Newton on grad = 0. Returns true when the residual reaches tol.
bool newton(const System &sys, Vec &v, int max_iter, double tol, double blowup = 1e8, int polish_steps = 2) {
    Vec g = sys.grad(v);
    double r = inf_norm(g);
    int polish = 0;
    for (int it = 0; it < max_iter; ++it) {
        if (r <= tol) {
            // A couple of extra steps tighten the root; keep them only if
            // they do not increase the residual.
            if (polish++ >= polish_steps) return true;
        }
        const Vec dx = robust_solve(sys.hess(v), -g);
        if (!dx.allFinite()) return r <= tol;
        double step = 1.0;
        Vec best = v + dx;
        Vec gb = sys.grad(best);
        double rb = inf_norm(gb);
        for (int k = 0; k < 12 && !(rb < r) && r > tol; ++k) {
            step *= 0.5;
            best = v + step * dx;
            gb = sys.grad(best);
            rb = inf_norm(gb);
        }
        if (r <= tol && !(rb < r)) return true;
        if (!(rb < r) && step < 1e-3) {
            // Accept the full step anyway to escape a local plateau.
            best = v + dx;
            gb = sys.grad(best);
            rb = inf_norm(gb);
        }
        v = best;
        g = gb;
        r = rb;
        if (!v.allFinite() || v.norm() > blowup) return false;
    }
    return r <= tol;
}

double radical_inverse(std::uint64_t i, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        });
    for (auto &t : pool) t.join();
}

bool point_less(const Point3 &a, const Point3 &b) {
    // Rounded keys keep the order stable against last-bit noise.
    auto key = [](double v) { return std::round(v * 1e8); };
    for (std::size_t k = 0; k < 3; ++k) {
        if (key(a[k].real()) != key(b[k].real())) return a[k].real() < b[k].real();
        if (key(a[k].imag()) != key(b[k].imag())) return a[k].imag() < b[k].imag();
    }
    return false;
}

double distance(const Point3 &a, const Point3 &b) {
    double s = 0;
    for (std::size_t k = 0; k < 3; ++k) s += std::norm(a[k] - b[k]);
    return std::sqrt(s);
}

double magnitude(const Point3 &a) { return distance(a, Point3{0.0, 0.0, 0.0}); }

std::vector<int> active_variables(const MultiPoly &f) {
    const auto u = f.uses();
    std::vector<int> a;
    for (int k = 0; k < 3; ++k)
        if (u[static_cast<std::size_t>(k)]) a.push_back(k);
    return a;
}

} // namespace

SolveResult grad_solve(const MultiPoly &f, const SolveOptions &opts, double t) {
    if (opts.starts == 0) throw CritError("need at least one start");
    if (opts.residual_tol <= 0 || opts.dedupe_tol <= 0) throw CritError("tolerances must be positive");
    const CompiledPoly cf(f, t);
    const System sys{cf, active_variables(f)};
    const auto n = sys.active.size();
    SolveResult res;
    int deg = 0;
    for (const auto &[e, c] : f.terms()) deg = std::max(deg, e[0] + e[1] + e[2]);
    res.bezout_bound = 1;
    for (std::size_t k = 0; k < n; ++k) res.bezout_bound *= static_cast<std::size_t>(std::max(deg - 1, 0));
    if (n == 0) {
        res.points.push_back({{0.0, 0.0, 0.0}, cf.value({0.0, 0.0, 0.0}), 0.0, 1.0, false});
        res.values.push_back(res.points[0].value);
        res.converged_starts = 1;
        return res;
    }
    static const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13};
    std::vector<std::optional<Vec>> found(opts.starts);
    parallel_for(opts.starts, opts.threads, [&](std::size_t k) {
        const std::uint64_t idx = opts.seed * 1000003ULL + k + 1;
        Vec v(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            const double re = 2 * radical_inverse(idx, primes[2 * i]) - 1;
            const double im = 2 * radical_inverse(idx, primes[2 * i + 1]) - 1;
            v(static_cast<Eigen::Index>(i)) = opts.box_radius * std::complex<double>(re, im);
        }
        if (newton(sys, v, opts.max_iterations, opts.residual_tol)) found[k] = v;
    });
    std::vector<CriticalPoint> pts;
    for (const auto &v : found) {
        if (!v) continue;
        ++res.converged_starts;
        const Point3 p = sys.embed(*v);
        bool dup = false;
        for (const auto &q : pts)
            if (distance(q.point, p) <= opts.dedupe_tol) {
                dup = true;
                break;
            }
        if (dup) continue;
        CriticalPoint c;
        c.point = p;
        c.value = cf.value(p);
        c.residual = inf_norm(sys.grad(*v));
        c.rcond = reciprocal_condition(sys.hess(*v));
        c.degenerate = c.rcond < opts.degenerate_rcond;
        pts.push_back(c);
    }
    if (pts.empty()) throw CritError("no start converged to a critical point");
    if (res.bezout_bound && pts.size() > res.bezout_bound)
        throw CritError("more critical points than the Bezout bound: the critical set is "
                        "probably not isolated");
    std::sort(pts.begin(), pts.end(), [](const CriticalPoint &a, const CriticalPoint &b) {
        return point_less(a.point, b.point);
    });
    res.points = std::move(pts);
    for (const auto &c : res.points) {
        bool dup = false;
        for (const auto &v : res.values)
            if (std::abs(v - c.value) <= opts.dedupe_tol * std::max(1.0, std::abs(v))) dup = true;
        if (!dup) res.values.push_back(c.value);
    }
    std::sort(res.values.begin(), res.values.end(), [](auto a, auto b) {
        if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return res;
}

std::size_t CriticalTrack::escaped_count() const {
    return static_cast<std::size_t>(std::count_if(paths.begin(), paths.end(), [](const PathSummary &p) { return p.escaped; }));
}

std::size_t CriticalTrack::surviving_count() const {
    return static_cast<std::size_t>(
        std::count_if(paths.begin(), paths.end(), [](const PathSummary &p) { return !p.escaped && !p.lost; }));
}

std::vector<double> uniform_grid(std::size_t points, double t0, double t1) {
    if (points < 2) throw CritError("a grid needs at least two points");
    std::vector<double> g(points);
    for (std::size_t k = 0; k < points; ++k)
        g[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(points - 1);
    g.back() = t1;
    return g;
}

CriticalTrack track_family(const MultiPoly &family, const std::vector<double> &grid, const TrackOptions &opts) {
    if (grid.size() < 2) throw CritError("a grid needs at least two points");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1])) throw CritError("grid is not increasing");
    const std::vector<int> active = active_variables(family);
    const SolveResult start = grad_solve(family, opts.solve, grid[0]);
    const std::size_t paths = start.points.size();
    const auto n = static_cast<Eigen::Index>(active.size());

    CriticalTrack tr;
    tr.t_grid = grid;
    tr.paths.assign(paths, {});
    tr.snapshots.assign(grid.size(), std::vector<TrackPoint>(paths));

    auto restrict = [&](const Point3 &p) {
        Vec v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = p[static_cast<std::size_t>(active[static_cast<std::size_t>(i)])];
        return v;
    };

    parallel_for(paths, opts.solve.threads, [&](std::size_t id) {
        Vec v = restrict(start.points[id].point);
        PathSummary &sum = tr.paths[id];
        auto record = [&](std::size_t k, const System &sys, bool escaped) {
            TrackPoint &tp = tr.snapshots[k][id];
            tp.point = sys.embed(v);
            tp.value = sys.f.value(tp.point);
            tp.escaped = escaped;
            tp.residual = inf_norm(sys.grad(v));
            tp.rcond = reciprocal_condition(sys.hess(v));
        };
        {
            const CompiledPoly f0(family, grid[0]);
            record(0, System{f0, active}, false);
        }
        double t = grid[0];
        for (std::size_t k = 1; k < grid.size(); ++k) {
            if (sum.escaped || sum.lost) {
                tr.snapshots[k][id] = tr.snapshots[k - 1][id];
                continue;
            }
            double h = grid[k] - t;
            bool escaped = false;
            while (t < grid[k] && !escaped) {
                const double step = std::min(h, grid[k] - t);
                const CompiledPoly f_here(family, t);
                const System here{f_here, active};
                const Mat hs = here.hess(v);
                Vec tangent = Vec::Zero(n);
                if (reciprocal_condition(hs) > 1e-10) tangent = robust_solve(hs, -here.grad_t(v));
                const Vec predicted = v + step * tangent;
                const CompiledPoly f_next(family, t + step);
                const System next{f_next, active};
                Vec w = predicted;
                const bool ok = newton(next, w, std::max(opts.corrector_iterations, opts.solve.max_iterations), opts.solve.residual_tol, 1e12, 0);
                const double scale = 1.0 + v.norm();
                if (ok && (w - predicted).norm() <= 0.05 * scale + 10 * step * tangent.norm()) {
                    v = w;
                    t += step;
                    h = std::min(2 * step, grid[k] - grid[k - 1]);
                    const Point3 p = next.embed(v);
                    if (magnitude(p) > opts.escape_radius || std::abs(f_next.value(p)) > opts.escape_radius)
                        escaped = true;
                } else {
                    h = step / 2;
                    if (h < opts.min_step) {
                        // Failure while the point is already large counts as escape.
                        const Point3 p = here.embed(v);
                        if (magnitude(p) > opts.escape_radius / 10 ||
                            std::abs(f_here.value(p)) > opts.escape_radius / 10) {
                            escaped = true;
                        } else {
                            sum.lost = true;
                            sum.lost_t = t;
                        }
                        break;
                    }
                }
            }
            const CompiledPoly fk(family, grid[k]);
            const System sk{fk, active};
            if (sum.lost) {
                tr.snapshots[k][id] = tr.snapshots[k - 1][id];
                continue;
            }
            if (escaped) {
                sum.escaped = true;
                sum.escape_t = grid[k];
                t = grid[k];
                record(k, sk, true);
                continue;
            }
            t = grid[k];
            record(k, sk, false);
        }
        const auto &last = tr.snapshots.back()[id];
        sum.degenerate_end = !sum.escaped && last.rcond < opts.solve.degenerate_rcond;
    });
    return tr;
}

} // namespace milnor
