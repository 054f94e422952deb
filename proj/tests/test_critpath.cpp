#include "milnor/critpath.hpp"

#include <doctest.h>

#include <cmath>

using namespace milnor;

namespace {

GaussianRational coef(const MultiPoly &p, Exponents e) {
    const auto it = p.terms().find(e);
    return it == p.terms().end() ? GaussianRational(0) : it->second;
}

double norm3(const Point3 &p) { return std::sqrt(std::norm(p[0]) + std::norm(p[1]) + std::norm(p[2])); }

SolveOptions fast(std::size_t starts = 600) {
    SolveOptions o;
    o.starts = starts;
    return o;
}

} // namespace

TEST_SUITE("critpath") {

TEST_CASE("polynomial arithmetic") {
    const auto x = MultiPoly::x(), y = MultiPoly::y();
    const auto p = (x + y).pow(2);
    CHECK(coef(p, {1, 1, 0, 0}) == GaussianRational(2));
    CHECK((p - x * x - y * y - GaussianRational(2) * x * y).is_zero());
    CHECK(p.diff(0) == GaussianRational(2) * (x + y));
    CHECK(p.degree() == 2);
    const auto f = MultiPoly::t() * x;
    CHECK(f.at_t(Rational(1, 2)) == GaussianRational(Rational(1, 2)) * x);
    CHECK(f.uses() == std::array<bool, 4>{true, false, false, true});
}

TEST_CASE("built-in families") {
    const auto m0 = builtin_family("M").at_t(0);
    CHECK(coef(m0, {0, 0, 2, 0}) == GaussianRational(18, 8));
    CHECK(coef(m0, {0, 0, 3, 0}) == GaussianRational(0, Rational(16, 3)));
    CHECK(builtin_family("check_m") ==
          builtin_family("tilde_m") - GaussianRational(2) * MultiPoly::x() * MultiPoly::y());
    CHECK_THROWS_AS(builtin_family("nope"), PolyError);
    CHECK_THROWS_AS(builtin_family("M_r"), PolyError);

    FamilyParams g;
    g.p = g.q = g.r = 3;
    CHECK_NOTHROW(builtin_family("tpqr_germ", g));
    g.a = GaussianRational(-3);
    CHECK_THROWS_AS(builtin_family("tpqr_germ", g), PolyError);
    g.p = 4, g.q = 4, g.r = 2;
    g.a = GaussianRational(3);
    CHECK_THROWS_AS(builtin_family("tpqr_germ", g), PolyError);
    g.a = GaussianRational(1);
    CHECK_NOTHROW(builtin_family("tpqr_germ", g));
    g.p = 3, g.q = 4, g.r = 5;
    g.a = GaussianRational(0);
    CHECK_THROWS_AS(builtin_family("tpqr_germ", g), PolyError);
    g.p = 2, g.q = 3, g.r = 5;
    g.a = GaussianRational(1);
    CHECK_THROWS_AS(builtin_family("tpqr_germ", g), PolyError);
    FamilyParams lam;
    lam.p = 4, lam.q = 5, lam.r = 2;
    lam.lambda = Rational(2);
    const auto x = MultiPoly::x(), y = MultiPoly::y(), z = MultiPoly::z();
    CHECK(builtin_family("tpqr_germ", lam) ==
          (x.pow(2) - y.pow(2)) * (x.pow(2) - GaussianRational(2) * y.pow(3)) + z.pow(2));

    FamilyParams mr;
    mr.qr = MultiPoly::z().pow(4);
    mr.l = Rational(1);
    const auto m_r = builtin_family("M_r", mr);
    // At l = 1 the user term drops out.
    CHECK(coef(m_r, {0, 0, 4, 0}).is_zero());
}

TEST_CASE("quadratic form has one critical point") {
    const auto x = MultiPoly::x(), y = MultiPoly::y(), z = MultiPoly::z();
    const auto r = grad_solve(x * x + y * y + z * z, fast(50));
    REQUIRE(r.points.size() == 1);
    CHECK(norm3(r.points[0].point) < 1e-12);
    CHECK(std::abs(r.points[0].value) < 1e-20);
    CHECK_FALSE(r.points[0].degenerate);
}

TEST_CASE("check_m: seven points, four values, minimum at the origin") {
    const auto r = grad_solve(builtin_family("check_m"));
    CHECK(r.points.size() == 7);
    CHECK(r.values.size() == 4);
    const CriticalPoint *lowest = &r.points.front();
    for (const auto &c : r.points) {
        CHECK(c.residual <= 1e-9);
        if (c.value.real() < lowest->value.real()) lowest = &c;
    }
    CHECK(norm3(lowest->point) < 1e-7);
    // Count is stable under doubling the start cloud.
    CHECK(grad_solve(builtin_family("check_m"), fast(6000)).points.size() == 7);
}

TEST_CASE("M at t = 0 has 14 critical points") {
    const auto r = grad_solve(builtin_family("M"));
    CHECK(r.points.size() == 14);
    CHECK(r.points.size() <= r.bezout_bound);
    for (const auto &c : r.points) CHECK(c.residual <= 1e-9);
}

TEST_CASE("results do not depend on the thread count") {
    SolveOptions one = fast(), four = fast();
    four.threads = 4;
    const auto a = grad_solve(builtin_family("M"), one), b = grad_solve(builtin_family("M"), four);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].point == b.points[i].point);
}

TEST_CASE("tracking M: six escapes, eight survivors") {
    const auto tr = track_family(builtin_family("M"), uniform_grid(51));
    CHECK(tr.paths.size() == 14);
    CHECK(tr.escaped_count() == 6);
    CHECK(tr.surviving_count() == 8);
    for (const auto &p : tr.paths)
        if (p.escaped) CHECK(p.escape_t <= 0.98);
    for (std::size_t i = 0; i < tr.paths.size(); ++i)
        if (tr.paths[i].escaped) CHECK(tr.snapshots.back()[i].escaped);
        else CHECK(tr.snapshots.back()[i].residual <= 1e-9);
}

TEST_CASE("tracking L: nothing escapes, eight paths throughout") {
    const auto tr = track_family(builtin_family("L"), uniform_grid(51));
    CHECK(tr.paths.size() == 8);
    CHECK(tr.escaped_count() == 0);
    CHECK(tr.surviving_count() == 8);
    for (const auto &snap : tr.snapshots) CHECK(snap.size() == 8);
}

TEST_CASE("grid refinement gives the same escapes and endpoints") {
    for (const char *name : {"M", "L"}) {
        CAPTURE(name);
        const auto coarse = track_family(builtin_family(name), uniform_grid(51));
        const auto fine = track_family(builtin_family(name), uniform_grid(101));
        REQUIRE(coarse.paths.size() == fine.paths.size());
        for (std::size_t i = 0; i < coarse.paths.size(); ++i) {
            CHECK(coarse.paths[i].escaped == fine.paths[i].escaped);
            if (coarse.paths[i].escaped) continue;
            const auto &a = coarse.snapshots.back()[i].point;
            const auto &b = fine.snapshots.back()[i].point;
            double d = 0;
            for (std::size_t k = 0; k < 3; ++k) d += std::norm(a[k] - b[k]);
            // Paths ending on a multiple root are only determined to about
            // the square root of the residual tolerance.
            const bool multiple = coarse.snapshots.back()[i].rcond < 1e-4;
            CHECK(std::sqrt(d) <= (multiple ? 1e-4 : 1e-6));
        }
    }
}

TEST_CASE("constant family gives identical snapshots") {
    const auto tr = track_family(builtin_family("check_m"), uniform_grid(6));
    for (const auto &snap : tr.snapshots)
        for (std::size_t i = 0; i < snap.size(); ++i) {
            CHECK(snap[i].point == tr.snapshots.front()[i].point);
            CHECK_FALSE(snap[i].escaped);
        }
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(track_family(builtin_family("M"), {0.0, 0.5, 0.5}), CritError);
    CHECK_THROWS_AS(uniform_grid(1), CritError);
    // A non-isolated critical set: f = x^2 y^2 vanishes to second order on
    // both axes.
    const auto x = MultiPoly::x(), y = MultiPoly::y();
    CHECK_THROWS_AS(grad_solve((x * y).pow(2), fast(200)), CritError);
}

}
