#include "milnor/floer.hpp"

#include <doctest.h>

#include <random>

using namespace milnor;

namespace {

const std::vector<std::tuple<int, int, int>> kCases{{3, 3, 3}, {3, 4, 5}, {4, 4, 2}, {6, 3, 2}};

// Expected total rank: non-zero only for A and B at alpha = 1 and for R1 at
// beta = 1, where it is the rank of H*(S^1).
std::size_t expected_rank(const std::string &cycle, const GaussianRational &a, const GaussianRational &b) {
    if (cycle == "A" || cycle == "B") return a == GaussianRational(1) ? 2 : 0;
    if (cycle == "R1") return b == GaussianRational(1) ? 2 : 0;
    return 0;
}

LaurentComplex rescale(const LaurentComplex &c, std::size_t gen, const LaurentPoly &unit,
                       const LaurentPoly &unit_inverse) {
    LaurentComplex out = c;
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
        out.diff[i][gen] = out.diff[i][gen] * unit;
        out.diff[gen][i] = out.diff[gen][i] * unit_inverse;
    }
    return out;
}

} // namespace

TEST_SUITE("floer-local") {

TEST_CASE("Laurent arithmetic") {
    const auto a = LaurentPoly::monomial(1, 1, 0);
    const auto ainv = LaurentPoly::monomial(1, -1, 0);
    CHECK(a * ainv == LaurentPoly::constant(1));
    CHECK((a - a).is_zero());
    CHECK(a.is_unit());
    CHECK_FALSE((LaurentPoly::constant(1) - a).is_unit());
    CHECK(LaurentPoly::monomial(-1, 2, -3).is_unit());
    CHECK_FALSE(LaurentPoly::monomial(2, 0, 0).is_unit());
    const auto p = LaurentPoly::constant(1) - LaurentPoly::monomial(1, 0, 1);
    CHECK(p.evaluate(GaussianRational(5), GaussianRational(1)).is_zero());
    CHECK(p.evaluate(GaussianRational(5), GaussianRational(3)) == GaussianRational(-2));
    CHECK(p.to_string() == LaurentPoly(p).to_string());
}

TEST_CASE("differentials square to zero") {
    for (auto [p, q, r] : kCases)
        for (const auto &cyc : tpqr_cycle_labels(p, q, r)) {
            const auto c = tpqr_floer_complex(p, q, r, cyc);
            CHECK(c.squares_to_zero());
            CHECK_NOTHROW(c.validate());
        }
    CHECK_THROWS_AS(tpqr_floer_complex(3, 3, 3, "Z9"), FloerError);
}

TEST_CASE("rank table on random and special holonomies") {
    std::vector<std::pair<GaussianRational, GaussianRational>> points;
    for (std::uint64_t seed = 0; seed < 20; ++seed) points.push_back(sample_holonomy(seed));
    points.emplace_back(GaussianRational(1), sample_holonomy(100).second);
    points.emplace_back(sample_holonomy(101).first, GaussianRational(1));
    points.emplace_back(GaussianRational(1), GaussianRational(1));
    for (auto [p, q, r] : kCases)
        for (const auto &cyc : tpqr_cycle_labels(p, q, r)) {
            const auto c = tpqr_floer_complex(p, q, r, cyc);
            for (const auto &[a, b] : points) {
                CAPTURE(cyc);
                const auto h = cohomology_at(c, a, b);
                CHECK(h.total == expected_rank(cyc, a, b));
                if (h.total == 2) {
                    // H^{*+k}(S^1): ranks one in two adjacent degrees.
                    REQUIRE(h.by_degree.size() == 2);
                    CHECK(std::next(h.by_degree.begin())->first == h.by_degree.begin()->first + 1);
                }
            }
        }
}

TEST_CASE("sampler avoids the special points and is reproducible") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto [a, b] = sample_holonomy(s);
        CHECK_FALSE(a == GaussianRational(1));
        CHECK_FALSE(b == GaussianRational(1));
        CHECK_FALSE(a.is_zero());
        CHECK(sample_holonomy(s).first == a);
    }
}

TEST_CASE("upper semicontinuity, parity and unit rescaling") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> e(-3, 3);
    for (auto [p, q, r] : kCases)
        for (const auto &cyc : tpqr_cycle_labels(p, q, r)) {
            const auto c = tpqr_floer_complex(p, q, r, cyc);
            const auto special = cohomology_at(c, GaussianRational(1), GaussianRational(1)).total;
            for (std::uint64_t s = 0; s < 100; ++s) {
                const auto [a, b] = sample_holonomy(1000 + s);
                const auto h = cohomology_at(c, a, b);
                CHECK(h.total <= special);
                CHECK(h.total % 2 == c.generators.size() % 2);
            }
            for (std::size_t g = 0; g < c.generators.size(); ++g) {
                const int i = e(rng), j = e(rng);
                const auto u = LaurentPoly::monomial(-1, i, j);
                const auto uinv = LaurentPoly::monomial(-1, -i, -j);
                const auto twisted = rescale(c, g, u, uinv);
                CHECK(twisted.squares_to_zero());
                for (std::uint64_t s = 0; s < 10; ++s) {
                    const auto [a, b] = sample_holonomy(s);
                    CHECK(cohomology_at(twisted, a, b).total == cohomology_at(c, a, b).total);
                }
            }
        }
}

TEST_CASE("floating-point ranks agree with exact ranks") {
    const auto c = tpqr_floer_complex(3, 4, 5, "A");
    CHECK(cohomology_at(c, std::complex<double>(1, 0), {0.3, 0.2}).total == 2);
    CHECK(cohomology_at(c, std::complex<double>(0.5, 0.1), {0.3, 0.2}).total == 0);
}

TEST_CASE("validation rejects a complex with d^2 != 0") {
    LaurentComplex c;
    c.generators = {{"x", 0}, {"y", 1}, {"z", 2}};
    c.diff.assign(3, std::vector<LaurentPoly>(3));
    c.diff[1][0] = LaurentPoly::constant(1);
    c.diff[2][1] = LaurentPoly::constant(1);
    CHECK_FALSE(c.squares_to_zero());
    CHECK_THROWS_AS(c.validate(), FloerError);
    c.diff[2][1] = LaurentPoly();
    c.diff[2][0] = LaurentPoly::constant(1); // degree jumps by two
    CHECK_THROWS_AS(c.validate(), FloerError);
}

TEST_CASE("obstruction report") {
    for (auto [p, q, r] : kCases) {
        const auto rep = generation_obstruction_report(p, q, r, 7);
        CHECK(rep.all_vanish);
        CHECK(rep.self_rank == 4);
        CHECK(rep.verdict == "vanishing cycles cannot split-generate");
        CHECK(rep.pairings.size() == static_cast<std::size_t>(p + q + r - 1));
    }
    const auto at_one = generation_obstruction_report(3, 3, 3, GaussianRational(1), GaussianRational(2));
    CHECK_FALSE(at_one.all_vanish);
}

TEST_CASE("surgery predicates") {
    CHECK(surgery_predicates({{1.0, 1.0}, {0.5, 0.5}, 0}, 1e-9).exact);
    CHECK_FALSE(surgery_predicates({{1.0, 1.5}, {0.5, 0.5}, 0}, 1e-9).exact);
    CHECK(surgery_predicates({{1.0, 1.0}, {0.5, 0.5}, 0}, 1e-9).maslov_zero);
    CHECK_FALSE(surgery_predicates({{1.0, 1.0}, {0.5, 0.5}, 1}, 1e-9).maslov_zero);
    CHECK_THROWS_AS(surgery_predicates({}, 0.0), FloerError);
}

}
