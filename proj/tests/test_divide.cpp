#include "support.hpp"

#include "milnor/divide.hpp"
#include "milnor/stabilize.hpp"

#include <doctest.h>

using namespace milnor;
using namespace testing_support;

TEST_SUITE("divides") {

TEST_CASE("four generic lines") {
    const Divide d = four_lines_divide();
    CHECK(validate(d) == 9);
    CHECK(d.crossings.size() == 6);
    CHECK(d.branches == 4);
    const auto b = acampo_form(d);
    const auto inv = invariants(b.lattice);
    CHECK(b.lattice.rank() == 9);
    CHECK(inv.nullity == 2);
    CHECK(inv.smith == std::vector<BigInt>{1, 1, 1, 1, 1, 1, 2, 0, 0});
    const auto s = divide_to_surface(d);
    CHECK(s.euler == -8);
    CHECK(s.boundary_components == 4);
    CHECK(s.genus == 3);
    CHECK(acampo_warnings(d).empty());
}

TEST_CASE("kernel divide is a twice-punctured genus three surface") {
    const Divide d = kernel_divide();
    CHECK(validate(d) == 7);
    const auto s = divide_to_surface(d);
    CHECK(s.genus == 3);
    CHECK(s.boundary_components == 2);
    CHECK(s.euler == 1 - 7);
    CHECK(invariants(acampo_form(d).lattice).nullity == 1);
}

TEST_CASE("h_{p,q} divides: mu = p + q + 1 and orientable surfaces") {
    for (int p = 3; p <= 7; ++p)
        for (int q = p; q <= 7; ++q) {
            CAPTURE(p);
            CAPTURE(q);
            const Divide d = hpq_divide(p, q);
            const int mu = validate(d);
            CHECK(mu == p + q + 1);
            CHECK(mu == 2 * static_cast<int>(d.crossings.size()) - d.branches + 1);
            CHECK(static_cast<int>(d.regions.size() + d.crossings.size()) == mu);
            const auto s = divide_to_surface(d);
            CHECK(s.euler == 1 - mu);
            CHECK(2 - 2 * s.genus - s.boundary_components == s.euler);
            const auto b = acampo_form(d);
            CHECK(b.lattice.rank() == static_cast<std::size_t>(mu));
        }
    const auto i44 = invariants(acampo_form(hpq_divide(4, 4)).lattice);
    CHECK(i44.nullity == 2);
    CHECK(invariants(acampo_form(hpq_divide(4, 5)).lattice).nullity == 1);
}

TEST_CASE("acampo form entries follow the incidence and adjacency rules") {
    const Divide d = four_lines_divide();
    const auto l = acampo_form(d).lattice;
    // Order: minima, crossings, maxima.
    std::map<std::string, int> sign;
    for (const auto &r : d.regions) sign[r.id] = r.sign;
    bool seen_max = false, seen_crossing = false;
    for (const auto &lab : l.labels) {
        if (sign.count(lab) && sign[lab] < 0) {
            CHECK_FALSE(seen_crossing);
            CHECK_FALSE(seen_max);
        } else if (sign.count(lab)) {
            seen_max = true;
        } else {
            CHECK_FALSE(seen_max);
            seen_crossing = true;
        }
    }
    for (const auto &inc : d.incidence)
        CHECK(l.pairing(inc.region, inc.crossing) == sign[inc.region] * inc.mult);
    for (const auto &[a, b] : d.adjacency)
        if (sign[a] != sign[b]) CHECK(l.pairing(a, b) == 1);
    for (const auto &x : d.crossings)
        for (const auto &y : d.crossings)
            if (x != y) CHECK(l.pairing(x, y) == 0);
}

TEST_CASE("validation errors") {
    Divide d = four_lines_divide();
    SUBCASE("region count") {
        d.regions.pop_back();
        CHECK_THROWS_AS(validate(d), DivideError);
    }
    SUBCASE("duplicate crossing") {
        d.crossings.push_back(d.crossings.front());
        CHECK_THROWS_AS(validate(d), DivideError);
    }
    SUBCASE("unknown region in incidence") {
        d.incidence.push_back({"nowhere", d.crossings.front(), 1});
        CHECK_THROWS_AS(validate(d), DivideError);
    }
    SUBCASE("broken half-edge symmetry") {
        auto &link = d.half_edges->link;
        for (auto &[from, to] : link)
            if (to) {
                to = std::nullopt;
                break;
            }
        CHECK_THROWS_AS(validate(d), DivideError);
    }
    SUBCASE("valence") {
        auto &link = d.half_edges->link;
        link.erase(link.begin());
        CHECK_THROWS_AS(validate(d), DivideError);
    }
    SUBCASE("branch count") {
        d.branches = 3;
        CHECK_THROWS_AS(validate(d), DivideError);
    }
}

TEST_CASE("two crossing arcs give A_1, a lone arc is smooth") {
    StrandData s;
    s.branches = {{"x"}, {"x"}};
    s.signs = {{"x", 1}};
    const auto d = divide_from_strands(s, {"x", 0, -1});
    CHECK(validate(d) == 1);
    CHECK(acampo_form(d).lattice.gram == IntMatrix{{-2}});
    Divide lone;
    lone.branches = 1;
    CHECK(validate(lone) == 0);
}

TEST_CASE("a figure-eight arc bounds one region") {
    // One branch crossing itself once: a loop bounding a single region whose
    // corner at the crossing is counted once, plus the outer regions.
    StrandData s;
    s.branches = {{"x", "x"}};
    s.signs = {{"x", 1}};
    const auto d = divide_from_strands(s, {"x", 1, -1});
    CHECK(validate(d) == 2);
    CHECK(d.regions.size() == 1);
}

}

TEST_SUITE("stabilize") {

namespace {
IntersectionLattice chain(std::size_t n) {
    IntMatrix g(n, IntVector(n, 0));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back("a" + std::to_string(i + 1));
        g[i][i] = -2;
        if (i + 1 < n) g[i][i + 1] = g[i + 1][i] = 1;
    }
    return make_lattice(labels, g);
}
} // namespace

TEST_CASE("d = 1 keeps the form and appends the sheet label") {
    const auto b = acampo_form(kernel_divide());
    const auto s = gabrielov_stabilize(b, 1);
    CHECK(s.lattice.gram == b.lattice.gram);
    CHECK(s.lattice.labels.front() == b.lattice.labels.front() + ":1");
}

TEST_CASE("A_1 stabilised twice is A_2") {
    const auto s = gabrielov_stabilize(DistinguishedBasis::from_lattice(chain(1)), 2);
    CHECK(invariants(s.lattice) == invariants(chain(2)));
    CHECK(s.lattice.labels == std::vector<std::string>{"a1:1", "a1:2"});
}

TEST_CASE("A_3 with d = 3 matches the four-lines divide") {
    const auto fl = invariants(acampo_form(four_lines_divide()).lattice);
    for (auto side : {NegatedSide::ascending, NegatedSide::descending}) {
        const auto s = invariants(gabrielov_stabilize(DistinguishedBasis::from_lattice(chain(3)), 3, {1, side}).lattice);
        CHECK(s.smith == fl.smith);
        CHECK(abs(s.det) == abs(fl.det));
        CHECK(s.nullity == fl.nullity);
    }
    // The opposite chain sign gives a different lattice.
    const auto wrong = invariants(gabrielov_stabilize(DistinguishedBasis::from_lattice(chain(3)), 3, {-1}).lattice);
    CHECK(wrong.nullity != fl.nullity);
}

TEST_CASE("A_1 with d gives A_d; A_n with d = 1 gives A_n") {
    for (int d = 1; d <= 6; ++d)
        CHECK(invariants(gabrielov_stabilize(DistinguishedBasis::from_lattice(chain(1)), d).lattice) ==
              invariants(chain(static_cast<std::size_t>(d))));
}

TEST_CASE("sheet-major reordering is by trivial swaps") {
    for (std::size_t mu = 1; mu <= 4; ++mu)
        for (int d = 1; d <= 4; ++d) {
            auto b = gabrielov_stabilize(DistinguishedBasis::from_lattice(chain(mu)), d);
            const auto before = invariants(b.lattice);
            for (const auto &s : sheet_major_steps(mu, d)) {
                CHECK(s.kind == StepKind::swap);
                b = mutate(b, s);
            }
            CHECK(invariants(b.lattice) == before);
            // Sheet j of every cycle now precedes sheet j + 1 of any cycle.
            for (std::size_t i = 0; i + 1 < b.lattice.rank(); ++i) {
                const auto &x = b.lattice.labels[i];
                const auto &y = b.lattice.labels[i + 1];
                CHECK(std::stoi(x.substr(x.find(':') + 1)) <= std::stoi(y.substr(y.find(':') + 1)));
            }
        }
}

TEST_CASE("bad arguments") {
    const auto b = DistinguishedBasis::from_lattice(chain(2));
    CHECK_THROWS(gabrielov_stabilize(b, 0));
    CHECK_THROWS(gabrielov_stabilize(b, 2, {2}));
}

}
