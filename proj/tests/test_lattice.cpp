#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace milnor;
using namespace testing_support;

namespace {

IntersectionLattice a_n(std::size_t n) {
    IntMatrix g(n, IntVector(n, 0));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back("a" + std::to_string(i + 1));
        g[i][i] = -2;
        if (i + 1 < n) g[i][i + 1] = g[i + 1][i] = 1;
    }
    return make_lattice(labels, g);
}

Step random_step(std::mt19937_64 &rng, const DistinguishedBasis &b) {
    const std::size_t n = b.lattice.rank();
    std::uniform_int_distribution<std::size_t> pos(1, n - 1);
    std::uniform_int_distribution<int> kind(0, 3);
    const std::size_t i = pos(rng);
    switch (kind(rng)) {
    case 0: return Step::right(i);
    case 1: return Step::left(i);
    case 2: return Step::rotate(pos(rng) + 1);
    default: return b.lattice.gram[i - 1][i] == 0 ? Step::swap(i) : Step::right(i);
    }
}

} // namespace

TEST_SUITE("lattice") {

TEST_CASE("make_lattice rejects malformed forms") {
    CHECK_THROWS_AS(make_lattice({"a", "b"}, {{-2, 1}, {0, -2}}), LatticeError);
    CHECK_THROWS_AS(make_lattice({"a", "b"}, {{-2, 0}, {0, 2}}), LatticeError);
    CHECK_THROWS_AS(make_lattice({"a", "a"}, {{-2, 0}, {0, -2}}), LatticeError);
    CHECK_THROWS_AS(make_lattice({"a"}, {{-2, 0}}), LatticeError);
    CHECK_NOTHROW(make_lattice({}, {}));
}

TEST_CASE("reflection is an involution and preserves the form") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto l = random_lattice(rng, 6, 2);
        std::uniform_int_distribution<int> e(-3, 3);
        IntVector x(6), y(6);
        for (auto &v : x) v = e(rng);
        for (auto &v : y) v = e(rng);
        for (std::size_t a = 0; a < 6; ++a) {
            const auto rx = reflect(l, a, x);
            CHECK(reflect(l, a, rx) == x);
            auto pair = [&](const IntVector &u, const IntVector &w) {
                std::int64_t s = 0;
                for (std::size_t i = 0; i < 6; ++i)
                    for (std::size_t j = 0; j < 6; ++j) s += u[i] * l.gram[i][j] * w[j];
                return s;
            };
            CHECK(pair(rx, reflect(l, a, y)) == pair(x, y));
            IntVector unit(6, 0);
            unit[a] = 1;
            IntVector minus(6, 0);
            minus[a] = -1;
            CHECK(reflect(l, a, unit) == minus);
        }
    }
}

TEST_CASE("right then left mutation is the identity") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto b = DistinguishedBasis::from_lattice(random_lattice(rng, 8));
        for (std::size_t i = 1; i < 8; ++i) {
            const auto back = mutate(mutate(b, Step::right(i)), Step::left(i));
            CHECK(back.lattice == b.lattice);
            CHECK(back.coords == b.coords);
            const auto back2 = mutate(mutate(b, Step::left(i)), Step::right(i));
            CHECK(back2.lattice == b.lattice);
        }
    }
}

TEST_CASE("mutation words preserve invariants and coordinates stay unimodular") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> size(2, 10), len(1, 12);
    for (int lat = 0; lat < 20; ++lat) {
        const auto l = random_lattice(rng, size(rng));
        const auto inv = invariants(l);
        const auto start = DistinguishedBasis::from_lattice(l);
        for (int word = 0; word < 20; ++word) {
            auto b = start;
            const std::size_t n = len(rng);
            for (std::size_t k = 0; k < n; ++k) b = mutate(b, random_step(rng, b));
            CHECK(invariants(b.lattice) == inv);
            const auto &c = *b.coords;
            CHECK(abs(bareiss_det(c)) == 1);
            CHECK(multiply(transpose(c), multiply(b.initial_gram, c)) == b.lattice.gram);
        }
    }
}

TEST_CASE("exact signature matches floating-point eigenvalues") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto l = random_lattice(rng, 1 + trial % 12, 2);
        std::size_t rank = 0;
        const auto sig = rational_signature(l.gram, &rank);
        CHECK(sig == eigen_signature(l.gram));
        CHECK(rank == sig.first + sig.second);
        const auto inv = invariants(l);
        CHECK(inv.nullity == l.rank() - rank);
        CHECK(inv.det == bareiss_det(l.gram));
    }
}

TEST_CASE("Smith form: divisibility chain and product equals |det|") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const auto l = random_lattice(rng, 1 + trial % 9, 3);
        const auto inv = invariants(l);
        BigInt prod = 1;
        std::size_t zeros = 0;
        for (std::size_t i = 0; i < inv.smith.size(); ++i) {
            const auto &d = inv.smith[i];
            CHECK(d >= 0);
            if (d == 0) {
                ++zeros;
                continue;
            }
            prod *= d;
            if (i + 1 < inv.smith.size() && inv.smith[i + 1] != 0) CHECK(inv.smith[i + 1] % d == 0);
        }
        CHECK(zeros == inv.nullity);
        if (inv.nullity == 0) CHECK(prod == abs(inv.det));
    }
}

TEST_CASE("A_n and the reference T_{p,q,r} forms") {
    const auto a3 = invariants(a_n(3));
    CHECK(a3.det == -4);
    CHECK(a3.signature == std::pair<std::size_t, std::size_t>{0, 3});
    CHECK(a3.smith == std::vector<BigInt>{1, 1, 4});

    for (int p = 3; p <= 6; ++p)
        for (int q = p; q <= 6; ++q)
            for (int r = 2; r <= 6; ++r) {
                const int num = q * r + p * r + p * q, den = p * q * r;
                if (num > den) continue;
                CAPTURE(p);
                CAPTURE(q);
                CAPTURE(r);
                const auto l = gabrielov_tpqr_form(p, q, r);
                CHECK(l.rank() == static_cast<std::size_t>(p + q + r - 1));
                const auto inv = invariants(l);
                CHECK(inv.nullity == (num == den ? 2u : 1u));
                const auto rep = torus_class_report(l);
                CHECK(rep.in_nullspace);
                CHECK(rep.primitive);
            }
    CHECK_THROWS_AS(gabrielov_tpqr_form(2, 3, 5), LatticeError);
    CHECK_THROWS_AS(gabrielov_tpqr_form(3, 3, 2), LatticeError);
    CHECK_NOTHROW(tpqr_arm_form(3, 3, 2));
}

TEST_CASE("torus class fails off the null space") {
    const auto rep = torus_class_report(make_lattice({"A", "B", "c", "d"}, a_n(4).gram));
    CHECK_FALSE(rep.in_nullspace);
}

TEST_CASE("sign normalisation agrees with exhaustive search") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 9;
        const auto a = random_lattice(rng, n, 2);
        IntMatrix g = a.gram;
        // Flip signs, then perturb one entry in half of the cases.
        for (std::size_t i = 0; i < n; ++i)
            if (coin(rng))
                for (std::size_t j = 0; j < n; ++j)
                    if (j != i) g[i][j] = -g[i][j], g[j][i] = -g[j][i];
        if (n > 1 && coin(rng)) {
            g[0][n - 1] += 1;
            g[n - 1][0] += 1;
        }
        const auto b = make_lattice(a.labels, g);
        const bool expect = brute_force_sign_equal(a.gram, b.gram);
        CHECK(equal_up_to_sign(a, b) == expect);
        const auto signs = sign_normalization(a, b);
        CHECK(signs.has_value() == expect);
        if (signs)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) CHECK((*signs)[i] * (*signs)[j] * a.gram[i][j] == b.gram[i][j]);
    }
}

TEST_CASE("sign normalisation matches labels, not positions") {
    const auto l = a_n(3);
    const auto p = make_lattice({"a3", "a1", "a2"}, {{-2, 0, 1}, {0, -2, 1}, {1, 1, -2}});
    CHECK(equal_up_to_sign(l, p));
    const auto other = make_lattice({"x", "a1", "a2"}, p.gram);
    CHECK_FALSE(equal_up_to_sign(l, other));
}

TEST_CASE("script text round trip and parse errors") {
    const std::string text = "# demo\nR 1\nL 2\n\nS 1\nT b a\nT a b -1\nC 2\nN a z\n";
    const auto s = MutationScript::parse(text);
    REQUIRE(s.steps.size() == 7);
    CHECK(s.steps[3] == Step::twist("b", "a"));
    CHECK(s.steps[4] == Step::twist("a", "b", true));
    CHECK(MutationScript::parse(s.to_text()).steps == s.steps);
    CHECK_THROWS_WITH_AS(MutationScript::parse("R 1\nX 2\n"), doctest::Contains("line 2"), LatticeError);
    CHECK_THROWS_AS(MutationScript::parse("R\n"), LatticeError);
    CHECK_THROWS_AS(MutationScript::parse("T a b 1\n"), LatticeError);
}

TEST_CASE("named twists resolve through trivial swaps") {
    // a - b chain plus an isolated c between them.
    const auto l = make_lattice({"a", "c", "b"}, {{-2, 0, 1}, {0, -2, 0}, {1, 0, -2}});
    const auto b = DistinguishedBasis::from_lattice(l);
    const auto steps = resolve_twist(b, Step::twist("b", "a"));
    REQUIRE_FALSE(steps.empty());
    CHECK(steps.back().kind == StepKind::right);
    const auto run = run_script(b, MutationScript{{Step::twist("b", "a")}});
    CHECK(run.result.lattice.labels[0] == "b");
    CHECK(invariants(run.result.lattice) == invariants(l));
    // Wrong order is an error, never a silent wrap.
    CHECK_THROWS_AS(resolve_twist(b, Step::twist("a", "b")), LatticeError);
    // A needed non-trivial swap is an error.
    const auto blocked = make_lattice({"a", "c", "b"}, {{-2, 1, 1}, {1, -2, 1}, {1, 1, -2}});
    CHECK_THROWS_AS(resolve_twist(DistinguishedBasis::from_lattice(blocked), Step::twist("b", "a")),
                    LatticeError);
}

TEST_CASE("swap refuses intersecting neighbours") {
    const auto b = DistinguishedBasis::from_lattice(a_n(3));
    CHECK_THROWS_AS(mutate(b, Step::swap(1)), LatticeError);
    CHECK_THROWS_AS(mutate(b, Step::right(3)), LatticeError);
    CHECK_THROWS_AS(mutate(b, Step::right(0)), LatticeError);
}

TEST_CASE("rotation is a cyclic reorder") {
    const auto b = DistinguishedBasis::from_lattice(a_n(4));
    const auto r = mutate(b, Step::rotate(2));
    CHECK(r.labels() == std::vector<std::string>{"a2", "a3", "a4", "a1"});
    auto back = r;
    for (int k = 0; k < 3; ++k) back = mutate(back, Step::rotate(2));
    CHECK(back.lattice == b.lattice);
    CHECK(mutate(b, Step::rotate(4)).labels() == std::vector<std::string>{"a4", "a1", "a2", "a3"});
}

TEST_CASE("reorder by trivial mutations reaches the target order") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const auto l = random_lattice(rng, 7);
        auto b = DistinguishedBasis::from_lattice(l);
        // Scramble with swaps and rotations only; the reorder must undo it.
        std::uniform_int_distribution<std::size_t> pos(1, 6);
        for (int k = 0; k < 15; ++k) {
            const std::size_t i = pos(rng);
            if (k % 4 == 0) b = mutate(b, Step::rotate(i + 1));
            else if (b.lattice.gram[i - 1][i] == 0) b = mutate(b, Step::swap(i));
        }
        const auto steps = reorder_by_trivial_mutations(b.lattice, l.labels);
        for (const auto &s : steps) b = mutate(b, s);
        CHECK(b.lattice == l);
    }
}

TEST_CASE("DOT export") {
    const auto t333 = gabrielov_tpqr_form(3, 3, 3);
    const auto dot = to_dot(t333);
    CHECK(std::count(dot.begin(), dot.end(), '\n') > 0);
    std::size_t nodes = 0, solid = 0, dashed = 0;
    std::istringstream in(dot);
    for (std::string line; std::getline(in, line);) {
        if (line.find("--") != std::string::npos) {
            if (line.find("dashed") != std::string::npos) ++dashed;
            else ++solid;
        } else if (line.find(';') != std::string::npos) {
            ++nodes;
        }
    }
    CHECK(nodes == 8);
    CHECK(dashed == 1);
    CHECK(dot.find("\"A\" -- \"B\" [style=dashed, label=\"-2\"]") != std::string::npos);
    CHECK(solid == count_entries(t333.gram, 1));
    CHECK(to_dot(make_lattice({"x"}, {{-2}})) == "graph dynkin {\n  \"x\";\n}\n");
}

}
