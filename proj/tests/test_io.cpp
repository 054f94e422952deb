#include "milnor/io.hpp"
#include "milnor/stabilize.hpp"

#include <doctest.h>

#include <filesystem>

using namespace milnor;

TEST_SUITE("io") {

TEST_CASE("lattice JSON round trip") {
    const auto l = gabrielov_tpqr_form(3, 4, 5);
    CHECK(lattice_from_json(parse_json(dump_json(lattice_to_json(l)))) == l);
    // The basis output with invariants is accepted as lattice input too.
    const auto b = DistinguishedBasis::from_lattice(l);
    CHECK(lattice_from_json(parse_json(dump_json(basis_to_json(b)))) == l);
}

TEST_CASE("malformed JSON reports line and column") {
    const std::string text = "{\n  \"labels\": [\"a\",\n  ]\n}";
    CHECK_THROWS_WITH_AS(parse_json(text, "x.json"), doctest::Contains("x.json:3:3"), InputError);
    CHECK_THROWS_AS(lattice_from_json(parse_json("{\"labels\": [\"a\"]}")), InputError);
    CHECK_THROWS_AS(lattice_from_json(parse_json("{\"labels\": [\"a\"], \"gram\": [[2]]}")), InputError);
    CHECK_THROWS_AS(lattice_from_json(parse_json("[1, 2]")), InputError);
}

TEST_CASE("divide JSON round trip, explicit and strand forms") {
    for (const auto &d : {four_lines_divide(), hpq_divide(4, 5)}) {
        const auto back = divide_from_json(parse_json(dump_json(divide_to_json(d))));
        CHECK(validate(back) == validate(d));
        CHECK(acampo_form(back).lattice == acampo_form(d).lattice);
        CHECK(divide_to_surface(back).genus == divide_to_surface(d).genus);
    }
    const auto s = four_lines_strands();
    Json j;
    j["strands"]["branches"] = s.branches;
    j["strands"]["signs"] = s.signs;
    j["reference"] = {{"crossing", "X12"}, {"sector", 0}, {"sign", 1}};
    CHECK(acampo_form(divide_from_json(j)).lattice == acampo_form(four_lines_divide()).lattice);
}

TEST_CASE("quiver JSON round trip") {
    const auto q = chen_krause_quiver(3, 4, 5);
    const auto back = quiver_from_json(parse_json(dump_json(quiver_to_json(q))));
    CHECK(dump_json(quiver_to_json(back)) == dump_json(quiver_to_json(q)));
    CHECK(PathAlgebra(back).dim() == PathAlgebra(q).dim());
    Json cyc = quiver_to_json(q);
    cyc["arrows"].push_back({{"src", "B"}, {"dst", "A"}, {"name", "back"}});
    CHECK_THROWS_AS(quiver_from_json(cyc), InputError);
}

TEST_CASE("complex JSON round trip") {
    const auto c = tpqr_floer_complex(3, 3, 3, "R1");
    const auto back = laurent_complex_from_json(parse_json(dump_json(laurent_complex_to_json(c))));
    CHECK(back.diff == c.diff);
    CHECK(laurent_from_json(parse_json("{\"(1,-2)\": 3, \"(0,0)\": -1}")) ==
          LaurentPoly::monomial(3, 1, -2) - LaurentPoly::constant(1));
    CHECK_THROWS_AS(laurent_from_json(parse_json("{\"1,2\": 1}")), InputError);
}

TEST_CASE("polynomial JSON round trip") {
    const auto m = builtin_family("M");
    CHECK(poly_from_json(parse_json(dump_json(poly_to_json(m)))) == m);
    CHECK(rational_from_json(Json("-7/3")) == Rational(-7, 3));
    CHECK_THROWS_AS(rational_from_json(Json("x")), InputError);
}

TEST_CASE("CSV has one row per path and grid point") {
    const auto tr = track_family(builtin_family("check_m"), uniform_grid(3));
    const auto csv = track_to_csv(tr);
    CHECK(csv.rfind("t,path_id,re_value,im_value,escaped\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == 1 + 3 * tr.paths.size());
}

TEST_CASE("atomic write replaces the file") {
    const auto path = std::filesystem::temp_directory_path() / "milnor_io_test.txt";
    write_file_atomic(path, "one");
    write_file_atomic(path, "two");
    CHECK(read_text_file(path) == "two");
    std::filesystem::remove(path);
}

}
