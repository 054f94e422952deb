#include "milnor/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace milnor {

namespace {

[[noreturn]] void fail(const std::string &msg) { throw InputError(msg); }

const Json &field(const Json &j, const char *key) {
    if (!j.is_object()) fail("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
    return *it;
}

template <class T>
T get_as(const Json &j, const char *what) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception &) {
        fail(std::string("field ") + what + " has the wrong type");
    }
}

std::string json_to_string(const Json &j, const char *what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
    fail(std::string(what) + " must be a string");
}

Dart dart_from_json(const Json &j) {
    if (!j.is_array() || j.size() != 2) fail("a dart is [crossing, port]");
    return {json_to_string(j[0], "crossing"), get_as<int>(j[1], "port")};
}

Json point_to_json(const Point3 &p) {
    Json a = Json::array();
    for (const auto &c : p) a.push_back(complex_to_json(c));
    return a;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path &path, const std::string &content) {
    const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    auto tmp = dir / ("." + path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

Json parse_json(const std::string &text, const std::string &source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        // e.byte is the 1-based offset of the offending character.
        std::size_t line = 1, col = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
    }
}

std::string dump_json(const Json &j) { return j.dump(2) + "\n"; }

Rational rational_from_json(const Json &j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Rational(j.get<std::string>());
        } catch (const std::exception &) {
            fail("bad rational \"" + j.get<std::string>() + "\"");
        }
    }
    fail("a rational is an integer or a string \"p/q\"");
}

Json rational_to_json(const Rational &r) {
    if (denominator(r) == 1 && abs(numerator(r)) < BigInt(1) << 53)
        return static_cast<std::int64_t>(numerator(r));
    return r.str();
}

GaussianRational gaussian_from_json(const Json &j) {
    if (j.is_array()) {
        if (j.size() != 2) fail("a complex coefficient is [re, im]");
        return {rational_from_json(j[0]), rational_from_json(j[1])};
    }
    return GaussianRational(rational_from_json(j));
}

Json gaussian_to_json(const GaussianRational &g) {
    if (g.im == 0) return rational_to_json(g.re);
    return Json::array({rational_to_json(g.re), rational_to_json(g.im)});
}

Json complex_to_json(std::complex<double> c) {
    // Round-off below 1e-15 (including negative zero) prints as 0.
    auto clean = [](double v) { return std::abs(v) < 1e-15 ? 0.0 : v; };
    return Json::array({clean(c.real()), clean(c.imag())});
}

IntersectionLattice lattice_from_json(const Json &j) {
    const auto labels = get_as<std::vector<std::string>>(field(j, "labels"), "labels");
    const auto gram = get_as<IntMatrix>(field(j, "gram"), "gram");
    try {
        return make_lattice(labels, gram);
    } catch (const LatticeError &e) {
        fail(e.what());
    }
}

Json lattice_to_json(const IntersectionLattice &l) {
    Json j;
    j["labels"] = l.labels;
    j["gram"] = l.gram;
    return j;
}

Json invariants_to_json(const LatticeInvariants &inv) {
    Json j;
    j["rank"] = inv.rank_of_form + inv.nullity;
    j["rank_of_form"] = inv.rank_of_form;
    j["nullity"] = inv.nullity;
    j["det"] = inv.det.str();
    j["signature"] = Json::array({inv.signature.first, inv.signature.second});
    Json s = Json::array();
    for (const auto &d : inv.smith) s.push_back(d.str());
    j["smith"] = s;
    return j;
}

Json basis_to_json(const DistinguishedBasis &b) {
    Json j = lattice_to_json(b.lattice);
    j["invariants"] = invariants_to_json(invariants(b.lattice));
    if (b.coords) j["coords"] = *b.coords;
    j["history"] = b.history;
    return j;
}

Divide divide_from_json(const Json &j) {
    if (j.is_object() && j.contains("strands")) {
        const Json &s = j["strands"];
        StrandData sd;
        sd.branches = get_as<std::vector<std::vector<std::string>>>(field(s, "branches"), "branches");
        sd.signs = get_as<std::map<std::string, int>>(field(s, "signs"), "signs");
        SectorReference ref;
        if (j.contains("reference")) {
            const Json &r = j["reference"];
            ref.crossing = get_as<std::string>(field(r, "crossing"), "crossing");
            ref.sector = get_as<int>(field(r, "sector"), "sector");
            ref.sign = get_as<int>(field(r, "sign"), "sign");
        } else {
            if (sd.signs.empty()) fail("strand data without crossings");
            ref.crossing = sd.signs.begin()->first;
        }
        try {
            return divide_from_strands(sd, ref);
        } catch (const DivideError &e) {
            fail(e.what());
        }
    }
    Divide d;
    d.branches = get_as<int>(field(j, "branches"), "branches");
    for (const auto &c : field(j, "crossings")) d.crossings.push_back(json_to_string(c, "crossing"));
    for (const auto &r : field(j, "regions")) {
        Region reg;
        reg.id = json_to_string(field(r, "id"), "region id");
        const Json &s = field(r, "sign");
        if (s.is_string()) {
            const auto v = s.get<std::string>();
            if (v == "max") reg.sign = 1;
            else if (v == "min") reg.sign = -1;
            else fail("region sign must be \"max\" or \"min\"");
        } else {
            reg.sign = get_as<int>(s, "sign");
        }
        d.regions.push_back(reg);
    }
    for (const auto &i : field(j, "incidence")) {
        if (!i.is_array() || i.size() < 2 || i.size() > 3) fail("incidence entries are [region, crossing, mult]");
        d.incidence.push_back({json_to_string(i[0], "region"), json_to_string(i[1], "crossing"),
                               i.size() == 3 ? get_as<int>(i[2], "mult") : 1});
    }
    for (const auto &a : field(j, "adjacency")) {
        if (!a.is_array() || a.size() != 2) fail("adjacency entries are [region, region]");
        d.adjacency.emplace_back(json_to_string(a[0], "region"), json_to_string(a[1], "region"));
    }
    if (j.contains("half_edges") && !j["half_edges"].is_null()) {
        HalfEdgeStructure h;
        for (const auto &e : j["half_edges"]) {
            if (!e.is_array() || e.size() != 2) fail("half_edges entries are [dart, dart or null]");
            const Dart from = dart_from_json(e[0]);
            if (e[1].is_null()) h.link[from] = std::nullopt;
            else h.link[from] = dart_from_json(e[1]);
        }
        d.half_edges = std::move(h);
    }
    return d;
}

Json divide_to_json(const Divide &d) {
    Json j;
    j["branches"] = d.branches;
    j["crossings"] = d.crossings;
    Json regs = Json::array();
    for (const auto &r : d.regions) regs.push_back({{"id", r.id}, {"sign", r.sign > 0 ? "max" : "min"}});
    j["regions"] = regs;
    Json inc = Json::array();
    for (const auto &i : d.incidence) inc.push_back(Json::array({i.region, i.crossing, i.mult}));
    j["incidence"] = inc;
    Json adj = Json::array();
    for (const auto &[a, b] : d.adjacency) adj.push_back(Json::array({a, b}));
    j["adjacency"] = adj;
    if (d.half_edges) {
        Json h = Json::array();
        for (const auto &[from, to] : d.half_edges->link) {
            Json e = Json::array({Json::array({from.crossing, from.port})});
            if (to) e.push_back(Json::array({to->crossing, to->port}));
            else e.push_back(nullptr);
            h.push_back(e);
        }
        j["half_edges"] = h;
    }
    return j;
}

Json surface_to_json(const RibbonSurface &s) {
    Json j;
    j["euler_characteristic"] = s.euler;
    j["boundary_components"] = s.boundary_components;
    j["genus"] = s.genus;
    j["orientation"] = s.orientation;
    return j;
}

Quiver quiver_from_json(const Json &j) {
    Quiver q;
    q.vertices = get_as<std::vector<std::string>>(field(j, "vertices"), "vertices");
    for (const auto &a : field(j, "arrows"))
        q.arrows.push_back({get_as<std::string>(field(a, "src"), "src"),
                            get_as<std::string>(field(a, "dst"), "dst"),
                            get_as<std::string>(field(a, "name"), "name")});
    if (j.contains("relations")) {
        for (const auto &rel : j["relations"]) {
            Relation r;
            for (const auto &t : rel)
                r.push_back({get_as<std::int64_t>(field(t, "coef"), "coef"),
                             get_as<std::vector<std::string>>(field(t, "path"), "path")});
            q.relations.push_back(std::move(r));
        }
    }
    try {
        q.validate();
    } catch (const QuiverError &e) {
        fail(e.what());
    }
    return q;
}

Json quiver_to_json(const Quiver &q) {
    Json j;
    j["vertices"] = q.vertices;
    Json arrows = Json::array();
    for (const auto &a : q.arrows) arrows.push_back({{"src", a.src}, {"dst", a.dst}, {"name", a.name}});
    j["arrows"] = arrows;
    Json rels = Json::array();
    for (const auto &r : q.relations) {
        Json terms = Json::array();
        for (const auto &t : r) terms.push_back({{"coef", t.coef}, {"path", t.path}});
        rels.push_back(terms);
    }
    j["relations"] = rels;
    return j;
}

Json mirror_report_to_json(const MirrorReport &r) {
    Json j;
    j["p"] = r.p;
    j["q"] = r.q;
    j["r"] = r.r;
    j["perturbed"] = r.perturbed;
    j["algebra_dim"] = r.algebra_dim;
    j["endomorphism_dim"] = r.endomorphism_dim;
    Json pairs = Json::array();
    for (const auto &p : r.pairs) {
        Json hom;
        for (const auto &[deg, dim] : p.hom_dims) hom[std::to_string(deg)] = dim;
        pairs.push_back({{"src", p.src},
                         {"dst", p.dst},
                         {"algebra_dim", p.algebra_dim},
                         {"hom_dims", hom.is_null() ? Json::object() : hom},
                         {"image_rank", p.image_rank}});
    }
    j["pairs"] = pairs;
    j["witnesses"] = r.witnesses;
    j["verdict"] = r.pass ? "pass" : "fail";
    return j;
}

LaurentPoly laurent_from_json(const Json &j) {
    if (j.is_number_integer()) return LaurentPoly::constant(j.get<std::int64_t>());
    if (!j.is_object()) fail("a Laurent polynomial is an object {\"(i,j)\": coef}");
    LaurentPoly p;
    for (const auto &[key, val] : j.items()) {
        int a = 0, b = 0;
        char tail = 0;
        if (std::sscanf(key.c_str(), " ( %d , %d %c", &a, &b, &tail) != 3 || tail != ')')
            fail("bad exponent key \"" + key + "\"");
        p = p + LaurentPoly::monomial(get_as<std::int64_t>(val, "coefficient"), a, b);
    }
    return p;
}

Json laurent_to_json(const LaurentPoly &p) {
    Json j = Json::object();
    for (const auto &[e, c] : p.terms())
        j["(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")"] = c;
    return j;
}

LaurentComplex laurent_complex_from_json(const Json &j) {
    LaurentComplex c;
    for (const auto &g : field(j, "generators"))
        c.generators.push_back({get_as<std::string>(field(g, "name"), "name"), get_as<int>(field(g, "deg"), "deg")});
    const Json &d = field(j, "diff");
    if (!d.is_array() || d.size() != c.generators.size()) fail("diff must be a square matrix over the generators");
    for (const auto &row : d) {
        if (!row.is_array() || row.size() != c.generators.size())
            fail("diff must be a square matrix over the generators");
        std::vector<LaurentPoly> r;
        for (const auto &e : row) r.push_back(laurent_from_json(e));
        c.diff.push_back(std::move(r));
    }
    try {
        c.validate();
    } catch (const FloerError &e) {
        fail(e.what());
    }
    return c;
}

Json laurent_complex_to_json(const LaurentComplex &c) {
    Json j;
    Json gens = Json::array();
    for (const auto &g : c.generators) gens.push_back({{"name", g.name}, {"deg", g.degree}});
    j["generators"] = gens;
    Json diff = Json::array();
    for (const auto &row : c.diff) {
        Json r = Json::array();
        for (const auto &e : row) r.push_back(laurent_to_json(e));
        diff.push_back(r);
    }
    j["diff"] = diff;
    return j;
}

Json cohomology_to_json(const CohomologyRanks &r) {
    Json j;
    Json by = Json::object();
    for (const auto &[deg, rank] : r.by_degree) by[std::to_string(deg)] = rank;
    j["by_degree"] = by;
    j["total"] = r.total;
    return j;
}

Json obstruction_to_json(const ObstructionReport &r) {
    Json j;
    j["p"] = r.p;
    j["q"] = r.q;
    j["r"] = r.r;
    j["seed"] = r.seed;
    j["alpha"] = gaussian_to_json(r.alpha);
    j["beta"] = gaussian_to_json(r.beta);
    Json pairs = Json::array();
    for (const auto &c : r.pairings) pairs.push_back({{"cycle", c.cycle}, {"rank", c.rank}});
    j["pairings"] = pairs;
    j["self_rank"] = r.self_rank;
    j["all_vanish"] = r.all_vanish;
    j["verdict"] = r.verdict;
    return j;
}

MultiPoly poly_from_json(const Json &j) {
    MultiPoly p;
    for (const auto &t : field(j, "terms")) {
        const auto e = get_as<std::vector<int>>(field(t, "exp"), "exp");
        if (e.size() < 1 || e.size() > 4) fail("exp has one to four entries (x, y, z, t)");
        Exponents ex{0, 0, 0, 0};
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] < 0) fail("negative exponent");
            ex[k] = e[k];
        }
        p = p + MultiPoly::monomial(gaussian_from_json(field(t, "coef")), ex);
    }
    return p;
}

Json poly_to_json(const MultiPoly &p) {
    Json terms = Json::array();
    for (const auto &[e, c] : p.terms())
        terms.push_back({{"exp", Json::array({e[0], e[1], e[2], e[3]})}, {"coef", gaussian_to_json(c)}});
    Json j;
    j["terms"] = terms;
    return j;
}

Json solve_to_json(const SolveResult &r) {
    Json j;
    j["count"] = r.points.size();
    j["bezout_bound"] = r.bezout_bound;
    j["converged_starts"] = r.converged_starts;
    Json pts = Json::array();
    for (const auto &c : r.points)
        pts.push_back({{"point", point_to_json(c.point)},
                       {"value", complex_to_json(c.value)},
                       {"residual", c.residual},
                       {"rcond", c.rcond},
                       {"degenerate", c.degenerate}});
    j["points"] = pts;
    Json vals = Json::array();
    for (const auto &v : r.values) vals.push_back(complex_to_json(v));
    j["values"] = vals;
    return j;
}

Json track_to_json(const CriticalTrack &t) {
    Json j;
    j["t_grid"] = t.t_grid;
    j["paths"] = t.paths.size();
    j["escaped"] = t.escaped_count();
    j["surviving"] = t.surviving_count();
    Json sums = Json::array();
    for (std::size_t i = 0; i < t.paths.size(); ++i) {
        const auto &p = t.paths[i];
        Json s{{"path_id", i}, {"escaped", p.escaped}, {"lost", p.lost}, {"degenerate_end", p.degenerate_end}};
        if (p.escaped) s["escape_t"] = p.escape_t;
        if (p.lost) s["lost_t"] = p.lost_t;
        sums.push_back(s);
    }
    j["summary"] = sums;
    Json snaps = Json::array();
    for (std::size_t k = 0; k < t.snapshots.size(); ++k) {
        Json pts = Json::array();
        for (const auto &tp : t.snapshots[k])
            pts.push_back({{"point", point_to_json(tp.point)},
                           {"value", complex_to_json(tp.value)},
                           {"escaped", tp.escaped}});
        snaps.push_back({{"t", t.t_grid[k]}, {"points", pts}});
    }
    j["snapshots"] = snaps;
    return j;
}

std::string track_to_csv(const CriticalTrack &t) {
    std::string out = "t,path_id,re_value,im_value,escaped\n";
    for (std::size_t k = 0; k < t.snapshots.size(); ++k)
        for (std::size_t i = 0; i < t.snapshots[k].size(); ++i) {
            const auto &tp = t.snapshots[k][i];
            out += format_double(t.t_grid[k]) + "," + std::to_string(i) + "," +
                   format_double(std::abs(tp.value.real()) < 1e-15 ? 0.0 : tp.value.real()) + "," +
                   format_double(std::abs(tp.value.imag()) < 1e-15 ? 0.0 : tp.value.imag()) + "," +
                   (tp.escaped ? "1" : "0") + "\n";
        }
    return out;
}

} // namespace milnor
