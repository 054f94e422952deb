// Command-line front end. Exit codes: 0 success, 1 a verified claim is
// false, 2 bad input.
#include "milnor/io.hpp"
#include "milnor/stabilize.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <optional>
#include <string>

using namespace milnor;

namespace {

struct Common {
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double tol_residual = 1e-9;
    double tol_dedupe = 1e-6;
    double tol_escape = 1e3;
    double tol_area = 1e-9;
};

struct ExitStatus {
    int code = 0;
};

void emit(const Common &c, const std::string &text) {
    if (c.out.empty()) std::cout << text;
    else write_file_atomic(c.out, text);
}

void require_format(const Common &c, std::initializer_list<const char *> allowed) {
    for (const char *a : allowed)
        if (c.format == a) return;
    std::string list;
    for (const char *a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
    throw InputError("--format must be one of: " + list);
}

Json load_json(const std::string &path) { return parse_json(read_text_file(path), path); }

GaussianRational parse_gaussian(const std::string &s) {
    const auto comma = s.find(',');
    Json j = comma == std::string::npos ? Json(s) : Json::array({s.substr(0, comma), s.substr(comma + 1)});
    return gaussian_from_json(j);
}

Json lattice_output(const DistinguishedBasis &b) { return basis_to_json(b); }

std::string render_lattice(const Common &c, const DistinguishedBasis &b, Json extra = Json::object()) {
    require_format(c, {"json", "dot"});
    if (c.format == "dot") return to_dot(b.lattice);
    Json j = lattice_output(b);
    for (const auto &[k, v] : extra.items()) j[k] = v;
    return dump_json(j);
}

SolveOptions solve_options(const Common &c, std::size_t starts) {
    SolveOptions o;
    o.starts = starts;
    o.seed = c.seed;
    o.threads = c.threads;
    o.residual_tol = c.tol_residual;
    o.dedupe_tol = c.tol_dedupe;
    return o;
}

struct FamilyArgs {
    std::string family;
    std::string poly_file;
    int p = 0, q = 0, r = 0;
    std::string a = "0", lambda, l = "0", mu = "0", hpq_file, qr_file;

    void add(CLI::App *sub) {
        auto *fam = sub->add_option("--family", family, "Built-in family name");
        auto *poly = sub->add_option("--poly", poly_file, "Polynomial JSON file");
        fam->excludes(poly);
        sub->add_option("--p", p);
        sub->add_option("--q", q);
        sub->add_option("--r", r);
        sub->add_option("--a", a, "Germ parameter a, \"re\" or \"re,im\"");
        sub->add_option("--lambda", lambda, "Use the lambda form of the germ");
        sub->add_option("--l", l);
        sub->add_option("--mu", mu);
        sub->add_option("--hpq", hpq_file, "Polynomial JSON for h_{p,q}(x, y)");
        sub->add_option("--qr", qr_file, "Polynomial JSON for Q_r(z)");
    }

    MultiPoly build() const {
        if (!poly_file.empty()) return poly_from_json(load_json(poly_file));
        if (family.empty()) throw InputError("one of --family or --poly is required");
        FamilyParams fp;
        fp.p = p;
        fp.q = q;
        fp.r = r;
        fp.a = parse_gaussian(a);
        if (!lambda.empty()) fp.lambda = rational_from_json(Json(lambda));
        fp.l = rational_from_json(Json(l));
        fp.mu = rational_from_json(Json(mu));
        if (!hpq_file.empty()) fp.hpq = poly_from_json(load_json(hpq_file));
        if (!qr_file.empty()) fp.qr = poly_from_json(load_json(qr_file));
        return builtin_family(family, fp);
    }
};

Divide builtin_divide(const std::string &name, int p, int q) {
    if (name == "four-lines") return four_lines_divide();
    if (name == "kernel") return kernel_divide();
    if (name == "hpq") return hpq_divide(p, q);
    throw InputError("unknown built-in divide '" + name + "' (four-lines, kernel, hpq)");
}

// Option storage that outlives the subcommand setup blocks.
template <class T, class... A>
T *keep(A &&...args) {
    static std::vector<std::unique_ptr<T>> store;
    store.push_back(std::make_unique<T>(std::forward<A>(args)...));
    return store.back().get();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Vanishing-cycle lattices, divides, mirror quivers, Floer complexes and critical-point tracking"};
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    app.add_option("--format", c.format, "Output format: json, csv or dot");
    app.add_option("--out", c.out, "Write output to this file (atomically)");
    app.add_option("--seed", c.seed, "Seed for sampling and start clouds");
    app.add_option("--threads", c.threads, "Worker threads for numerics")->check(CLI::Range(1u, 256u));
    app.add_option("--tol-residual", c.tol_residual)->check(CLI::PositiveNumber);
    app.add_option("--tol-dedupe", c.tol_dedupe)->check(CLI::PositiveNumber);
    app.add_option("--tol-escape", c.tol_escape)->check(CLI::PositiveNumber);
    app.add_option("--tol-area", c.tol_area)->check(CLI::PositiveNumber);

    std::function<int()> action;

    // lattice
    {
        auto *sub = app.add_subcommand("lattice", "Invariants of a lattice, or its Dynkin DOT graph");
        auto *in = keep<std::string>();
        sub->add_option("input", *in, "Lattice JSON")->required();
        sub->callback([&, in] {
            action = [&, in] {
                auto b = DistinguishedBasis::from_lattice(lattice_from_json(load_json(*in)), false);
                emit(c, render_lattice(c, b));
                return 0;
            };
        });
    }
    // torus
    {
        auto *sub = app.add_subcommand("torus", "Torus-class report; exit 1 unless in the null space and primitive");
        auto *in = keep<std::string>();
        sub->add_option("input", *in, "Lattice JSON")->required();
        sub->callback([&, in] {
            action = [&, in] {
                require_format(c, {"json"});
                const auto rep = torus_class_report(lattice_from_json(load_json(*in)));
                emit(c, dump_json(Json{{"in_nullspace", rep.in_nullspace}, {"primitive", rep.primitive}}));
                return rep.in_nullspace && rep.primitive ? 0 : 1;
            };
        });
    }
    // divide
    {
        auto *sub = app.add_subcommand("divide", "Intersection form and surface of a divide");
        auto *in = keep<std::string>();
        auto *builtin = keep<std::string>();
        auto *pq = keep<std::pair<int, int>>(3, 3);
        auto *emit_divide = keep<bool>(false);
        auto *fi = sub->add_option("input", *in, "Divide JSON");
        auto *fb = sub->add_option("--builtin", *builtin, "four-lines, kernel or hpq");
        fi->excludes(fb);
        sub->add_option("--p", pq->first, "p for --builtin hpq");
        sub->add_option("--q", pq->second, "q for --builtin hpq");
        sub->add_flag("--emit-divide", *emit_divide, "Print the divide itself as JSON");
        sub->callback([&, in, builtin, pq, emit_divide] {
            action = [&, in, builtin, pq, emit_divide] {
                if (in->empty() && builtin->empty()) throw InputError("give a divide file or --builtin");
                const Divide d = in->empty() ? builtin_divide(*builtin, pq->first, pq->second)
                                             : divide_from_json(load_json(*in));
                if (*emit_divide) {
                    require_format(c, {"json"});
                    emit(c, dump_json(divide_to_json(d)));
                    return 0;
                }
                const int mu = validate(d);
                const auto b = acampo_form(d);
                Json extra;
                extra["mu"] = mu;
                extra["warnings"] = acampo_warnings(d);
                if (d.half_edges) extra["surface"] = surface_to_json(divide_to_surface(d));
                emit(c, render_lattice(c, b, extra));
                return 0;
            };
        });
    }
    // stabilize
    {
        auto *sub = app.add_subcommand("stabilize", "Gabrielov stabilisation P(x) + y^(d+1)");
        auto *in = keep<std::string>();
        auto *d = keep<int>(1);
        auto *opts = keep<StabilizeOptions>();
        auto *side = keep<std::string>("ascending");
        sub->add_option("input", *in, "Lattice JSON")->required();
        sub->add_option("--d", *d, "Number of sheets")->check(CLI::PositiveNumber);
        sub->add_option("--chain-sign", opts->chain_sign)->check(CLI::IsMember({-1, 1}));
        sub->add_option("--negated", *side)->check(CLI::IsMember({"ascending", "descending"}));
        sub->callback([&, in, d, opts, side] {
            action = [&, in, d, opts, side] {
                opts->negated = *side == "ascending" ? NegatedSide::ascending : NegatedSide::descending;
                const auto b = DistinguishedBasis::from_lattice(lattice_from_json(load_json(*in)), false);
                emit(c, render_lattice(c, gabrielov_stabilize(b, *d, *opts)));
                return 0;
            };
        });
    }
    // mutate
    {
        auto *sub = app.add_subcommand("mutate", "Apply a mutation script to a lattice");
        auto *lat = keep<std::string>();
        auto *script = keep<std::string>();
        sub->add_option("--lattice", *lat, "Lattice JSON")->required();
        sub->add_option("--script", *script, "Mutation script")->required();
        sub->callback([&, lat, script] {
            action = [&, lat, script] {
                const auto b = DistinguishedBasis::from_lattice(lattice_from_json(load_json(*lat)));
                MutationScript s;
                try {
                    s = MutationScript::parse(read_text_file(*script));
                } catch (const LatticeError &e) {
                    throw InputError(*script + ": " + e.what());
                }
                const auto run = run_script(b, s);
                Json extra;
                extra["elementary_steps"] = run.elementary.size();
                emit(c, render_lattice(c, run.result, extra));
                return 0;
            };
        });
    }
    // tpqr
    {
        auto *sub = app.add_subcommand("tpqr", "Reference Dynkin form of T_{p,q,r}");
        auto *pqr = keep<std::array<int, 3>>();
        sub->add_option("p", (*pqr)[0])->required();
        sub->add_option("q", (*pqr)[1])->required();
        sub->add_option("r", (*pqr)[2])->required();
        sub->callback([&, pqr] {
            action = [&, pqr] {
                const auto b = DistinguishedBasis::from_lattice(gabrielov_tpqr_form((*pqr)[0], (*pqr)[1], (*pqr)[2]), false);
                emit(c, render_lattice(c, b));
                return 0;
            };
        });
    }
    // script
    {
        auto *sub = app.add_subcommand("script", "Print the mutation script for the T_{p,q,2} comparison");
        auto *pq = keep<std::pair<int, int>>();
        auto *suffix = keep<std::string>(":1");
        sub->add_option("p", pq->first)->required();
        sub->add_option("q", pq->second)->required();
        sub->add_option("--suffix", *suffix, "Label suffix of the stabilised basis");
        sub->callback([&, pq, suffix] {
            action = [&, pq, suffix] {
                emit(c, tpq2_script(pq->first, pq->second, *suffix).to_text());
                return 0;
            };
        });
    }
    // quiver
    {
        auto *sub = app.add_subcommand("quiver", "Quiver JSON and path-algebra dimensions");
        auto *in = keep<std::string>();
        auto *kind = keep<std::string>();
        auto *pqr = keep<std::vector<int>>();
        auto *perturbed = keep<bool>(false);
        sub->add_option("input", *in, "Quiver JSON");
        sub->add_option("--builtin", *kind, "fukaya or chen-krause")->check(CLI::IsMember({"fukaya", "chen-krause"}));
        sub->add_option("--pqr", *pqr, "p q r for --builtin")->expected(3);
        sub->add_flag("--perturbed", *perturbed, "Perturbed Chen-Krause relation");
        sub->callback([&, in, kind, pqr, perturbed] {
            action = [&, in, kind, pqr, perturbed] {
                require_format(c, {"json"});
                Quiver q;
                if (!kind->empty()) {
                    if (pqr->size() != 3) throw InputError("--builtin needs --pqr p q r");
                    q = *kind == "fukaya" ? tpqr_fukaya_quiver((*pqr)[0], (*pqr)[1], (*pqr)[2])
                                          : chen_krause_quiver((*pqr)[0], (*pqr)[1], (*pqr)[2], *perturbed);
                } else if (!in->empty()) {
                    q = quiver_from_json(load_json(*in));
                } else {
                    throw InputError("give a quiver file or --builtin");
                }
                const PathAlgebra alg(q);
                Json j = quiver_to_json(q);
                j["dim"] = alg.dim();
                Json dims = Json::array();
                for (const auto &s : q.vertices)
                    for (const auto &t : q.vertices)
                        if (const auto n = alg.bucket_dim(s, t))
                            dims.push_back(Json{{"src", s}, {"dst", t}, {"dim", n}});
                j["hom_dims"] = dims;
                emit(c, dump_json(j));
                return 0;
            };
        });
    }
    // verify-mirror
    {
        auto *sub = app.add_subcommand("verify-mirror", "Compare twisted complexes with the Chen-Krause algebra");
        auto *pqr = keep<std::array<int, 3>>();
        auto *perturbed = keep<bool>(false);
        sub->add_option("p", (*pqr)[0])->required();
        sub->add_option("q", (*pqr)[1])->required();
        sub->add_option("r", (*pqr)[2])->required();
        sub->add_flag("--perturbed", *perturbed, "Use the perturbed relation (negative control)");
        sub->callback([&, pqr, perturbed] {
            action = [&, pqr, perturbed] {
                require_format(c, {"json"});
                const auto rep = verify_mirror((*pqr)[0], (*pqr)[1], (*pqr)[2], *perturbed);
                emit(c, dump_json(mirror_report_to_json(rep)));
                return rep.pass ? 0 : 1;
            };
        });
    }
    // floer
    {
        auto *sub = app.add_subcommand("floer", "Floer complexes of the surgery torus against vanishing cycles");
        auto *pqr = keep<std::vector<int>>();
        auto *complex_file = keep<std::string>();
        auto *cycle = keep<std::string>();
        auto *alpha = keep<std::string>();
        auto *beta = keep<std::string>();
        sub->add_option("--pqr", *pqr, "p q r")->expected(3);
        sub->add_option("--complex", *complex_file, "Complex JSON instead of built-in cycles");
        sub->add_option("--cycle", *cycle, "Only this vanishing cycle");
        sub->add_option("--alpha", *alpha, "Holonomy alpha, \"re\" or \"re,im\"");
        sub->add_option("--beta", *beta, "Holonomy beta");
        sub->callback([&, pqr, complex_file, cycle, alpha, beta] {
            action = [&, pqr, complex_file, cycle, alpha, beta] {
                require_format(c, {"json"});
                GaussianRational a, b;
                if (alpha->empty() != beta->empty()) throw InputError("give both --alpha and --beta or neither");
                if (alpha->empty()) std::tie(a, b) = sample_holonomy(c.seed);
                else a = parse_gaussian(*alpha), b = parse_gaussian(*beta);
                Json j;
                j["alpha"] = gaussian_to_json(a);
                j["beta"] = gaussian_to_json(b);
                if (!complex_file->empty()) {
                    const auto cx = laurent_complex_from_json(load_json(*complex_file));
                    j["complex"] = laurent_complex_to_json(cx);
                    j["cohomology"] = cohomology_to_json(cohomology_at(cx, a, b));
                } else {
                    if (pqr->size() != 3) throw InputError("give --pqr p q r or --complex");
                    Json rows = Json::array();
                    for (const auto &label : tpqr_cycle_labels((*pqr)[0], (*pqr)[1], (*pqr)[2])) {
                        if (!cycle->empty() && label != *cycle) continue;
                        const auto cx = tpqr_floer_complex((*pqr)[0], (*pqr)[1], (*pqr)[2], label);
                        rows.push_back(Json{{"cycle", label},
                                            {"complex", laurent_complex_to_json(cx)},
                                            {"squares_to_zero", cx.squares_to_zero()},
                                            {"cohomology", cohomology_to_json(cohomology_at(cx, a, b))}});
                    }
                    if (rows.empty()) throw InputError("unknown cycle '" + *cycle + "'");
                    j["cycles"] = rows;
                }
                emit(c, dump_json(j));
                return 0;
            };
        });
    }
    // obstruction
    {
        auto *sub = app.add_subcommand("obstruction", "Split-generation obstruction report; exit 1 if it does not hold");
        auto *pqr = keep<std::array<int, 3>>();
        sub->add_option("p", (*pqr)[0])->required();
        sub->add_option("q", (*pqr)[1])->required();
        sub->add_option("r", (*pqr)[2])->required();
        sub->callback([&, pqr] {
            action = [&, pqr] {
                require_format(c, {"json"});
                const auto rep = generation_obstruction_report((*pqr)[0], (*pqr)[1], (*pqr)[2], c.seed);
                emit(c, dump_json(obstruction_to_json(rep)));
                return rep.all_vanish ? 0 : 1;
            };
        });
    }
    // surgery
    {
        auto *sub = app.add_subcommand("surgery", "Exactness and Maslov predicates of a Lagrangian surgery");
        auto *s = keep<SurgeryData>();
        sub->add_option("--areas", s->disc_areas, "Areas of the two discs")->required();
        sub->add_option("--params", s->surgery_params, "Surgery parameters")->required();
        sub->add_option("--index-diff", s->index_diff, "Index difference of the two intersection points");
        sub->callback([&, s] {
            action = [&, s] {
                require_format(c, {"json"});
                const auto v = surgery_predicates(*s, c.tol_area);
                emit(c, dump_json(Json{{"exact", v.exact}, {"maslov_zero", v.maslov_zero}}));
                return 0;
            };
        });
    }
    // family
    {
        auto *sub = app.add_subcommand("family", "Expand a polynomial family to JSON");
        auto *fa = keep<FamilyArgs>();
        fa->add(sub);
        sub->callback([&, fa] {
            action = [&, fa] {
                require_format(c, {"json"});
                const auto p = fa->build();
                Json j = poly_to_json(p);
                j["text"] = p.to_string();
                emit(c, dump_json(j));
                return 0;
            };
        });
    }
    // solve
    {
        auto *sub = app.add_subcommand("solve", "Critical points of a polynomial");
        auto *fa = keep<FamilyArgs>();
        auto *t = keep<double>(0);
        auto *starts = keep<std::size_t>(3000);
        fa->add(sub);
        sub->add_option("--t", *t, "Value of the family parameter");
        sub->add_option("--starts", *starts)->check(CLI::PositiveNumber);
        sub->callback([&, fa, t, starts] {
            action = [&, fa, t, starts] {
                require_format(c, {"json"});
                emit(c, dump_json(solve_to_json(grad_solve(fa->build(), solve_options(c, *starts), *t))));
                return 0;
            };
        });
    }
    // track
    {
        auto *sub = app.add_subcommand("track", "Follow critical points along t in [0, 1]");
        auto *fa = keep<FamilyArgs>();
        auto *grid = keep<std::size_t>(51);
        auto *starts = keep<std::size_t>(3000);
        fa->add(sub);
        sub->add_option("--grid", *grid, "Number of grid points")->check(CLI::Range(2, 100000));
        sub->add_option("--starts", *starts)->check(CLI::PositiveNumber);
        sub->callback([&, fa, grid, starts] {
            action = [&, fa, grid, starts] {
                require_format(c, {"csv", "json"});
                TrackOptions o;
                o.solve = solve_options(c, *starts);
                o.escape_radius = c.tol_escape;
                const auto tr = track_family(fa->build(), uniform_grid(*grid), o);
                emit(c, c.format == "csv" ? track_to_csv(tr) : dump_json(track_to_json(tr)));
                return 0;
            };
        });
    }

    auto *format_opt = app.get_option("--format");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }
    // track writes the plot CSV unless asked otherwise.
    if (format_opt->count() == 0 && app.got_subcommand("track")) c.format = "csv";
    try {
        return action();
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
