#include "milnor/quiver.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace milnor {

namespace {

void require(bool ok, const std::string &msg) {
    if (!ok) throw QuiverError(msg);
}

struct RationalField {
    using T = Rational;
    T zero() const { return 0; }
    T from(std::int64_t v) const { return v; }
    bool is_zero(const T &a) const { return a == 0; }
    T add(const T &a, const T &b) const { return a + b; }
    T sub(const T &a, const T &b) const { return a - b; }
    T mul(const T &a, const T &b) const { return a * b; }
    T inv(const T &a) const { return 1 / a; }
};

struct ModField {
    using T = std::uint64_t;
    std::uint64_t p;
    T zero() const { return 0; }
    T from(std::int64_t v) const {
        const auto m = static_cast<std::int64_t>(p);
        return static_cast<T>(((v % m) + m) % m);
    }
    bool is_zero(const T &a) const { return a == 0; }
    T add(const T &a, const T &b) const { return (a + b) % p; }
    T sub(const T &a, const T &b) const { return (a + p - b) % p; }
    T mul(const T &a, const T &b) const {
        return (a * b) % p; // p < 2^31, so the product fits
    }
    T inv(const T &a) const {
        T r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
};

// Row-reduces `rows` in place, choosing pivots by scanning columns in
// `order`; returns the pivot column of each surviving row.
template <class Field>
std::vector<std::size_t> rref(const Field &f, std::vector<std::vector<typename Field::T>> &rows,
                              const std::vector<std::size_t> &order) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c : order) {
        std::size_t piv = r;
        while (piv < rows.size() && f.is_zero(rows[piv][c])) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        const auto inv = f.inv(rows[r][c]);
        for (auto &x : rows[r]) x = f.mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || f.is_zero(rows[i][c])) continue;
            const auto m = rows[i][c];
            for (std::size_t k = 0; k < rows[i].size(); ++k)
                rows[i][k] = f.sub(rows[i][k], f.mul(m, rows[r][k]));
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

using PathTable = std::map<std::pair<std::size_t, std::size_t>, std::vector<Path>>;

PathTable enumerate_paths(const Quiver &q) {
    const std::size_t nv = q.vertices.size();
    std::vector<std::vector<std::size_t>> out(nv);
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
        out[q.vertex_index(q.arrows[a].src)].push_back(a);
    PathTable table;
    std::function<void(Path &)> grow = [&](Path &p) {
        table[{p.src, p.dst}].push_back(p);
        for (std::size_t a : out[p.dst]) {
            Path next = p;
            next.arrows.push_back(a);
            next.dst = q.vertex_index(q.arrows[a].dst);
            grow(next);
        }
    };
    for (std::size_t v = 0; v < nv; ++v) {
        Path p{v, v, {}};
        grow(p);
    }
    for (auto &[key, paths] : table) {
        std::sort(paths.begin(), paths.end(), [&](const Path &a, const Path &b) {
            if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
            for (std::size_t i = 0; i < a.arrows.size(); ++i)
                if (a.arrows[i] != b.arrows[i])
                    return q.arrows[a.arrows[i]].name < q.arrows[b.arrows[i]].name;
            return false;
        });
    }
    return table;
}

Path resolve_path(const Quiver &q, const std::vector<std::string> &names) {
    require(!names.empty(), "empty path");
    Path p;
    for (const auto &n : names) p.arrows.push_back(q.arrow_index(n));
    p.src = q.vertex_index(q.arrows[p.arrows.front()].src);
    p.dst = q.vertex_index(q.arrows[p.arrows.back()].dst);
    for (std::size_t i = 0; i + 1 < p.arrows.size(); ++i)
        require(q.arrows[p.arrows[i]].dst == q.arrows[p.arrows[i + 1]].src,
                "arrows '" + q.arrows[p.arrows[i]].name + "' and '" +
                    q.arrows[p.arrows[i + 1]].name + "' do not compose");
    return p;
}

// Spanning set of the ideal inside bucket (s, t), as coefficient rows over
// the bucket's paths.
template <class Field>
std::vector<std::vector<typename Field::T>>
ideal_rows(const Field &f, const Quiver &q, const PathTable &paths, std::size_t s, std::size_t t,
           const std::map<std::vector<std::size_t>, std::size_t> &column) {
    std::vector<std::vector<typename Field::T>> rows;
    const std::size_t width = paths.at({s, t}).size();
    for (const auto &rel : q.relations) {
        const Path head = resolve_path(q, rel.front().path);
        auto before = paths.find({s, head.src});
        auto after = paths.find({head.dst, t});
        if (before == paths.end() || after == paths.end()) continue;
        for (const auto &b : before->second)
            for (const auto &a : after->second) {
                std::vector<typename Field::T> row(width, f.zero());
                for (const auto &term : rel) {
                    std::vector<std::size_t> arrows = b.arrows;
                    for (const auto &n : term.path) arrows.push_back(q.arrow_index(n));
                    arrows.insert(arrows.end(), a.arrows.begin(), a.arrows.end());
                    const std::size_t c = column.at(arrows);
                    row[c] = f.add(row[c], f.from(term.coef));
                }
                rows.push_back(std::move(row));
            }
    }
    return rows;
}

std::vector<std::size_t> reverse_order(std::size_t n) {
    std::vector<std::size_t> o(n);
    for (std::size_t i = 0; i < n; ++i) o[i] = n - 1 - i;
    return o;
}

std::map<std::vector<std::size_t>, std::size_t> column_map(const std::vector<Path> &paths) {
    std::map<std::vector<std::size_t>, std::size_t> m;
    for (std::size_t i = 0; i < paths.size(); ++i) m[paths[i].arrows] = i;
    return m;
}

} // namespace

std::size_t Quiver::vertex_index(const std::string &v) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == v) return i;
    throw QuiverError("unknown vertex '" + v + "'");
}

std::size_t Quiver::arrow_index(const std::string &a) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == a) return i;
    throw QuiverError("unknown arrow '" + a + "'");
}

void Quiver::validate() const {
    std::set<std::string> vs(vertices.begin(), vertices.end());
    require(vs.size() == vertices.size(), "duplicate vertex");
    std::set<std::string> names;
    std::vector<std::size_t> indeg(vertices.size(), 0);
    std::vector<std::vector<std::size_t>> out(vertices.size());
    for (const auto &a : arrows) {
        require(names.insert(a.name).second, "duplicate arrow '" + a.name + "'");
        const std::size_t s = vertex_index(a.src), t = vertex_index(a.dst);
        out[s].push_back(t);
        ++indeg[t];
    }
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < vertices.size(); ++v)
        if (indeg[v] == 0) ready.push_back(v);
    std::size_t seen = 0;
    while (!ready.empty()) {
        const std::size_t v = ready.back();
        ready.pop_back();
        ++seen;
        for (std::size_t w : out[v])
            if (--indeg[w] == 0) ready.push_back(w);
    }
    require(seen == vertices.size(), "quiver has an oriented cycle");
    for (const auto &rel : relations) {
        require(!rel.empty(), "empty relation");
        const Path head = resolve_path(*this, rel.front().path);
        for (const auto &term : rel) {
            require(term.coef != 0, "relation term with zero coefficient");
            const Path p = resolve_path(*this, term.path);
            require(p.src == head.src && p.dst == head.dst,
                    "relation terms do not share source and target");
        }
    }
}

PathAlgebra::PathAlgebra(Quiver q) : quiver_(std::move(q)) {
    quiver_.validate();
    const PathTable paths = enumerate_paths(quiver_);
    const RationalField f;
    for (const auto &[key, ps] : paths) {
        Bucket b;
        b.paths = ps;
        const auto column = column_map(ps);
        b.rref = ideal_rows(f, quiver_, paths, key.first, key.second, column);
        b.pivot = rref(f, b.rref, reverse_order(ps.size()));
        b.column_to_basis.assign(ps.size(), -1);
        std::set<std::size_t> piv(b.pivot.begin(), b.pivot.end());
        auto &global = basis_buckets_[key];
        for (std::size_t c = 0; c < ps.size(); ++c) {
            if (piv.count(c)) continue;
            b.column_to_basis[c] = static_cast<long>(basis_.size());
            global.push_back(basis_.size());
            basis_.push_back(ps[c]);
        }
        buckets_[key] = std::move(b);
    }
    for (std::size_t i = 0; i < basis_.size(); ++i)
        for (std::size_t j = 0; j < basis_.size(); ++j) {
            const Path &g = basis_[i], &h = basis_[j];
            if (h.dst != g.src) continue;
            Path p{h.src, g.dst, h.arrows};
            p.arrows.insert(p.arrows.end(), g.arrows.begin(), g.arrows.end());
            Element e = reduce(p.src, p.dst, path_column(p));
            if (!is_zero(e)) table_[{i, j}] = std::move(e);
        }
}

std::size_t PathAlgebra::path_column(const Path &p) const {
    const auto &b = buckets_.at({p.src, p.dst});
    for (std::size_t c = 0; c < b.paths.size(); ++c)
        if (b.paths[c].arrows == p.arrows) return c;
    throw QuiverError("path not found in its bucket");
}

Element PathAlgebra::reduce(std::size_t s, std::size_t t, std::size_t col) const {
    const auto &b = buckets_.at({s, t});
    Element e = zero();
    if (b.column_to_basis[col] >= 0) {
        e[static_cast<std::size_t>(b.column_to_basis[col])] = 1;
        return e;
    }
    for (std::size_t r = 0; r < b.pivot.size(); ++r) {
        if (b.pivot[r] != col) continue;
        // path = -(rest of the row), all of which sits in basis columns
        for (std::size_t c = 0; c < b.paths.size(); ++c) {
            if (c == col || b.rref[r][c] == 0) continue;
            e[static_cast<std::size_t>(b.column_to_basis[c])] -= b.rref[r][c];
        }
        return e;
    }
    throw QuiverError("internal error: column is neither basis nor pivot");
}

const std::vector<std::size_t> &PathAlgebra::bucket(std::size_t s, std::size_t t) const {
    static const std::vector<std::size_t> empty;
    auto it = basis_buckets_.find({s, t});
    return it == basis_buckets_.end() ? empty : it->second;
}

std::size_t PathAlgebra::bucket_dim(const std::string &s, const std::string &t) const {
    return bucket(quiver_.vertex_index(s), quiver_.vertex_index(t)).size();
}

std::string PathAlgebra::path_name(const Path &p) const {
    if (p.arrows.empty()) return "e_" + quiver_.vertices[p.src];
    std::string s;
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
        if (!s.empty()) s += "*";
        s += quiver_.arrows[*it].name;
    }
    return s;
}

Element PathAlgebra::path(const std::vector<std::string> &arrows, const std::string &vertex) const {
    if (arrows.empty()) return idempotent(vertex);
    const Path p = resolve_path(quiver_, arrows);
    return reduce(p.src, p.dst, path_column(p));
}

Element PathAlgebra::idempotent(const std::string &vertex) const {
    const std::size_t v = quiver_.vertex_index(vertex);
    return reduce(v, v, path_column(Path{v, v, {}}));
}

Element PathAlgebra::compose(const Element &g, const Element &f) const {
    Element out = zero();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 0) continue;
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (f[j] == 0) continue;
            if (const Element *p = product(i, j)) {
                const Rational c = g[i] * f[j];
                for (std::size_t k = 0; k < out.size(); ++k)
                    if ((*p)[k] != 0) out[k] += c * (*p)[k];
            }
        }
    }
    return out;
}

bool PathAlgebra::is_zero(const Element &e) const {
    return std::all_of(e.begin(), e.end(), [](const Rational &x) { return x == 0; });
}

std::optional<std::pair<std::size_t, std::size_t>> PathAlgebra::bucket_of(const Element &e) const {
    std::optional<std::pair<std::size_t, std::size_t>> key;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        const std::pair<std::size_t, std::size_t> k{basis_[i].src, basis_[i].dst};
        if (key && *key != k) return std::nullopt;
        key = k;
    }
    return key;
}

const Element *PathAlgebra::product(std::size_t i, std::size_t j) const {
    auto it = table_.find({i, j});
    return it == table_.end() ? nullptr : &it->second;
}

bool PathAlgebra::associative() const {
    const std::size_t n = dim();
    auto unit = [&](std::size_t i) {
        Element e = zero();
        e[i] = 1;
        return e;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (basis_[j].dst != basis_[i].src) continue;
            const Element ij = compose(unit(i), unit(j));
            for (std::size_t k = 0; k < n; ++k) {
                if (basis_[k].dst != basis_[j].src) continue;
                if (compose(ij, unit(k)) != compose(unit(i), compose(unit(j), unit(k)))) return false;
            }
        }
    return true;
}

std::map<std::pair<std::string, std::string>, std::size_t>
bucket_dimensions_mod_p(const Quiver &q, std::uint64_t prime) {
    require(prime >= 2 && prime < (1ULL << 31), "modulus must be a prime below 2^31");
    q.validate();
    const PathTable paths = enumerate_paths(q);
    const ModField f{prime};
    std::map<std::pair<std::string, std::string>, std::size_t> out;
    for (const auto &[key, ps] : paths) {
        auto rows = ideal_rows(f, q, paths, key.first, key.second, column_map(ps));
        const auto piv = rref(f, rows, reverse_order(ps.size()));
        const std::size_t d = ps.size() - piv.size();
        if (d) out[{q.vertices[key.first], q.vertices[key.second]}] = d;
    }
    return out;
}

namespace {

void require_tpqr(int p, int q, int r) {
    require(p >= 3 && q >= 3 && r >= 2, "need p, q >= 3 and r >= 2");
    require(static_cast<long long>(q) * r + static_cast<long long>(p) * r +
                    static_cast<long long>(p) * q <=
                static_cast<long long>(p) * q * r,
            "parameters violate 1/p + 1/q + 1/r <= 1");
}

std::string vname(char arm, int i, bool primed) {
    return std::string(1, arm) + (primed ? "'" : "") + std::to_string(i);
}

} // namespace

Quiver tpqr_fukaya_quiver(int p, int q, int r) {
    require_tpqr(p, q, r);
    Quiver qv;
    qv.vertices = {"A", "B"};
    const std::pair<char, int> arms[] = {{'P', p}, {'Q', q}, {'R', r}};
    for (auto [c, m] : arms)
        for (int i = 1; i < m; ++i) qv.vertices.push_back(vname(c, i, false));
    qv.arrows = {{"A", "B", "u"}, {"A", "B", "v"}};
    for (auto [c, m] : arms) {
        const char lower = static_cast<char>(c - 'A' + 'a');
        const std::string head = std::string(1, lower) + "_B";
        qv.arrows.push_back({"B", vname(c, 1, false), head});
        std::string prev = head;
        for (int i = 1; i + 1 < m; ++i) {
            const std::string name = std::string(1, lower) + std::to_string(i);
            qv.arrows.push_back({vname(c, i, false), vname(c, i + 1, false), name});
            // Consecutive arm arrows compose to zero, starting from the arrow
            // out of B: B does not meet the second cycle of any arm.
            qv.relations.push_back({{1, {prev, name}}});
            prev = name;
        }
    }
    qv.relations.push_back({{1, {"v", "p_B"}}});
    qv.relations.push_back({{1, {"u", "q_B"}}});
    qv.relations.push_back({{1, {"u", "r_B"}}, {-1, {"v", "r_B"}}});
    return qv;
}

Quiver chen_krause_quiver(int p, int q, int r, bool perturbed) {
    require_tpqr(p, q, r);
    Quiver qv;
    qv.vertices = {"A", "B"};
    const std::tuple<char, int, const char *, const char *> arms[] = {
        {'P', p, "b1", "x"}, {'Q', q, "b2", "y"}, {'R', r, "b3", "z"}};
    for (auto [c, m, b, x] : arms)
        for (int i = 1; i < m; ++i) qv.vertices.push_back(vname(c, i, true));
    qv.arrows = {{"A", "B", "a1"}, {"A", "B", "a2"}};
    for (auto [c, m, b, x] : arms) {
        qv.arrows.push_back({"B", vname(c, 1, true), b});
        for (int i = 1; i + 1 < m; ++i)
            qv.arrows.push_back({vname(c, i, true), vname(c, i + 1, true), x + std::to_string(i)});
    }
    qv.relations.push_back({{1, {"a2", "b1"}}});
    qv.relations.push_back({{1, {"a1", "b2"}}});
    if (perturbed) qv.relations.push_back({{1, {"a1", "b3"}}});
    else qv.relations.push_back({{1, {"a1", "b3"}}, {-1, {"a2", "b3"}}});
    return qv;
}

// ---------------------------------------------------------------------------
// Twisted complexes

namespace {

using Morphism = std::map<std::pair<std::size_t, std::size_t>, Element>; // (from, to)

struct HomComplex {
    const PathAlgebra &alg;
    const TwistedComplex &c1, &c2;
    struct Gen {
        std::size_t from, to, basis;
    };
    std::map<int, std::vector<Gen>> gens;
    std::map<int, std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t>> where;

    HomComplex(const PathAlgebra &a, const TwistedComplex &x, const TwistedComplex &y)
        : alg(a), c1(x), c2(y) {
        const auto &q = alg.quiver();
        for (std::size_t l = 0; l < c1.objects.size(); ++l)
            for (std::size_t k = 0; k < c2.objects.size(); ++k) {
                const int deg = c1.objects[l].second - c2.objects[k].second;
                for (std::size_t b : alg.bucket(q.vertex_index(c1.objects[l].first),
                                                q.vertex_index(c2.objects[k].first))) {
                    where[deg][{l, k, b}] = gens[deg].size();
                    gens[deg].push_back({l, k, b});
                }
            }
    }

    std::size_t size(int deg) const {
        auto it = gens.find(deg);
        return it == gens.end() ? 0 : it->second.size();
    }

    std::vector<Rational> vectorize(const Morphism &m, int deg) const {
        std::vector<Rational> v(size(deg), Rational(0));
        for (const auto &[key, e] : m)
            for (std::size_t b = 0; b < e.size(); ++b) {
                if (e[b] == 0) continue;
                auto it = where.find(deg);
                if (it == where.end()) throw QuiverError("morphism has no component of this degree");
                auto jt = it->second.find({key.first, key.second, b});
                if (jt == it->second.end()) throw QuiverError("morphism component outside the hom complex");
                v[jt->second] += e[b];
            }
        return v;
    }

    Morphism differential(const Morphism &phi, int deg) const {
        Morphism out;
        auto add = [&](std::size_t from, std::size_t to, const Element &e) {
            if (alg.is_zero(e)) return;
            auto &slot = out[{from, to}];
            if (slot.empty()) slot = alg.zero();
            for (std::size_t i = 0; i < e.size(); ++i) slot[i] += e[i];
        };
        const Rational sign = (deg % 2 == 0) ? -1 : 1;
        for (const auto &[key, e] : phi) {
            const auto [l, k] = key;
            for (const auto &[dk, d] : c2.differential)
                if (dk.second == k) add(l, dk.first, alg.compose(d, e));
            for (const auto &[dk, d] : c1.differential)
                if (dk.first == l) {
                    Element t = alg.compose(e, d);
                    for (auto &x : t) x *= sign;
                    add(dk.second, k, t);
                }
        }
        return out;
    }

    // Columns: images of the generators of degree deg in degree deg+1.
    std::vector<std::vector<Rational>> matrix(int deg) const {
        std::vector<std::vector<Rational>> cols;
        auto it = gens.find(deg);
        if (it == gens.end()) return cols;
        for (const auto &g : it->second) {
            Element e = alg.zero();
            e[g.basis] = 1;
            cols.push_back(vectorize(differential({{{g.from, g.to}, e}}, deg), deg + 1));
        }
        return cols;
    }

    std::size_t rank(int deg) const {
        auto cols = matrix(deg);
        if (cols.empty() || cols[0].empty()) return 0;
        return exact_rank(cols);
    }

    std::map<int, std::size_t> cohomology() const {
        std::map<int, std::size_t> out;
        for (const auto &[deg, g] : gens) {
            const std::size_t h = g.size() - rank(deg) - rank(deg - 1);
            if (h) out[deg] = h;
        }
        return out;
    }
};

Morphism compose_morphisms(const PathAlgebra &alg, const Morphism &g, const Morphism &f) {
    Morphism out;
    for (const auto &[fk, fe] : f)
        for (const auto &[gk, ge] : g) {
            if (gk.first != fk.second) continue;
            Element e = alg.compose(ge, fe);
            if (alg.is_zero(e)) continue;
            auto &slot = out[{fk.first, gk.second}];
            if (slot.empty()) slot = alg.zero();
            for (std::size_t i = 0; i < e.size(); ++i) slot[i] += e[i];
        }
    return out;
}

Morphism identity_morphism(const PathAlgebra &alg, const TwistedComplex &c) {
    Morphism m;
    for (std::size_t k = 0; k < c.objects.size(); ++k) m[{k, k}] = alg.idempotent(c.objects[k].first);
    return m;
}

} // namespace

void check_twisted_complex(const PathAlgebra &alg, const TwistedComplex &c) {
    const auto &q = alg.quiver();
    for (const auto &[v, s] : c.objects) q.vertex_index(v);
    for (const auto &[key, e] : c.differential) {
        const auto [k, l] = key;
        require(l < k && k < c.objects.size(), "differential is not strictly lower triangular");
        require(e.size() == alg.dim(), "differential entry has the wrong size");
        if (alg.is_zero(e)) continue;
        const auto b = alg.bucket_of(e);
        require(b && b->first == q.vertex_index(c.objects[l].first) &&
                    b->second == q.vertex_index(c.objects[k].first),
                "differential entry does not match its objects");
        require(c.objects[l].second - c.objects[k].second == 1, "differential entry must have degree one");
    }
    for (std::size_t k = 0; k < c.objects.size(); ++k)
        for (std::size_t l = 0; l < k; ++l) {
            Element sum = alg.zero();
            for (std::size_t m = l + 1; m < k; ++m) {
                auto a = c.differential.find({k, m}), b = c.differential.find({m, l});
                if (a == c.differential.end() || b == c.differential.end()) continue;
                const Element e = alg.compose(a->second, b->second);
                for (std::size_t i = 0; i < e.size(); ++i) sum[i] += e[i];
            }
            require(alg.is_zero(sum), "differential does not square to zero");
        }
}

std::map<int, std::size_t> twisted_hom(const PathAlgebra &alg, const TwistedComplex &c1,
                                       const TwistedComplex &c2) {
    check_twisted_complex(alg, c1);
    check_twisted_complex(alg, c2);
    return HomComplex(alg, c1, c2).cohomology();
}

TwistedComplex single_object(const std::string &vertex) { return TwistedComplex{{{vertex, 0}}, {}}; }

TwistedComplex arm_object(const PathAlgebra &alg, char arm, int arm_length, int i) {
    require(i >= 1 && i < arm_length, "arm object index out of range");
    const int len = arm_length - i;
    TwistedComplex c;
    const char lower = static_cast<char>(arm - 'A' + 'a');
    for (int k = 1; k <= len; ++k) c.objects.push_back({vname(arm, k, false), 1 - k});
    for (int k = 1; k < len; ++k)
        c.differential[{static_cast<std::size_t>(k), static_cast<std::size_t>(k - 1)}] =
            alg.path({std::string(1, lower) + std::to_string(k)});
    return c;
}

MirrorReport verify_mirror(int p, int q, int r, bool perturbed) {
    MirrorReport rep;
    rep.p = p;
    rep.q = q;
    rep.r = r;
    rep.perturbed = perturbed;
    const PathAlgebra fuk(tpqr_fukaya_quiver(p, q, r));
    const PathAlgebra ck(chen_krause_quiver(p, q, r, perturbed));
    rep.algebra_dim = ck.dim();

    // Summands of the tilting object, indexed like the Chen-Krause vertices.
    std::map<std::string, TwistedComplex> object;
    object["A"] = single_object("A");
    object["B"] = single_object("B");
    const std::pair<char, int> arms[] = {{'P', p}, {'Q', q}, {'R', r}};
    for (auto [c, m] : arms)
        for (int i = 1; i < m; ++i) object[vname(c, i, true)] = arm_object(fuk, c, m, i);
    for (const auto &[name, c] : object) check_twisted_complex(fuk, c);

    // Images of the Chen-Krause arrows.
    std::map<std::string, Morphism> image;
    image["a1"] = {{{0, 0}, fuk.path({"u"})}};
    image["a2"] = {{{0, 0}, fuk.path({"v"})}};
    image["b1"] = {{{0, 0}, fuk.path({"p_B"})}};
    image["b2"] = {{{0, 0}, fuk.path({"q_B"})}};
    image["b3"] = {{{0, 0}, fuk.path({"r_B"})}};
    const std::pair<char, char> arm_arrow[] = {{'P', 'x'}, {'Q', 'y'}, {'R', 'z'}};
    for (auto [c, x] : arm_arrow) {
        const int m = c == 'P' ? p : c == 'Q' ? q : r;
        for (int i = 1; i + 1 < m; ++i) {
            // Projection of P'_i onto its quotient P'_{i+1}.
            Morphism pr;
            const auto &target = object.at(vname(c, i + 1, true));
            for (std::size_t k = 0; k < target.objects.size(); ++k)
                pr[{k, k}] = fuk.idempotent(target.objects[k].first);
            image[std::string(1, x) + std::to_string(i)] = pr;
        }
    }

    const auto &cq = ck.quiver();
    auto image_of_path = [&](const Path &path) {
        if (path.arrows.empty()) return identity_morphism(fuk, object.at(cq.vertices[path.src]));
        Morphism m = image.at(cq.arrows[path.arrows[0]].name);
        for (std::size_t i = 1; i < path.arrows.size(); ++i)
            m = compose_morphisms(fuk, image.at(cq.arrows[path.arrows[i]].name), m);
        return m;
    };

    bool ok = true;
    for (const auto &a : cq.arrows) {
        HomComplex h(fuk, object.at(a.src), object.at(a.dst));
        const auto d = h.vectorize(h.differential(image.at(a.name), 0), 1);
        if (std::any_of(d.begin(), d.end(), [](const Rational &x) { return x != 0; })) {
            ok = false;
            rep.witnesses.push_back("image of arrow " + a.name + " is not a cocycle");
        }
    }

    auto coboundary_rank = [](const HomComplex &h, std::vector<std::vector<Rational>> extra) {
        auto cols = h.matrix(-1);
        const std::size_t base = cols.empty() ? 0 : exact_rank(cols);
        cols.insert(cols.end(), extra.begin(), extra.end());
        const std::size_t with = (cols.empty() || cols[0].empty()) ? 0 : exact_rank(cols);
        return with - base;
    };

    for (const auto &rel : cq.relations) {
        Path head;
        {
            head.arrows.clear();
            for (const auto &n : rel.front().path) head.arrows.push_back(cq.arrow_index(n));
            head.src = cq.vertex_index(cq.arrows[head.arrows.front()].src);
            head.dst = cq.vertex_index(cq.arrows[head.arrows.back()].dst);
        }
        HomComplex h(fuk, object.at(cq.vertices[head.src]), object.at(cq.vertices[head.dst]));
        std::vector<Rational> v(h.size(0), Rational(0));
        std::string text;
        for (const auto &term : rel) {
            Path pth{head.src, head.dst, {}};
            for (const auto &n : term.path) pth.arrows.push_back(cq.arrow_index(n));
            const auto w = h.vectorize(image_of_path(pth), 0);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += Rational(term.coef) * w[i];
            if (!text.empty()) text += term.coef < 0 ? " - " : " + ";
            else if (term.coef < 0) text += "-";
            const auto mag = term.coef < 0 ? -term.coef : term.coef;
            if (mag != 1) text += std::to_string(mag) + "*";
            text += ck.path_name(pth);
        }
        if (!v.empty() && coboundary_rank(h, {v}) != 0) {
            ok = false;
            rep.witnesses.push_back("relation " + text + " maps to a nonzero class in Hom(" +
                                    cq.vertices[head.src] + ", " + cq.vertices[head.dst] + ")");
        }
    }

    for (std::size_t s = 0; s < cq.vertices.size(); ++s)
        for (std::size_t t = 0; t < cq.vertices.size(); ++t) {
            const auto &x = cq.vertices[s], &y = cq.vertices[t];
            HomComplex h(fuk, object.at(x), object.at(y));
            MirrorPair row;
            row.src = x;
            row.dst = y;
            row.algebra_dim = ck.bucket(s, t).size();
            row.hom_dims = h.cohomology();
            std::vector<std::vector<Rational>> imgs;
            for (std::size_t b : ck.bucket(s, t)) imgs.push_back(h.vectorize(image_of_path(ck.basis()[b]), 0));
            row.image_rank = imgs.empty() || h.size(0) == 0 ? 0 : coboundary_rank(h, imgs);
            const std::size_t h0 = row.hom_dims.count(0) ? row.hom_dims.at(0) : 0;
            rep.endomorphism_dim += h0;
            for (const auto &[deg, dim] : row.hom_dims)
                if (deg != 0) {
                    ok = false;
                    rep.witnesses.push_back("Hom(" + x + ", " + y + ") has cohomology in degree " +
                                            std::to_string(deg));
                }
            if (h0 != row.algebra_dim) {
                ok = false;
                rep.witnesses.push_back("dim Hom(" + x + ", " + y + ") = " + std::to_string(h0) +
                                        " but the algebra has " + std::to_string(row.algebra_dim));
            }
            if (row.image_rank != row.algebra_dim) {
                ok = false;
                rep.witnesses.push_back("paths " + x + " -> " + y + " map to classes of rank " +
                                        std::to_string(row.image_rank));
            }
            if (row.algebra_dim || !row.hom_dims.empty()) rep.pairs.push_back(std::move(row));
        }
    rep.pass = ok;
    return rep;
}

} // namespace milnor
