#include "milnor/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace milnor {

namespace {

void require(bool ok, const std::string &msg) {
    if (!ok) throw LatticeError(msg);
}

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

} // namespace

std::optional<std::size_t> IntersectionLattice::find(const std::string &label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    return std::nullopt;
}

std::size_t IntersectionLattice::index_of(const std::string &label) const {
    auto i = find(label);
    require(i.has_value(), "unknown cycle label '" + label + "'");
    return *i;
}

std::int64_t IntersectionLattice::pairing(const std::string &a, const std::string &b) const {
    return gram[index_of(a)][index_of(b)];
}

void IntersectionLattice::validate() const {
    const std::size_t n = labels.size();
    require(gram.size() == n, "gram dimension does not match label count");
    std::set<std::string> seen;
    for (const auto &l : labels) {
        require(!l.empty(), "empty cycle label");
        require(seen.insert(l).second, "duplicate cycle label '" + l + "'");
    }
    for (std::size_t i = 0; i < n; ++i) {
        require(gram[i].size() == n, "gram is not square");
        require(gram[i][i] == -2, "diagonal entry of '" + labels[i] + "' is not -2");
        for (std::size_t j = 0; j < i; ++j)
            require(gram[i][j] == gram[j][i], "gram is not symmetric");
    }
}

IntersectionLattice make_lattice(std::vector<std::string> labels, IntMatrix gram) {
    IntersectionLattice l{std::move(labels), std::move(gram)};
    l.validate();
    return l;
}

DistinguishedBasis DistinguishedBasis::from_lattice(const IntersectionLattice &lattice,
                                                    bool track_coords) {
    lattice.validate();
    DistinguishedBasis b;
    b.lattice = lattice;
    b.initial_gram = lattice.gram;
    if (track_coords) b.coords = identity_matrix(lattice.rank());
    b.history.assign(lattice.rank(), {});
    return b;
}

std::string Step::to_string() const {
    std::ostringstream os;
    switch (kind) {
    case StepKind::right: os << "R " << position; break;
    case StepKind::left: os << "L " << position; break;
    case StepKind::swap: os << "S " << position; break;
    case StepKind::rotate: os << "C " << position; break;
    case StepKind::rename: os << "N " << target << ' ' << tool; break;
    case StepKind::twist:
        os << "T " << target << ' ' << tool;
        if (inverse) os << " -1";
        break;
    }
    return os.str();
}

MutationScript MutationScript::parse(const std::string &text) {
    MutationScript script;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        auto fail = [&](const std::string &why) {
            throw LatticeError("script line " + std::to_string(lineno) + ": " + why);
        };
        auto number = [&](const std::string &s) -> std::size_t {
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(s, &used);
            } catch (const std::exception &) {
                fail("expected a position, got '" + s + "'");
            }
            if (used != s.size() || v < 1) fail("expected a positive position, got '" + s + "'");
            return static_cast<std::size_t>(v);
        };
        const std::string &k = tok[0];
        if (k == "R" || k == "L" || k == "S" || k == "C") {
            if (tok.size() != 2) fail("step '" + k + "' takes one position");
            const std::size_t pos = number(tok[1]);
            if (k == "R") script.steps.push_back(Step::right(pos));
            else if (k == "L") script.steps.push_back(Step::left(pos));
            else if (k == "S") script.steps.push_back(Step::swap(pos));
            else script.steps.push_back(Step::rotate(pos));
        } else if (k == "T") {
            if (tok.size() != 3 && tok.size() != 4) fail("twist takes target, tool and optional -1");
            bool inv = false;
            if (tok.size() == 4) {
                if (tok[3] != "-1") fail("twist flag must be -1");
                inv = true;
            }
            script.steps.push_back(Step::twist(tok[1], tok[2], inv));
        } else if (k == "N") {
            if (tok.size() != 3) fail("rename takes two labels");
            script.steps.push_back(Step::rename(tok[1], tok[2]));
        } else {
            fail("unknown step kind '" + k + "'");
        }
    }
    return script;
}

std::string MutationScript::to_text() const {
    std::string out;
    for (const auto &s : steps) {
        out += s.to_string();
        out += '\n';
    }
    return out;
}

IntVector reflect(const IntersectionLattice &lattice, std::size_t a, const IntVector &x) {
    require(a < lattice.rank(), "reflection index out of range");
    require(x.size() == lattice.rank(), "vector length does not match lattice rank");
    std::int64_t ax = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
        ax = checked_add(ax, checked_mul(lattice.gram[a][j], x[j]));
    IntVector y = x;
    y[a] = checked_add(y[a], ax);
    return y;
}

namespace {

// Applies the change of basis E (acting on columns k, k+1 only) given by
// new_k = c0*e_k + c1*e_{k+1}, new_{k+1} = d0*e_k + d1*e_{k+1}.
void apply_pair_transform(DistinguishedBasis &b, std::size_t k, std::int64_t c0, std::int64_t c1,
                          std::int64_t d0, std::int64_t d1) {
    auto &g = b.lattice.gram;
    const std::size_t n = g.size();
    auto columns = [&](IntMatrix &m) {
        for (auto &row : m) {
            const std::int64_t x = row[k], y = row[k + 1];
            row[k] = checked_add(checked_mul(c0, x), checked_mul(c1, y));
            row[k + 1] = checked_add(checked_mul(d0, x), checked_mul(d1, y));
        }
    };
    columns(g);
    for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t x = g[k][j], y = g[k + 1][j];
        g[k][j] = checked_add(checked_mul(c0, x), checked_mul(c1, y));
        g[k + 1][j] = checked_add(checked_mul(d0, x), checked_mul(d1, y));
    }
    if (b.coords) columns(*b.coords);
}

void permute(DistinguishedBasis &b, const std::vector<std::size_t> &perm) {
    // New position i holds old position perm[i].
    const std::size_t n = perm.size();
    auto &l = b.lattice;
    std::vector<std::string> labels(n);
    IntMatrix g(n, IntVector(n));
    std::vector<std::vector<std::string>> hist(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = l.labels[perm[i]];
        hist[i] = b.history[perm[i]];
        for (std::size_t j = 0; j < n; ++j) g[i][j] = l.gram[perm[i]][perm[j]];
    }
    if (b.coords) {
        IntMatrix c(n, IntVector(n));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t i = 0; i < n; ++i) c[r][i] = (*b.coords)[r][perm[i]];
        b.coords = std::move(c);
    }
    l.labels = std::move(labels);
    l.gram = std::move(g);
    b.history = std::move(hist);
}

} // namespace

DistinguishedBasis mutate(const DistinguishedBasis &basis, const Step &step) {
    const std::size_t n = basis.lattice.rank();
    DistinguishedBasis b = basis;
    switch (step.kind) {
    case StepKind::right:
    case StepKind::left:
    case StepKind::swap: {
        require(step.position >= 1 && step.position + 1 <= n,
                "mutation position " + std::to_string(step.position) + " outside [1, " +
                    std::to_string(n == 0 ? 0 : n - 1) + "]");
        const std::size_t k = step.position - 1;
        const std::int64_t s = b.lattice.gram[k][k + 1];
        if (step.kind == StepKind::swap)
            require(s == 0, "swap at " + std::to_string(step.position) + " pairs '" +
                                b.lattice.labels[k] + "' and '" + b.lattice.labels[k + 1] +
                                "' to " + std::to_string(s));
        auto &labels = b.lattice.labels;
        if (step.kind == StepKind::left) {
            // (c_k, c_{k+1}) -> (c_{k+1}, c_k + s c_{k+1})
            apply_pair_transform(b, k, 0, 1, 1, s);
            if (s != 0) b.history[k].push_back("L:" + labels[k + 1]);
        } else {
            // (c_k, c_{k+1}) -> (c_{k+1} + s c_k, c_k)
            apply_pair_transform(b, k, s, 1, 1, 0);
            if (s != 0) b.history[k + 1].push_back("R:" + labels[k]);
        }
        std::swap(labels[k], labels[k + 1]);
        std::swap(b.history[k], b.history[k + 1]);
        break;
    }
    case StepKind::rotate: {
        require(step.position >= 1 && step.position <= n,
                "rotation position " + std::to_string(step.position) + " outside [1, " +
                    std::to_string(n) + "]");
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = (i + step.position - 1) % n;
        permute(b, perm);
        break;
    }
    case StepKind::rename: {
        const std::size_t i = b.lattice.index_of(step.target);
        if (step.tool != step.target)
            require(!b.lattice.find(step.tool), "rename target '" + step.tool + "' already exists");
        require(!step.tool.empty(), "empty label in rename");
        b.lattice.labels[i] = step.tool;
        break;
    }
    case StepKind::twist:
        throw LatticeError("named twist must be resolved before mutate()");
    }
    return b;
}

std::vector<Step> resolve_twist(const DistinguishedBasis &basis, const Step &tw) {
    require(tw.kind == StepKind::twist, "resolve_twist expects a named twist");
    const auto &lat = basis.lattice;
    const std::size_t t = lat.index_of(tw.target);
    const std::size_t u = lat.index_of(tw.tool);
    require(t != u, "twist of '" + tw.target + "' by itself");
    auto orthogonal_run = [&](std::size_t who, std::size_t from, std::size_t to) {
        for (std::size_t i = from; i < to; ++i)
            if (lat.gram[who][i] != 0) return false;
        return true;
    };
    std::vector<Step> out;
    // `first` must end up immediately before `second`.
    const std::size_t first = tw.inverse ? t : u;
    const std::size_t second = tw.inverse ? u : t;
    require(first < second, "cannot twist '" + tw.target + "' by '" + tw.tool +
                                "': wrong relative order (insert a rotation)");
    // 1-based position of the adjacent pair once the gap is closed.
    std::size_t pos = second;
    if (second - first > 1) {
        if (orthogonal_run(second, first + 1, second)) {
            for (std::size_t i = second; i > first + 1; --i) out.push_back(Step::swap(i));
            pos = first + 1;
        } else if (orthogonal_run(first, first + 1, second)) {
            for (std::size_t i = first; i + 1 < second; ++i) out.push_back(Step::swap(i + 1));
        } else {
            throw LatticeError("cannot bring '" + tw.tool + "' next to '" + tw.target +
                               "' by trivial mutations");
        }
    }
    out.push_back(tw.inverse ? Step::left(pos) : Step::right(pos));
    return out;
}

ScriptRun run_script(const DistinguishedBasis &basis, const MutationScript &script) {
    ScriptRun run{basis, {}};
    std::size_t index = 0;
    for (const auto &step : script.steps) {
        ++index;
        try {
            if (step.kind == StepKind::twist) {
                for (const auto &e : resolve_twist(run.result, step)) {
                    run.result = mutate(run.result, e);
                    run.elementary.push_back(e);
                }
            } else {
                run.result = mutate(run.result, step);
                run.elementary.push_back(step);
            }
        } catch (const LatticeError &e) {
            throw LatticeError("step " + std::to_string(index) + " (" + step.to_string() +
                               "): " + e.what());
        }
    }
    return run;
}

SmithDecomposition smith_decomposition(const IntMatrix &src) {
    const std::size_t rows = src.size();
    const std::size_t cols = rows ? src[0].size() : 0;
    std::vector<std::vector<BigInt>> m(rows, std::vector<BigInt>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = src[i][j];
    std::vector<std::vector<BigInt>> vinv(cols, std::vector<BigInt>(cols, 0));
    for (std::size_t i = 0; i < cols; ++i) vinv[i][i] = 1;

    // Column op col_j += c*col_i corresponds to row op row_i -= c*row_j on V^-1.
    auto col_add = [&](std::size_t j, std::size_t i, const BigInt &c) {
        for (std::size_t r = 0; r < rows; ++r) m[r][j] += c * m[r][i];
        for (std::size_t k = 0; k < cols; ++k) vinv[i][k] -= c * vinv[j][k];
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < rows; ++r) std::swap(m[r][i], m[r][j]);
        std::swap(vinv[i], vinv[j]);
    };
    auto row_add = [&](std::size_t j, std::size_t i, const BigInt &c) {
        for (std::size_t k = 0; k < cols; ++k) m[j][k] += c * m[i][k];
    };

    const std::size_t lim = std::min(rows, cols);
    for (std::size_t t = 0; t < lim; ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pr = rows, pc = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == rows) goto done;
            std::swap(m[pr], m[t]);
            if (pc != t) col_swap(pc, t);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                const BigInt q = m[i][t] / m[t][t];
                row_add(i, t, -q);
                if (m[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                const BigInt q = m[t][j] / m[t][t];
                col_add(j, t, -q);
                if (m[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // Pivot must divide the rest of the block.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        row_add(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (m[t][t] < 0) {
            for (std::size_t r = 0; r < rows; ++r) m[r][t] = -m[r][t];
            for (std::size_t k = 0; k < cols; ++k) vinv[t][k] = -vinv[t][k];
        }
    }
done:
    SmithDecomposition out;
    out.diagonal.assign(lim, 0);
    for (std::size_t t = 0; t < lim; ++t) out.diagonal[t] = m[t][t];
    out.right_inverse = std::move(vinv);
    return out;
}

std::pair<std::size_t, std::size_t> rational_signature(const IntMatrix &gram, std::size_t *rank) {
    const std::size_t n = gram.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = gram[i][j];
    std::size_t pos = 0, neg = 0;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && a[i][i] != 0) {
                p = i;
                break;
            }
        if (p == n) {
            // Zero diagonal: make one nonzero by a congruence row/col addition.
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                if (!done[i])
                    for (std::size_t j = i + 1; j < n; ++j)
                        if (!done[j] && a[i][j] != 0) {
                            pi = i;
                            pj = j;
                            break;
                        }
            if (pi == n) break;
            for (std::size_t k = 0; k < n; ++k) a[pi][k] += a[pj][k];
            for (std::size_t k = 0; k < n; ++k) a[k][pi] += a[k][pj];
            p = pi;
        }
        const Rational d = a[p][p];
        (d > 0 ? pos : neg) += 1;
        done[p] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a[i][p] == 0) continue;
            const Rational f = a[i][p] / d;
            for (std::size_t k = 0; k < n; ++k) a[i][k] -= f * a[p][k];
            for (std::size_t k = 0; k < n; ++k) a[k][i] -= f * a[k][p];
        }
    }
    if (rank) *rank = pos + neg;
    return {pos, neg};
}

LatticeInvariants invariants(const IntersectionLattice &lattice) {
    lattice.validate();
    LatticeInvariants inv;
    const auto smith = smith_decomposition(lattice.gram);
    inv.smith = smith.diagonal;
    inv.rank_of_form = static_cast<std::size_t>(
        std::count_if(inv.smith.begin(), inv.smith.end(), [](const BigInt &v) { return v != 0; }));
    inv.nullity = lattice.rank() - inv.rank_of_form;
    inv.det = bareiss_det(lattice.gram);
    inv.signature = rational_signature(lattice.gram);
    return inv;
}

IntersectionLattice tpqr_arm_form(int p, int q, int r) {
    require(p >= 1 && q >= 1 && r >= 1, "arm parameters must be positive");
    std::vector<std::string> labels{"A", "B"};
    const std::pair<char, int> arms[] = {{'P', p}, {'Q', q}, {'R', r}};
    for (auto [c, m] : arms)
        for (int i = 1; i < m; ++i) labels.push_back(std::string(1, c) + std::to_string(i));
    const std::size_t n = labels.size();
    IntMatrix g(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) g[i][i] = -2;
    auto set = [&](std::size_t a, std::size_t b, std::int64_t v) { g[a][b] = g[b][a] = v; };
    set(0, 1, -2);
    std::size_t start = 2;
    for (auto [c, m] : arms) {
        (void)c;
        if (m >= 2) {
            set(0, start, 1);
            set(1, start, 1);
            for (int i = 0; i + 2 < m; ++i) set(start + i, start + i + 1, 1);
        }
        start += static_cast<std::size_t>(m - 1);
    }
    return make_lattice(std::move(labels), std::move(g));
}

IntersectionLattice gabrielov_tpqr_form(int p, int q, int r) {
    require(p >= 3 && q >= 3, "p and q must be at least 3");
    require(r >= 2, "r must be at least 2");
    // 1/p + 1/q + 1/r <= 1  <=>  qr + pr + pq <= pqr
    require(static_cast<long long>(q) * r + static_cast<long long>(p) * r +
                    static_cast<long long>(p) * q <=
                static_cast<long long>(p) * q * r,
            "parameters violate 1/p + 1/q + 1/r <= 1");
    return tpqr_arm_form(p, q, r);
}

TorusClassReport torus_class_report(const IntersectionLattice &lattice) {
    lattice.validate();
    const auto a = lattice.find("A");
    const auto b = lattice.find("B");
    require(a && b, "torus class needs cycles labelled A and B");
    const std::size_t n = lattice.rank();
    IntVector x(n, 0);
    x[*a] = 1;
    x[*b] = -1;
    TorusClassReport rep;
    const IntVector gx = multiply(lattice.gram, x);
    rep.in_nullspace = std::all_of(gx.begin(), gx.end(), [](std::int64_t v) { return v == 0; });
    const auto smith = smith_decomposition(lattice.gram);
    BigInt g = 0;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt y = 0;
        for (std::size_t k = 0; k < n; ++k) y += smith.right_inverse[i][k] * x[k];
        g = gcd(g, abs(y));
    }
    rep.primitive = (g == 1);
    return rep;
}

std::optional<std::vector<int>> sign_normalization(const IntersectionLattice &a,
                                                   const IntersectionLattice &b) {
    const std::size_t n = b.rank();
    if (a.rank() != n) return std::nullopt;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto j = a.find(b.labels[i]);
        if (!j) return std::nullopt;
        perm[i] = *j;
    }
    auto h = [&](std::size_t i, std::size_t j) { return a.gram[perm[i]][perm[j]]; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (iabs(h(i, j)) != iabs(b.gram[i][j])) return std::nullopt;
    // Signs are forced along edges of the nonzero graph, so propagating from
    // one root per component decides the question up to a global flip there.
    std::vector<int> d(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (d[root] != 0) continue;
        d[root] = 1;
        std::vector<std::size_t> stack{root};
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || h(i, j) == 0 || d[j] != 0) continue;
                d[j] = d[i] * (h(i, j) == b.gram[i][j] ? 1 : -1);
                stack.push_back(j);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (d[i] * d[j] * h(i, j) != b.gram[i][j]) return std::nullopt;
    return d;
}

bool equal_up_to_sign(const IntersectionLattice &a, const IntersectionLattice &b) {
    return sign_normalization(a, b).has_value();
}

std::vector<Step> reorder_by_trivial_mutations(const IntersectionLattice &lattice,
                                               const std::vector<std::string> &target) {
    const std::size_t n = lattice.rank();
    require(target.size() == n, "target order has the wrong length");
    std::vector<std::size_t> tpos(n);
    {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < n; ++i) {
            require(seen.insert(target[i]).second, "target order repeats '" + target[i] + "'");
            tpos[lattice.index_of(target[i])] = i;
        }
    }
    // Work with original indices; w is the current word.
    std::vector<std::size_t> w(n);
    std::iota(w.begin(), w.end(), 0);
    auto linked = [&](std::size_t x, std::size_t y) { return lattice.gram[x][y] != 0; };
    auto where = [&](std::size_t x) {
        return static_cast<std::size_t>(std::find(w.begin(), w.end(), x) - w.begin());
    };

    // Height function: a linked pair keeps its relative order when the heights
    // agree and flips once per unit of height difference (cyclic equivalence).
    std::vector<long long> height(n, 0);
    std::vector<bool> known(n, false);
    for (std::size_t root = 0; root < n; ++root) {
        if (known[root]) continue;
        known[root] = true;
        std::vector<std::size_t> stack{root};
        while (!stack.empty()) {
            const std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t y = 0; y < n; ++y) {
                if (y == x || !linked(x, y)) continue;
                const bool same = (x < y) == (tpos[x] < tpos[y]);
                const long long want = (x < y) ? height[x] - (same ? 0 : 1)
                                               : height[x] + (same ? 0 : 1);
                if (known[y]) {
                    require(height[y] == want, "orders are not related by rotations and "
                                               "trivial mutations");
                } else {
                    known[y] = true;
                    height[y] = want;
                    stack.push_back(y);
                }
            }
        }
    }
    const long long lo = n ? *std::min_element(height.begin(), height.end()) : 0;
    std::vector<long long> rest(n);
    for (std::size_t i = 0; i < n; ++i) rest[i] = height[i] - lo;

    std::vector<Step> steps;
    auto do_swap = [&](std::size_t i) {
        require(!linked(w[i], w[i + 1]), "internal error: non-trivial swap in reorder");
        steps.push_back(Step::swap(i + 1));
        std::swap(w[i], w[i + 1]);
    };
    while (std::any_of(rest.begin(), rest.end(), [](long long v) { return v > 0; })) {
        std::size_t pick = n;
        for (std::size_t i = 0; i < n && pick == n; ++i) {
            const std::size_t x = w[i];
            if (rest[x] <= 0) continue;
            bool source = true;
            for (std::size_t k = 0; k < i; ++k)
                if (linked(x, w[k])) {
                    source = false;
                    break;
                }
            if (source) pick = x;
        }
        require(pick != n, "reorder stalled: no movable cycle");
        for (std::size_t i = where(pick); i > 0; --i) do_swap(i - 1);
        steps.push_back(Step::rotate(2));
        std::rotate(w.begin(), w.begin() + 1, w.end());
        --rest[pick];
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (tpos[w[i]] > tpos[w[i + 1]]) {
                do_swap(i);
                changed = true;
            }
    }
    return steps;
}

std::string to_dot(const IntersectionLattice &lattice) {
    std::ostringstream os;
    os << "graph dynkin {\n";
    for (const auto &l : lattice.labels) os << "  \"" << l << "\";\n";
    const std::size_t n = lattice.rank();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::int64_t v = lattice.gram[i][j];
            if (v == 0) continue;
            os << "  \"" << lattice.labels[i] << "\" -- \"" << lattice.labels[j] << "\"";
            if (v == 1) os << ";\n";
            else if (v == -2) os << " [style=dashed, label=\"-2\"];\n";
            else os << " [label=\"" << v << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

} // namespace milnor
