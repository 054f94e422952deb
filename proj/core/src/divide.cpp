#include "milnor/divide.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace milnor {

namespace {

void require(bool ok, const std::string &msg) {
    if (!ok) throw DivideError(msg);
}

int mod4(int v) { return ((v % 4) + 4) % 4; }

// Union-find over string ids, used for connectivity checks.
struct Components {
    std::map<std::string, std::string> parent;
    std::string find(const std::string &x) {
        auto it = parent.find(x);
        if (it == parent.end()) return parent[x] = x;
        if (it->second == x) return x;
        return it->second = find(it->second);
    }
    void join(const std::string &a, const std::string &b) { parent[find(a)] = find(b); }
    std::size_t count() {
        std::set<std::string> roots;
        for (auto &[k, v] : parent) roots.insert(find(k));
        return roots.size();
    }
};

} // namespace

int validate(const Divide &d) {
    require(d.branches >= 1, "a divide needs at least one branch");
    const int k = static_cast<int>(d.crossings.size());
    const int mu = 2 * k - d.branches + 1;
    std::set<std::string> xs(d.crossings.begin(), d.crossings.end());
    require(xs.size() == d.crossings.size(), "duplicate crossing id");
    std::set<std::string> rs;
    for (const auto &r : d.regions) {
        require(rs.insert(r.id).second, "duplicate region id '" + r.id + "'");
        require(r.sign == 1 || r.sign == -1, "region '" + r.id + "' sign must be +1 or -1");
        require(!xs.count(r.id), "id '" + r.id + "' used for both a region and a crossing");
    }
    for (const auto &inc : d.incidence) {
        require(rs.count(inc.region), "incidence names unknown region '" + inc.region + "'");
        require(xs.count(inc.crossing), "incidence names unknown crossing '" + inc.crossing + "'");
        require(inc.mult >= 1, "incidence multiplicity must be positive");
    }
    for (const auto &[a, b] : d.adjacency) {
        require(rs.count(a) && rs.count(b), "adjacency names an unknown region");
        require(a != b, "region adjacent to itself");
    }
    Components comp;
    for (const auto &x : d.crossings) comp.find(x);
    for (const auto &r : d.regions) comp.find(r.id);
    for (const auto &inc : d.incidence) comp.join(inc.region, inc.crossing);
    for (const auto &[a, b] : d.adjacency) comp.join(a, b);
    if (d.half_edges) {
        const auto &link = d.half_edges->link;
        std::map<std::string, int> valence;
        int ends = 0;
        for (const auto &[from, to] : link) {
            require(xs.count(from.crossing), "half edge at unknown crossing '" + from.crossing + "'");
            require(from.port >= 0 && from.port < 4, "port out of range at '" + from.crossing + "'");
            ++valence[from.crossing];
            if (!to) {
                ++ends;
                continue;
            }
            auto back = link.find(*to);
            require(back != link.end() && back->second && *back->second == from,
                    "half edges at '" + from.crossing + "' are not paired symmetrically");
            comp.join(from.crossing, to->crossing);
        }
        for (const auto &x : d.crossings)
            require(valence[x] == 4, "crossing '" + x + "' does not have valence 4");
        require(ends == 2 * d.branches, "boundary ends do not match the branch count");
    }
    require(comp.count() <= 1, "divide is disconnected");
    require(static_cast<int>(d.regions.size()) + k == mu,
            "regions + crossings = " + std::to_string(d.regions.size() + k) + " but 2k - r + 1 = " +
                std::to_string(mu));
    return mu;
}

DistinguishedBasis acampo_form(const Divide &d) {
    validate(d);
    std::vector<std::string> labels;
    for (const auto &r : d.regions)
        if (r.sign < 0) labels.push_back(r.id);
    for (const auto &x : d.crossings) labels.push_back(x);
    for (const auto &r : d.regions)
        if (r.sign > 0) labels.push_back(r.id);
    const std::size_t n = labels.size();
    std::map<std::string, std::size_t> at;
    for (std::size_t i = 0; i < n; ++i) at[labels[i]] = i;
    std::map<std::string, int> sign;
    for (const auto &r : d.regions) sign[r.id] = r.sign;

    IntMatrix g(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) g[i][i] = -2;
    for (const auto &inc : d.incidence) {
        const std::size_t a = at[inc.region], b = at[inc.crossing];
        g[a][b] = g[b][a] = checked_add(g[a][b], sign[inc.region] * inc.mult);
    }
    for (const auto &[ra, rb] : d.adjacency) {
        if (sign[ra] == sign[rb]) continue;
        const std::size_t a = at[ra], b = at[rb];
        g[a][b] = g[b][a] = 1;
    }
    return DistinguishedBasis::from_lattice(make_lattice(std::move(labels), std::move(g)));
}

std::vector<std::string> acampo_warnings(const Divide &d) {
    std::map<std::pair<std::string, std::string>, int> total;
    for (const auto &inc : d.incidence) total[{inc.region, inc.crossing}] += inc.mult;
    std::vector<std::string> out;
    for (const auto &[key, m] : total)
        if (m > 1)
            out.push_back("region '" + key.first + "' meets crossing '" + key.second + "' " +
                          std::to_string(m) + " times; entry is " + std::to_string(m) +
                          " in absolute value");
    return out;
}

RibbonSurface divide_to_surface(const Divide &d) {
    const int mu = validate(d);
    require(d.half_edges.has_value(), "surface construction needs half-edge data");
    const auto &link = d.half_edges->link;
    RibbonSurface s;
    if (d.crossings.empty()) {
        // A smooth arc thickens to a disc.
        require(d.branches == 1, "crossing-free divide must be a single arc");
        s.euler = 1;
        s.boundary_components = 1;
        s.genus = 0;
        return s;
    }
    // Corner nodes: (dart, side) with side 0 = counter-clockwise edge of the
    // band, 1 = clockwise edge. Each node has degree two; boundary components
    // are the cycles.
    std::map<std::pair<Dart, int>, std::vector<std::pair<Dart, int>>> nb;
    auto join = [&](const std::pair<Dart, int> &a, const std::pair<Dart, int> &b) {
        nb[a].push_back(b);
        nb[b].push_back(a);
    };
    long internal = 0;
    for (const auto &[from, to] : link) {
        join({from, 0}, {Dart{from.crossing, mod4(from.port + 2)}, 1});
        if (!to) {
            join({from, 0}, {from, 1});
        } else if (from < *to) {
            // Half-twisted band swaps the sides relative to the port frames.
            join({from, 0}, {*to, 0});
            join({from, 1}, {*to, 1});
            ++internal;
        } else if (from == *to) {
            throw DivideError("dart linked to itself at '" + from.crossing + "'");
        }
    }
    std::set<std::pair<Dart, int>> seen;
    long cycles = 0;
    for (const auto &[node, adj] : nb) {
        (void)adj;
        if (seen.count(node)) continue;
        ++cycles;
        std::vector<std::pair<Dart, int>> stack{node};
        while (!stack.empty()) {
            auto c = stack.back();
            stack.pop_back();
            if (!seen.insert(c).second) continue;
            for (const auto &m : nb[c]) stack.push_back(m);
        }
    }
    for (const auto &x : d.crossings) s.orientation[x] = -1;
    for (const auto &x0 : d.crossings) {
        if (s.orientation[x0] >= 0) continue;
        s.orientation[x0] = 0;
        std::vector<std::string> stack{x0};
        while (!stack.empty()) {
            const std::string x = stack.back();
            stack.pop_back();
            for (int i = 0; i < 4; ++i) {
                const auto &to = link.at(Dart{x, i});
                if (!to) continue;
                const int need = s.orientation[x] ^ (i % 2) ^ 1 ^ (to->port % 2);
                int &c = s.orientation[to->crossing];
                if (c < 0) {
                    c = need;
                    stack.push_back(to->crossing);
                } else if (c != need) {
                    throw DivideError("non-orientable traversal at '" + to->crossing +
                                      "': inconsistent twist bookkeeping");
                }
            }
        }
    }
    s.euler = -internal;
    s.boundary_components = cycles;
    const long twice_genus = 2 - s.euler - s.boundary_components;
    require(twice_genus >= 0 && twice_genus % 2 == 0, "surface data give a non-integral genus");
    s.genus = twice_genus / 2;
    require(s.euler == 1 - mu, "Euler characteristic " + std::to_string(s.euler) +
                                   " differs from 1 - mu = " + std::to_string(1 - mu));
    return s;
}

HalfEdgeStructure half_edges_from_strands(const StrandData &strands) {
    using Visit = std::pair<std::size_t, std::size_t>;
    std::map<std::string, std::vector<Visit>> visits;
    for (std::size_t b = 0; b < strands.branches.size(); ++b)
        for (std::size_t i = 0; i < strands.branches[b].size(); ++i)
            visits[strands.branches[b][i]].push_back({b, i});
    // forward/backward port of each visit
    std::map<Visit, std::pair<int, int>> port;
    for (auto &[x, vs] : visits) {
        require(vs.size() == 2, "crossing '" + x + "' must be visited exactly twice");
        auto sit = strands.signs.find(x);
        require(sit != strands.signs.end() && (sit->second == 1 || sit->second == -1),
                "crossing '" + x + "' needs a sign of +1 or -1");
        std::sort(vs.begin(), vs.end());
        port[vs[0]] = {0, 2};
        port[vs[1]] = sit->second > 0 ? std::pair{1, 3} : std::pair{3, 1};
    }
    for (const auto &[x, s] : strands.signs)
        require(visits.count(x), "sign given for unvisited crossing '" + x + "'");
    HalfEdgeStructure h;
    for (std::size_t b = 0; b < strands.branches.size(); ++b) {
        const auto &br = strands.branches[b];
        require(!br.empty(), "branch without crossings; use the arc divide instead");
        for (std::size_t i = 0; i < br.size(); ++i) {
            const auto [fwd, bwd] = port[{b, i}];
            const Dart back{br[i], bwd}, ahead{br[i], fwd};
            if (i == 0) h.link[back] = std::nullopt;
            if (i + 1 == br.size()) {
                h.link[ahead] = std::nullopt;
            } else {
                const Dart next{br[i + 1], port[{b, i + 1}].second};
                h.link[ahead] = next;
                h.link[next] = ahead;
            }
        }
    }
    return h;
}

Divide divide_from_strands(const StrandData &strands, const SectorReference &ref) {
    Divide d;
    d.branches = static_cast<int>(strands.branches.size());
    d.half_edges = half_edges_from_strands(strands);
    const auto &link = d.half_edges->link;
    for (const auto &[x, s] : strands.signs) d.crossings.push_back(x);

    // Faces: follow a dart to its partner, then turn to the previous port.
    std::set<Dart> seen;
    std::vector<std::vector<Dart>> faces;
    for (const auto &[start, unused] : link) {
        (void)unused;
        if (seen.count(start)) continue;
        std::vector<Dart> cyc;
        Dart cur = start;
        bool bounded = true;
        while (!seen.count(cur)) {
            seen.insert(cur);
            cyc.push_back(cur);
            const auto &to = link.at(cur);
            if (!to) {
                bounded = false;
                break;
            }
            cur = Dart{to->crossing, mod4(to->port - 1)};
        }
        if (bounded && cur == start) faces.push_back(std::move(cyc));
    }

    // Sector signs alternate around a crossing and agree across an edge:
    // sector i+1 at X equals sector j at Y for an edge (X,i)-(Y,j).
    std::map<std::string, std::pair<int, int>> anchor;
    require(link.count(Dart{ref.crossing, 0}), "reference crossing '" + ref.crossing + "' unknown");
    anchor[ref.crossing] = {mod4(ref.sector), ref.sign};
    auto sector_sign = [&](const std::string &x, int s) {
        const auto [a, v] = anchor.at(x);
        return (mod4(s - a) % 2 == 0) ? v : -v;
    };
    std::vector<std::string> stack{ref.crossing};
    while (!stack.empty()) {
        const std::string x = stack.back();
        stack.pop_back();
        for (int i = 0; i < 4; ++i) {
            const auto &to = link.at(Dart{x, i});
            if (!to || anchor.count(to->crossing)) continue;
            anchor[to->crossing] = {to->port, sector_sign(x, mod4(i + 1))};
            stack.push_back(to->crossing);
        }
    }
    require(anchor.size() == d.crossings.size(), "divide is disconnected");

    std::map<Dart, std::size_t> face_of_corner;
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (const auto &dt : faces[f]) face_of_corner[Dart{dt.crossing, mod4(dt.port + 1)}] = f;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const std::string id = "r" + std::to_string(f);
        std::map<std::string, int> mult;
        std::set<int> signs;
        for (const auto &dt : faces[f]) {
            ++mult[dt.crossing];
            signs.insert(sector_sign(dt.crossing, mod4(dt.port + 1)));
        }
        require(signs.size() == 1, "inconsistent sector signs around a region");
        d.regions.push_back({id, *signs.begin()});
        for (const auto &[x, m] : mult) d.incidence.push_back({id, x, m});
    }
    std::set<std::pair<std::size_t, std::size_t>> adj;
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (const auto &dt : faces[f]) {
            const auto &to = link.at(dt);
            auto other = face_of_corner.find(Dart{to->crossing, mod4(to->port + 1)});
            if (other != face_of_corner.end() && other->second != f)
                adj.insert({std::min(f, other->second), std::max(f, other->second)});
        }
    for (const auto &[a, b] : adj)
        d.adjacency.push_back({"r" + std::to_string(a), "r" + std::to_string(b)});
    validate(d);
    return d;
}

namespace {

// Renames regions and puts regions and crossings into the given orders.
Divide relabel(const Divide &src, const std::map<std::string, std::string> &region_names,
               const std::vector<std::string> &region_order,
               const std::vector<std::string> &crossing_order) {
    Divide d = src;
    auto name = [&](const std::string &r) { return region_names.at(r); };
    d.regions.clear();
    std::map<std::string, int> sign;
    for (const auto &r : src.regions) sign[name(r.id)] = r.sign;
    for (const auto &r : region_order) d.regions.push_back({r, sign.at(r)});
    for (auto &inc : d.incidence) inc.region = name(inc.region);
    for (auto &[a, b] : d.adjacency) {
        a = name(a);
        b = name(b);
        if (b < a) std::swap(a, b);
    }
    std::sort(d.incidence.begin(), d.incidence.end(), [](const Incidence &a, const Incidence &b) {
        return std::tie(a.region, a.crossing) < std::tie(b.region, b.crossing);
    });
    std::sort(d.adjacency.begin(), d.adjacency.end());
    d.crossings = crossing_order;
    validate(d);
    return d;
}

int chain_index(const std::string &s) { return std::stoi(s.substr(1)); }

} // namespace

StrandData hpq_strands(int p, int q) {
    require(p >= 3 && q >= 3, "h_{p,q} needs p, q >= 3");
    StrandData s;
    s.signs = {{"b", -1}, {"c", -1}, {"d", 1}, {"e", 1}};
    // First parabola visits e, b, d, c; the second visits d, b, e, c. Each
    // chain replaces the segment between b and the next kernel crossing by
    // a run of extra crossings with its own returning strand.
    auto chain = [&](std::vector<std::string> head, std::vector<std::string> tail, int n,
                     char prefix, int first_sign) {
        std::vector<std::vector<std::string>> out;
        if (n == 0) {
            head.insert(head.end(), tail.begin(), tail.end());
            out.push_back(head);
            return out;
        }
        std::vector<std::string> xs;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            const std::string x = std::string(1, prefix) + std::to_string(3 + 2 * i);
            xs.push_back(x);
            s.signs[x] = (i % 2 == 0) ? first_sign : -first_sign;
        }
        std::vector<std::string> back(xs.rbegin(), xs.rend());
        if (n % 2 == 1) {
            head.insert(head.end(), xs.begin(), xs.end());
            back.insert(back.end(), tail.begin(), tail.end());
            out.push_back(head);
            out.push_back(back);
        } else {
            head.insert(head.end(), xs.begin(), xs.end());
            head.insert(head.end(), back.begin(), back.end());
            head.insert(head.end(), tail.begin(), tail.end());
            out.push_back(head);
        }
        return out;
    };
    for (auto &br : chain({"e", "b"}, {"d", "c"}, p - 3, 'p', 1)) s.branches.push_back(br);
    for (auto &br : chain({"d", "b"}, {"e", "c"}, q - 3, 'q', -1)) s.branches.push_back(br);
    return s;
}

Divide hpq_divide(int p, int q) {
    const Divide raw = divide_from_strands(hpq_strands(p, q), {"b", 0, -1});
    std::map<std::string, std::set<std::string>> corners;
    for (const auto &inc : raw.incidence) corners[inc.region].insert(inc.crossing);
    std::map<std::string, std::string> names;
    std::vector<std::string> pm, qm;
    for (const auto &r : raw.regions) {
        const auto &c = corners[r.id];
        std::string name;
        if (c == std::set<std::string>{"b", "c", "d", "e"}) name = "a";
        else if (c.count("b") && c.count("d")) name = "f";
        else if (c.count("b") && c.count("e")) name = "g";
        else {
            int lo = 1 << 30;
            for (const auto &x : c) lo = std::min(lo, chain_index(x));
            name = std::string(1, c.begin()->front()) + std::to_string(lo + 1);
            (name[0] == 'p' ? pm : qm).push_back(name);
        }
        names[r.id] = name;
    }
    auto by_index = [](const std::string &a, const std::string &b) {
        return chain_index(a) < chain_index(b);
    };
    std::sort(pm.begin(), pm.end(), by_index);
    std::sort(qm.begin(), qm.end(), by_index);
    std::vector<std::string> ps, qs;
    for (const auto &x : raw.crossings)
        if (x[0] == 'p') ps.push_back(x);
        else if (x[0] == 'q') qs.push_back(x);
    std::sort(ps.begin(), ps.end(), by_index);
    std::sort(qs.begin(), qs.end(), by_index);

    std::vector<std::string> regions{"a", "f", "g"};
    regions.insert(regions.end(), pm.begin(), pm.end());
    regions.insert(regions.end(), qm.begin(), qm.end());
    std::vector<std::string> crossings = ps;
    crossings.insert(crossings.end(), qs.begin(), qs.end());
    for (const char *k : {"b", "c", "d", "e"}) crossings.push_back(k);
    Divide d = relabel(raw, names, regions, crossings);
    for (const auto &r : d.regions)
        require((r.sign < 0) == (r.id == "a"), "unexpected region colouring in h_{p,q} divide");
    return d;
}

Divide kernel_divide() { return hpq_divide(3, 3); }

StrandData four_lines_strands() {
    StrandData s;
    // Line i meets line j at Xij; visits listed along each line.
    s.branches = {{"X14", "X12", "X13"},
                  {"X23", "X24", "X12"},
                  {"X23", "X34", "X13"},
                  {"X34", "X24", "X14"}};
    s.signs = {{"X12", -1}, {"X13", -1}, {"X14", -1}, {"X23", 1}, {"X24", -1}, {"X34", -1}};
    return s;
}

Divide four_lines_divide() { return divide_from_strands(four_lines_strands(), {"X12", 0, 1}); }

} // namespace milnor
