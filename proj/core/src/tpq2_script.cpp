#include "milnor/divide.hpp"
#include "milnor/stabilize.hpp"

#include <algorithm>

namespace milnor {

namespace {

struct ScriptBuilder {
    DistinguishedBasis basis;
    MutationScript script;

    void apply(const Step &s) {
        basis = run_script(basis, MutationScript{{s}}).result;
        script.steps.push_back(s);
    }
    // Right twist of target by tool. When the target heads the list and the
    // tool closes it, the last cycle is first rotated to the front.
    void twist(const std::string &target, const std::string &tool) {
        const auto &lat = basis.lattice;
        if (lat.index_of(target) == 0 && lat.index_of(tool) + 1 == lat.rank())
            apply(Step::rotate(lat.rank()));
        apply(Step::twist(target, tool));
    }
};

std::vector<std::string> chain_names(const Divide &d, char prefix, bool crossings) {
    std::vector<std::string> out;
    if (crossings) {
        for (const auto &x : d.crossings)
            if (x[0] == prefix) out.push_back(x);
    } else {
        for (const auto &r : d.regions)
            if (r.id[0] == prefix) out.push_back(r.id);
    }
    return out;
}

} // namespace

MutationScript tpq2_script(int p, int q, const std::string &suffix) {
    const Divide div = hpq_divide(p, q);
    ScriptBuilder b;
    DistinguishedBasis start = acampo_form(div);
    if (suffix.empty()) {
        b.basis = start;
    } else {
        b.basis = gabrielov_stabilize(start, 1);
        if (suffix != ":1")
            for (const auto &l : start.labels()) b.basis = mutate(b.basis, Step::rename(l + ":1", l + suffix));
    }
    auto n = [&](const std::string &s) { return s + suffix; };

    const auto ps = chain_names(div, 'p', true), qs = chain_names(div, 'q', true);
    const auto pm = chain_names(div, 'p', false), qm = chain_names(div, 'q', false);

    b.twist(n("f"), n("e"));
    b.twist(n("f"), n("d"));
    b.twist(n("g"), n("e"));
    std::vector<std::string> saddles = ps;
    saddles.insert(saddles.end(), qs.begin(), qs.end());
    for (auto it = saddles.rbegin(); it != saddles.rend(); ++it) b.twist(n("b"), n(*it));
    b.twist(n("b"), n("a"));
    std::vector<std::string> maxima = pm;
    maxima.insert(maxima.end(), qm.begin(), qm.end());
    for (auto it = maxima.rbegin(); it != maxima.rend(); ++it) b.twist(n("b"), n(*it));
    for (const char *t : {"e", "g", "d", "f", "c"}) b.twist(n("b"), n(t));

    const std::pair<const char *, const char *> kernel[] = {
        {"a", "A"}, {"b", "B"}, {"c", "R1"}, {"d", "P1"}, {"f", "P2"}, {"e", "Q1"}, {"g", "Q2"}};
    for (auto [from, to] : kernel) b.apply(Step::rename(n(from), to));
    for (const auto *group : {&ps, &pm, &qs, &qm})
        for (const auto &x : *group) {
            std::string up = x;
            up[0] = static_cast<char>(up[0] == 'p' ? 'P' : 'Q');
            b.apply(Step::rename(n(x), up));
        }

    std::vector<std::string> target{"A", "B"};
    for (int i = 2; i < p; ++i) target.push_back("P" + std::to_string(i));
    for (int i = 2; i < q; ++i) target.push_back("Q" + std::to_string(i));
    for (const char *t : {"P1", "Q1", "R1"}) target.push_back(t);
    for (const auto &s : reorder_by_trivial_mutations(b.basis.lattice, target)) b.apply(s);
    return b.script;
}

} // namespace milnor
