#include "milnor/stabilize.hpp"

#include <utility>

namespace milnor {

DistinguishedBasis gabrielov_stabilize(const DistinguishedBasis &basis, int d,
                                       const StabilizeOptions &opts) {
    if (d < 1) throw LatticeError("stabilisation degree must be at least 1");
    if (opts.chain_sign != 1 && opts.chain_sign != -1)
        throw LatticeError("chain sign must be +1 or -1");
    const auto &v = basis.lattice;
    v.validate();
    const std::size_t mu = v.rank();
    const std::size_t sd = static_cast<std::size_t>(d);
    const std::size_t n = mu * sd;
    auto at = [&](std::size_t i, std::size_t j) { return i * sd + j; };
    std::vector<std::string> labels(n);
    IntMatrix g(n, IntVector(n, 0));
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < sd; ++j) labels[at(i, j)] = v.labels[i] + ":" + std::to_string(j + 1);
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < sd; ++j) {
            for (std::size_t i2 = 0; i2 < mu; ++i2) g[at(i, j)][at(i2, j)] = v.gram[i][i2];
            if (j + 1 < sd) g[at(i, j)][at(i, j + 1)] = g[at(i, j + 1)][at(i, j)] = opts.chain_sign;
            for (std::size_t i2 = i + 1; i2 < mu; ++i2) {
                const std::int64_t val = -v.gram[i][i2];
                if (opts.negated == NegatedSide::ascending && j + 1 < sd)
                    g[at(i, j)][at(i2, j + 1)] = g[at(i2, j + 1)][at(i, j)] = val;
                if (opts.negated == NegatedSide::descending && j >= 1)
                    g[at(i, j)][at(i2, j - 1)] = g[at(i2, j - 1)][at(i, j)] = val;
            }
        }
    return DistinguishedBasis::from_lattice(make_lattice(std::move(labels), std::move(g)));
}

std::vector<Step> sheet_major_steps(std::size_t mu, int d) {
    const std::size_t sd = static_cast<std::size_t>(d);
    // key of cycle-major index in sheet-major order
    std::vector<std::size_t> key(mu * sd);
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < sd; ++j) key[i * sd + j] = j * mu + i;
    std::vector<Step> steps;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t k = 0; k + 1 < key.size(); ++k)
            if (key[k] > key[k + 1]) {
                std::swap(key[k], key[k + 1]);
                steps.push_back(Step::swap(k + 1));
                changed = true;
            }
    }
    return steps;
}

} // namespace milnor
