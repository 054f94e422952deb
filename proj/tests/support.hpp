// Shared helpers for the unit tests.
#pragma once

#include "milnor/lattice.hpp"

#include <Eigen/Dense>

#include <random>

namespace testing_support {

using namespace milnor;

// Random symmetric form with -2 on the diagonal and off-diagonal entries in
// [-bound, bound].
inline IntersectionLattice random_lattice(std::mt19937_64 &rng, std::size_t mu, int bound = 1) {
    std::uniform_int_distribution<int> e(-bound, bound);
    IntMatrix g(mu, IntVector(mu, 0));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < mu; ++i) {
        labels.push_back("v" + std::to_string(i));
        g[i][i] = -2;
        for (std::size_t j = i + 1; j < mu; ++j) g[i][j] = g[j][i] = e(rng);
    }
    return make_lattice(labels, g);
}

// Signature from floating-point eigenvalues; independent of the exact
// congruence diagonalisation.
inline std::pair<std::size_t, std::size_t> eigen_signature(const IntMatrix &g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = static_cast<double>(g[i][j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    std::size_t pos = 0, neg = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (es.eigenvalues()(i) > 1e-8) ++pos;
        if (es.eigenvalues()(i) < -1e-8) ++neg;
    }
    return {pos, neg};
}

// Exhaustive search over all diagonal sign matrices.
inline bool brute_force_sign_equal(const IntMatrix &a, const IntMatrix &b) {
    const std::size_t n = a.size();
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) {
                const int si = (mask >> i) & 1 ? -1 : 1;
                const int sj = (mask >> j) & 1 ? -1 : 1;
                ok = si * sj * a[i][j] == b[i][j];
            }
        if (ok) return true;
    }
    return false;
}

inline std::size_t count_entries(const IntMatrix &g, std::int64_t value) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) c += g[i][j] == value;
    return c;
}

} // namespace testing_support
