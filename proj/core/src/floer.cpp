#include "milnor/floer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <random>
#include <sstream>

namespace milnor {

namespace {

void require(bool ok, const std::string &msg) {
    if (!ok) throw FloerError(msg);
}

template <class T>
T power(T base, int e) {
    T r(1);
    if (e < 0) {
        base = T(1) / base;
        e = -e;
    }
    for (; e > 0; --e) r = r * base;
    return r;
}

GaussianRational gpower(const GaussianRational &base, int e) {
    GaussianRational b = e < 0 ? base.inverse() : base;
    GaussianRational r(1);
    for (int k = e < 0 ? -e : e; k > 0; --k) r = r * b;
    return r;
}

} // namespace

LaurentPoly LaurentPoly::constant(std::int64_t c) { return monomial(c, 0, 0); }

LaurentPoly LaurentPoly::monomial(std::int64_t c, int a, int b) {
    LaurentPoly p;
    p.add_term({a, b}, c);
    return p;
}

void LaurentPoly::add_term(std::pair<int, int> e, std::int64_t c) {
    if (c == 0) return;
    auto &slot = terms_[e];
    slot = checked_add(slot, c);
    if (slot == 0) terms_.erase(e);
}

bool LaurentPoly::is_unit() const {
    return terms_.size() == 1 && (terms_.begin()->second == 1 || terms_.begin()->second == -1);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly &o) const {
    LaurentPoly r = *this;
    for (const auto &[e, c] : o.terms_) r.add_term(e, c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly &o) const {
    LaurentPoly r = *this;
    for (const auto &[e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly &o) const {
    LaurentPoly r;
    for (const auto &[e1, c1] : terms_)
        for (const auto &[e2, c2] : o.terms_)
            r.add_term({e1.first + e2.first, e1.second + e2.second}, checked_mul(c1, c2));
    return r;
}

GaussianRational LaurentPoly::evaluate(const GaussianRational &alpha, const GaussianRational &beta) const {
    GaussianRational s;
    for (const auto &[e, c] : terms_)
        s += GaussianRational(Rational(c)) * gpower(alpha, e.first) * gpower(beta, e.second);
    return s;
}

std::complex<double> LaurentPoly::evaluate(std::complex<double> alpha, std::complex<double> beta) const {
    std::complex<double> s = 0;
    for (const auto &[e, c] : terms_)
        s += static_cast<double>(c) * power(alpha, e.first) * power(beta, e.second);
    return s;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto &[e, c] : terms_) {
        std::string mono;
        if (e.first) mono += "a" + (e.first != 1 ? "^" + std::to_string(e.first) : std::string());
        if (e.second) mono += "b" + (e.second != 1 ? "^" + std::to_string(e.second) : std::string());
        const std::int64_t m = c < 0 ? -c : c;
        const std::string body = mono.empty() ? std::to_string(m) : (m == 1 ? "" : std::to_string(m)) + mono;
        if (out.empty()) out = (c < 0 ? "-" : "") + body;
        else out += (c < 0 ? " - " : " + ") + body;
    }
    return out;
}

void LaurentComplex::validate() const {
    const std::size_t n = generators.size();
    require(diff.size() == n, "differential has the wrong number of rows");
    for (std::size_t r = 0; r < n; ++r) {
        require(diff[r].size() == n, "differential has the wrong number of columns");
        for (std::size_t c = 0; c < n; ++c)
            if (!diff[r][c].is_zero())
                require(generators[r].degree == generators[c].degree + 1,
                        "differential entry from " + generators[c].name + " to " +
                            generators[r].name + " does not raise degree by one");
    }
    require(squares_to_zero(), "differential does not square to zero");
}

bool LaurentComplex::squares_to_zero() const {
    const std::size_t n = generators.size();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            LaurentPoly s;
            for (std::size_t k = 0; k < n; ++k) s = s + diff[r][k] * diff[k][c];
            if (!s.is_zero()) return false;
        }
    return true;
}

std::vector<std::string> tpqr_cycle_labels(int p, int q, int r) {
    require(p >= 3 && q >= 3 && r >= 2, "need p, q >= 3 and r >= 2");
    require(static_cast<long long>(q) * r + static_cast<long long>(p) * r +
                    static_cast<long long>(p) * q <=
                static_cast<long long>(p) * q * r,
            "parameters violate 1/p + 1/q + 1/r <= 1");
    std::vector<std::string> out{"A", "B"};
    for (int i = 1; i < p; ++i) out.push_back("P" + std::to_string(i));
    for (int i = 1; i < q; ++i) out.push_back("Q" + std::to_string(i));
    for (int i = 1; i < r; ++i) out.push_back("R" + std::to_string(i));
    return out;
}

LaurentComplex tpqr_floer_complex(int p, int q, int r, const std::string &cycle) {
    const auto labels = tpqr_cycle_labels(p, q, r);
    require(std::find(labels.begin(), labels.end(), cycle) != labels.end(),
            "unknown vanishing cycle '" + cycle + "'");
    LaurentComplex c;
    auto two_term = [&](const std::string &lo, const std::string &hi, LaurentPoly d) {
        c.generators = {{lo, 0}, {hi, 1}};
        c.diff = {{LaurentPoly{}, LaurentPoly{}}, {std::move(d), LaurentPoly{}}};
    };
    const LaurentPoly one = LaurentPoly::constant(1);
    if (cycle == "R1") {
        // Two discs with boundary differing by the longitude.
        two_term("r_B", "r_A", one - LaurentPoly::monomial(1, 0, 1));
    } else if (cycle == "P1") {
        two_term("p_B", "p_A", one);
    } else if (cycle == "Q1") {
        two_term("q_B", "q_A", one);
    } else if (cycle == "A" || cycle == "B") {
        // Two fibre bigons differing by the meridian.
        const std::string x = cycle == "A" ? "a" : "b";
        two_term(x + "_0", x + "_1", one - LaurentPoly::monomial(1, 1, 0));
    }
    c.validate();
    return c;
}

CohomologyRanks cohomology_at(const LaurentComplex &c, const GaussianRational &alpha,
                              const GaussianRational &beta) {
    require(!alpha.is_zero() && !beta.is_zero(), "holonomies must be nonzero");
    c.validate();
    const std::size_t n = c.generators.size();
    std::map<int, std::size_t> count, rank_out;
    for (const auto &g : c.generators) ++count[g.degree];
    // rank of the differential leaving each degree
    for (const auto &[deg, cnt] : count) {
        std::vector<std::vector<GaussianRational>> m;
        for (std::size_t r = 0; r < n; ++r) {
            if (c.generators[r].degree != deg + 1) continue;
            std::vector<GaussianRational> row;
            for (std::size_t col = 0; col < n; ++col)
                if (c.generators[col].degree == deg) row.push_back(c.diff[r][col].evaluate(alpha, beta));
            m.push_back(std::move(row));
        }
        rank_out[deg] = m.empty() ? 0 : exact_rank(m);
    }
    CohomologyRanks out;
    for (const auto &[deg, cnt] : count) {
        const std::size_t in = rank_out.count(deg - 1) ? rank_out[deg - 1] : 0;
        const std::size_t h = cnt - rank_out[deg] - in;
        if (h) out.by_degree[deg] = h;
        out.total += h;
    }
    return out;
}

CohomologyRanks cohomology_at(const LaurentComplex &c, std::complex<double> alpha,
                              std::complex<double> beta, double rank_tol) {
    require(alpha != 0.0 && beta != 0.0, "holonomies must be nonzero");
    c.validate();
    const std::size_t n = c.generators.size();
    std::map<int, std::size_t> count, rank_out;
    for (const auto &g : c.generators) ++count[g.degree];
    for (const auto &[deg, cnt] : count) {
        std::vector<std::size_t> rows, cols;
        for (std::size_t k = 0; k < n; ++k) {
            if (c.generators[k].degree == deg + 1) rows.push_back(k);
            if (c.generators[k].degree == deg) cols.push_back(k);
        }
        if (rows.empty() || cols.empty()) {
            rank_out[deg] = 0;
            continue;
        }
        Eigen::MatrixXcd m(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = c.diff[rows[i]][cols[j]].evaluate(alpha, beta);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        std::size_t rk = 0;
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > rank_tol) ++rk;
        rank_out[deg] = rk;
    }
    CohomologyRanks out;
    for (const auto &[deg, cnt] : count) {
        const std::size_t in = rank_out.count(deg - 1) ? rank_out[deg - 1] : 0;
        const std::size_t h = cnt - rank_out[deg] - in;
        if (h) out.by_degree[deg] = h;
        out.total += h;
    }
    return out;
}

SurgeryVerdict surgery_predicates(const SurgeryData &s, double area_tol) {
    require(area_tol > 0, "area tolerance must be positive");
    SurgeryVerdict v;
    v.exact = std::abs(s.disc_areas.first - s.disc_areas.second) <= area_tol &&
              s.surgery_params.first == s.surgery_params.second;
    v.maslov_zero = s.index_diff == 0;
    return v;
}

std::pair<GaussianRational, GaussianRational> sample_holonomy(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    auto draw = [&]() {
        while (true) {
            GaussianRational g(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
            if (!g.is_zero() && !(g == GaussianRational(1))) return g;
        }
    };
    GaussianRational a = draw();
    GaussianRational b = draw();
    return {a, b};
}

ObstructionReport generation_obstruction_report(int p, int q, int r, const GaussianRational &alpha,
                                                const GaussianRational &beta) {
    ObstructionReport rep;
    rep.p = p;
    rep.q = q;
    rep.r = r;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.all_vanish = true;
    for (const auto &cycle : tpqr_cycle_labels(p, q, r)) {
        const auto h = cohomology_at(tpqr_floer_complex(p, q, r, cycle), alpha, beta);
        rep.pairings.push_back({cycle, h.total});
        if (h.total != 0) rep.all_vanish = false;
    }
    rep.verdict = rep.all_vanish && rep.self_rank != 0
                      ? "vanishing cycles cannot split-generate"
                      : "no obstruction found at this sample";
    return rep;
}

ObstructionReport generation_obstruction_report(int p, int q, int r, std::uint64_t seed) {
    const auto [a, b] = sample_holonomy(seed);
    auto rep = generation_obstruction_report(p, q, r, a, b);
    rep.seed = seed;
    return rep;
}

} // namespace milnor
