#include "milnor/poly.hpp"

#include <algorithm>
#include <sstream>

namespace milnor {

namespace {

void require(bool ok, const std::string &msg) {
    if (!ok) throw PolyError(msg);
}

std::complex<double> to_complex(const GaussianRational &g) {
    return {static_cast<double>(g.re), static_cast<double>(g.im)};
}

std::complex<double> ipow(std::complex<double> b, int e) {
    std::complex<double> r = 1;
    for (; e > 0; --e) r *= b;
    return r;
}

} // namespace

MultiPoly MultiPoly::constant(const GaussianRational &c) { return monomial(c, {0, 0, 0, 0}); }
MultiPoly MultiPoly::x() { return monomial(1, {1, 0, 0, 0}); }
MultiPoly MultiPoly::y() { return monomial(1, {0, 1, 0, 0}); }
MultiPoly MultiPoly::z() { return monomial(1, {0, 0, 1, 0}); }
MultiPoly MultiPoly::t() { return monomial(1, {0, 0, 0, 1}); }

MultiPoly MultiPoly::monomial(const GaussianRational &c, const Exponents &e) {
    for (int k : e) require(k >= 0, "negative exponent");
    MultiPoly p;
    p.add_term(e, c);
    return p;
}

void MultiPoly::add_term(const Exponents &e, const GaussianRational &c) {
    if (c.is_zero()) return;
    auto &slot = terms_[e];
    slot += c;
    if (slot.is_zero()) terms_.erase(e);
}

int MultiPoly::degree() const {
    int d = 0;
    for (const auto &[e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
    return d;
}

int MultiPoly::degree_in(int var) const {
    int d = 0;
    for (const auto &[e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(var)]);
    return d;
}

std::array<bool, 4> MultiPoly::uses() const {
    std::array<bool, 4> u{false, false, false, false};
    for (const auto &[e, c] : terms_)
        for (std::size_t k = 0; k < 4; ++k) u[k] = u[k] || e[k] > 0;
    return u;
}

MultiPoly MultiPoly::operator+(const MultiPoly &o) const {
    MultiPoly r = *this;
    for (const auto &[e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r;
    for (const auto &[e, c] : terms_) r.add_term(e, -c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly &o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly &o) const {
    MultiPoly r;
    for (const auto &[e1, c1] : terms_)
        for (const auto &[e2, c2] : o.terms_)
            r.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]}, c1 * c2);
    return r;
}

MultiPoly operator*(const GaussianRational &c, const MultiPoly &p) { return MultiPoly::constant(c) * p; }

MultiPoly MultiPoly::pow(int n) const {
    require(n >= 0, "negative power");
    MultiPoly r = constant(1);
    for (int k = 0; k < n; ++k) r = r * *this;
    return r;
}

MultiPoly MultiPoly::at_t(const Rational &value) const {
    MultiPoly r;
    for (const auto &[e, c] : terms_) {
        Rational f = 1;
        for (int k = 0; k < e[3]; ++k) f *= value;
        r.add_term({e[0], e[1], e[2], 0}, c * GaussianRational(f));
    }
    return r;
}

MultiPoly MultiPoly::diff(int var) const {
    require(var >= 0 && var < 4, "variable index out of range");
    MultiPoly r;
    const auto v = static_cast<std::size_t>(var);
    for (const auto &[e, c] : terms_) {
        if (e[v] == 0) continue;
        Exponents d = e;
        --d[v];
        r.add_term(d, c * GaussianRational(Rational(e[v])));
    }
    return r;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    static const char *names[] = {"x", "y", "z", "t"};
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto &[e, c] = *it;
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        for (std::size_t k = 0; k < 4; ++k)
            if (e[k]) os << "*" << names[k] << (e[k] > 1 ? "^" + std::to_string(e[k]) : "");
    }
    return os.str();
}

CompiledPoly::CompiledPoly(const MultiPoly &p, double t) {
    std::map<std::array<int, 3>, Term> acc;
    for (const auto &[e, c] : p.terms()) {
        const std::array<int, 3> k{e[0], e[1], e[2]};
        auto &term = acc[k];
        term.e = k;
        const std::complex<double> cc = to_complex(c);
        term.c += cc * std::pow(t, e[3]);
        if (e[3] > 0) term.ct += cc * static_cast<double>(e[3]) * std::pow(t, e[3] - 1);
    }
    for (auto &[k, term] : acc) terms_.push_back(term);
}

std::complex<double> CompiledPoly::value(const std::array<std::complex<double>, 3> &v) const {
    std::complex<double> s = 0;
    for (const auto &t : terms_) s += t.c * ipow(v[0], t.e[0]) * ipow(v[1], t.e[1]) * ipow(v[2], t.e[2]);
    return s;
}

std::array<std::complex<double>, 3>
CompiledPoly::gradient(const std::array<std::complex<double>, 3> &v) const {
    std::array<std::complex<double>, 3> g{};
    for (const auto &t : terms_)
        for (int k = 0; k < 3; ++k) {
            if (t.e[k] == 0) continue;
            std::complex<double> m = t.c * static_cast<double>(t.e[k]);
            for (int j = 0; j < 3; ++j) m *= ipow(v[j], t.e[j] - (j == k ? 1 : 0));
            g[k] += m;
        }
    return g;
}

std::array<std::complex<double>, 3>
CompiledPoly::gradient_t(const std::array<std::complex<double>, 3> &v) const {
    std::array<std::complex<double>, 3> g{};
    for (const auto &t : terms_)
        for (int k = 0; k < 3; ++k) {
            if (t.e[k] == 0 || t.ct == 0.0) continue;
            std::complex<double> m = t.ct * static_cast<double>(t.e[k]);
            for (int j = 0; j < 3; ++j) m *= ipow(v[j], t.e[j] - (j == k ? 1 : 0));
            g[k] += m;
        }
    return g;
}

std::array<std::array<std::complex<double>, 3>, 3>
CompiledPoly::hessian(const std::array<std::complex<double>, 3> &v) const {
    std::array<std::array<std::complex<double>, 3>, 3> h{};
    for (const auto &t : terms_)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                std::array<int, 3> e = t.e;
                double f = e[a];
                if (e[a] == 0) continue;
                --e[a];
                f *= e[b];
                if (e[b] == 0) continue;
                --e[b];
                h[a][b] += t.c * f * ipow(v[0], e[0]) * ipow(v[1], e[1]) * ipow(v[2], e[2]);
            }
    return h;
}

namespace {

GaussianRational q(long long n, long long d = 1) { return GaussianRational(Rational(n, d)); }
GaussianRational qi(long long n, long long d = 1) { return GaussianRational(Rational(0), Rational(n, d)); }

MultiPoly tilde_m() {
    const MultiPoly X = MultiPoly::x() + MultiPoly::constant(q(1, 4));
    const MultiPoly Y = MultiPoly::y() + MultiPoly::constant(q(1, 4));
    const MultiPoly first = X.pow(2) - q(1, 2) * Y - MultiPoly::constant(2);
    const MultiPoly second = q(1, 2) * X + MultiPoly::constant(2) - Y.pow(2);
    return q(2) * first * second;
}

MultiPoly check_m() { return tilde_m() - q(2) * MultiPoly::x() * MultiPoly::y(); }

// 2 h(z) with h(z) = 8i (z^3/3 + z^2/2).
MultiPoly two_h() {
    const MultiPoly z = MultiPoly::z();
    return qi(16, 3) * z.pow(3) + qi(8) * z.pow(2);
}

MultiPoly shear() { return q(3) * MultiPoly::z() + MultiPoly::t() * MultiPoly::x() * MultiPoly::y(); }

MultiPoly family_M() { return check_m() + q(2) * shear().pow(2) + two_h(); }

MultiPoly family_N() {
    const MultiPoly x = MultiPoly::x(), y = MultiPoly::y(), z = MultiPoly::z();
    return x.pow(3) + y.pow(3) + q(12) * x * y * z + two_h();
}

MultiPoly family_L() {
    const MultiPoly N = family_N();
    const MultiPoly delta = family_M().at_t(1) - N;
    return N + (MultiPoly::constant(1) - MultiPoly::t()) * delta;
}

// 4i z^2 + 8i/3 z^3
MultiPoly q3_tilde() {
    const MultiPoly z = MultiPoly::z();
    return qi(4) * z.pow(2) + qi(8, 3) * z.pow(3);
}

void require_only(const MultiPoly &p, std::array<bool, 4> allowed, const std::string &what) {
    const auto u = p.uses();
    for (std::size_t k = 0; k < 4; ++k) require(allowed[k] || !u[k], what + " uses a variable it should not");
}

MultiPoly tpqr_germ(const FamilyParams &f) {
    require(f.p >= 2 && f.q >= 2 && f.r >= 2, "germ exponents must be at least 2");
    const MultiPoly x = MultiPoly::x(), y = MultiPoly::y(), z = MultiPoly::z();
    if (f.lambda) {
        require(f.r == 2 && f.p >= 3 && f.q >= 3, "the lambda form needs r = 2 and p, q >= 3");
        const GaussianRational lam(*f.lambda);
        return (x.pow(f.p - 2) - y.pow(2)) * (x.pow(2) - lam * y.pow(f.q - 2)) + z.pow(2);
    }
    std::array<int, 3> s{f.p, f.q, f.r};
    std::sort(s.begin(), s.end());
    const long long pq = static_cast<long long>(f.p) * f.q, pr = static_cast<long long>(f.p) * f.r,
                    qr = static_cast<long long>(f.q) * f.r;
    require(pq + pr + qr <= pq * f.r, "parameters violate 1/p + 1/q + 1/r <= 1");
    const GaussianRational &a = f.a;
    auto pw = [](const GaussianRational &g, int n) {
        GaussianRational r(1);
        for (int k = 0; k < n; ++k) r = r * g;
        return r;
    };
    if (s == std::array<int, 3>{3, 3, 3})
        require(!(pw(a, 3) + q(27)).is_zero(), "T_{3,3,3} germ needs a^3 + 27 != 0");
    else if (s == std::array<int, 3>{2, 4, 4})
        require(!(pw(a, 2) - q(9)).is_zero(), "T_{4,4,2} germ needs a^2 - 9 != 0");
    else if (s == std::array<int, 3>{2, 3, 6})
        require(!(pw(a, 6) - q(432)).is_zero(), "T_{6,3,2} germ needs a^6 - 432 != 0");
    else
        require(!a.is_zero(), "hyperbolic T_{p,q,r} germ needs a != 0");
    return x.pow(f.p) + y.pow(f.q) + z.pow(f.r) + a * x * y * z;
}

} // namespace

std::vector<std::string> builtin_family_names() {
    return {"tilde_m", "check_m", "M", "L", "M_r", "N_pqr", "tpqr_germ"};
}

MultiPoly builtin_family(const std::string &name, const FamilyParams &f) {
    if (name == "tilde_m") return tilde_m();
    if (name == "check_m") return check_m();
    if (name == "M") return family_M();
    if (name == "L") return family_L();
    if (name == "M_r" || name == "N_pqr") {
        require(f.qr.has_value(), name + " needs a user-supplied Q_r(z)");
        require_only(*f.qr, {false, false, true, false}, "Q_r");
        require(f.qr->terms().count({0, 0, 0, 0}) == 0, "Q_r must have no constant term");
        const MultiPoly h33 = q(1, 2) * check_m();
        const MultiPoly tail = shear().pow(2) + (MultiPoly::constant(1) - MultiPoly::constant(f.l)) * *f.qr;
        if (name == "M_r") return h33 + tail + q3_tilde();
        require(f.hpq.has_value(), "N_pqr needs a user-supplied h_{p,q}(x, y)");
        require_only(*f.hpq, {true, true, false, false}, "h_{p,q}");
        return (MultiPoly::constant(1) - MultiPoly::constant(f.mu)) * *f.hpq +
               MultiPoly::constant(f.mu) * h33 + tail;
    }
    if (name == "tpqr_germ") return tpqr_germ(f);
    throw PolyError("unknown family '" + name + "'");
}

} // namespace milnor
