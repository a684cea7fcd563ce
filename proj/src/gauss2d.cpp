#include "qdmol/gauss2d.hpp"

#include <cassert>
#include <cmath>
#include <cstdint>
#include <map>
#include <tuple>

namespace qdmol {

namespace {
constexpr double pi = 3.14159265358979323846;

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= double(n - k + i) / double(i);
    return r;
}

// merge exp(-a1 (t-c1)^2) * exp(-a2 (t-c2)^2) into exp(-a (t-c)^2) * extra
void merge_axis(double a1, double c1, double a2, double c2, double& a,
                double& c, double& log_extra) {
    a = a1 + a2;
    if (a <= 0.0) {
        c = 0.0;
        log_extra = 0.0;
        return;
    }
    c = (a1 * c1 + a2 * c2) / a;
    log_extra = -(a1 * a2 / a) * (c1 - c2) * (c1 - c2);
}
} // namespace

GaussTerm product(const GaussTerm& f, const GaussTerm& g) {
    GaussTerm r;
    double lx = 0.0, ly = 0.0;
    merge_axis(f.ax, f.cx, g.ax, g.cx, r.ax, r.cx, lx);
    merge_axis(f.ay, f.cy, g.ay, g.cy, r.ay, r.cy, ly);
    r.coef = f.coef * g.coef * std::exp(lx + ly);
    r.px = f.px + g.px;
    r.py = f.py + g.py;
    r.kx = f.kx + g.kx;
    r.ky = f.ky + g.ky;
    return r;
}

GaussSum product(const GaussSum& f, const GaussSum& g) {
    GaussSum r;
    r.reserve(f.size() * g.size());
    for (const auto& a : f)
        for (const auto& b : g) r.push_back(product(a, b));
    return r;
}

GaussSum conjugate(const GaussSum& f) {
    GaussSum r = f;
    for (auto& t : r) {
        t.coef = std::conj(t.coef);
        t.kx = -t.kx;
        t.ky = -t.ky;
    }
    return r;
}

cdouble eval(const GaussTerm& t, double x, double y) {
    const double dx = x - t.cx, dy = y - t.cy;
    double mono = 1.0;
    for (int i = 0; i < t.px; ++i) mono *= x;
    for (int i = 0; i < t.py; ++i) mono *= y;
    const double g = std::exp(-t.ax * dx * dx - t.ay * dy * dy);
    const double ph = t.kx * x + t.ky * y;
    return t.coef * mono * g * cdouble{std::cos(ph), std::sin(ph)};
}

cdouble eval(const GaussSum& f, double x, double y) {
    cdouble s{0.0, 0.0};
    for (const auto& t : f) s += eval(t, x, y);
    return s;
}

cdouble gauss_moment(int j, double a, double k) {
    assert(a > 0.0);
    const cdouble m0 = std::sqrt(pi / a) * std::exp(-k * k / (4.0 * a));
    if (j == 0) return m0;
    cdouble prev = m0;
    cdouble cur = cdouble{0.0, k / (2.0 * a)} * m0;
    for (int n = 1; n < j; ++n) {
        // M_{n+1} = (i k M_n + n M_{n-1}) / (2a)
        cdouble next = (cdouble{0.0, k} * cur + double(n) * prev) / (2.0 * a);
        prev = cur;
        cur = next;
    }
    return cur;
}

cdouble gauss_integral_1d(int p, double a, double c, double k) {
    // substitute t = c + u
    cdouble s{0.0, 0.0};
    for (int m = 0; m <= p; ++m) {
        s += binom(p, m) * std::pow(c, p - m) * gauss_moment(m, a, k);
    }
    const double ph = k * c;
    return s * cdouble{std::cos(ph), std::sin(ph)};
}

cdouble integrate(const GaussTerm& t) {
    return t.coef * gauss_integral_1d(t.px, t.ax, t.cx, t.kx) *
           gauss_integral_1d(t.py, t.ay, t.cy, t.ky);
}

cdouble integrate(const GaussSum& f) {
    cdouble s{0.0, 0.0};
    for (const auto& t : f) s += integrate(t);
    return s;
}

cdouble inner(const GaussSum& f, const GaussSum& g) {
    return integrate(product(conjugate(f), g));
}

GaussSum ddx(const GaussSum& f) {
    GaussSum r;
    r.reserve(3 * f.size());
    for (const auto& t : f) {
        if (t.px > 0) {
            GaussTerm d = t;
            d.coef *= double(t.px);
            d.px -= 1;
            r.push_back(d);
        }
        {
            GaussTerm d = t; // -2 ax (x - cx): x^{p+1} part
            d.coef *= -2.0 * t.ax;
            d.px += 1;
            r.push_back(d);
        }
        {
            GaussTerm d = t; // constant part of -2 ax (x - cx), plus i kx
            d.coef *= cdouble{2.0 * t.ax * t.cx, t.kx};
            r.push_back(d);
        }
    }
    return r;
}

GaussSum ddy(const GaussSum& f) {
    GaussSum r;
    r.reserve(3 * f.size());
    for (const auto& t : f) {
        if (t.py > 0) {
            GaussTerm d = t;
            d.coef *= double(t.py);
            d.py -= 1;
            r.push_back(d);
        }
        {
            GaussTerm d = t;
            d.coef *= -2.0 * t.ay;
            d.py += 1;
            r.push_back(d);
        }
        {
            GaussTerm d = t;
            d.coef *= cdouble{2.0 * t.ay * t.cy, t.ky};
            r.push_back(d);
        }
    }
    return r;
}

GaussSum scaled(const GaussSum& f, cdouble s) {
    GaussSum r = f;
    for (auto& t : r) t.coef *= s;
    return r;
}

GaussSum operator+(const GaussSum& f, const GaussSum& g) {
    GaussSum r = f;
    r.insert(r.end(), g.begin(), g.end());
    return r;
}

GaussSum times_monomial(const GaussSum& f, int dpx, int dpy) {
    GaussSum r = f;
    for (auto& t : r) {
        t.px += dpx;
        t.py += dpy;
    }
    return r;
}

void merge_terms(GaussSum& f, double drop_below) {
    using Key = std::tuple<int, int, std::int64_t, std::int64_t, std::int64_t,
                           std::int64_t, std::int64_t, std::int64_t>;
    auto q = [](double v) { return std::int64_t(std::llround(v * 1e12)); };
    std::map<Key, cdouble> acc;
    std::map<Key, GaussTerm> proto;
    for (const auto& t : f) {
        Key key{t.px, t.py, q(t.ax), q(t.ay), q(t.cx), q(t.cy), q(t.kx), q(t.ky)};
        acc[key] += t.coef;
        proto.emplace(key, t);
    }
    GaussSum out;
    out.reserve(acc.size());
    for (auto& [key, c] : acc) {
        if (std::abs(c) <= drop_below) continue;
        GaussTerm t = proto[key];
        t.coef = c;
        out.push_back(t);
    }
    f = std::move(out);
}

} // namespace qdmol
