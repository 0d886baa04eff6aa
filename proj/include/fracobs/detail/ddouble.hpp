#pragma once

// Double-double (~31 significant digits) arithmetic for the series kernels.
// Only what the special-function evaluators need: +,-,*,/, exp, log, pow,
// sin/cos, and lgamma via a Stirling series with argument lifting.

#include <cmath>
#include <cstdint>
#include <limits>

namespace fracobs::detail {

struct dd {
    double hi = 0.0;
    double lo = 0.0;
    dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}
    double to_double() const { return hi + lo; }
};

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

// std::fma gives the exact product error regardless of -ffp-contract.
inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return quick_two_sum(s.hi, lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, lo);
}

inline dd operator*(dd a, double b) {
    dd p = two_prod(a.hi, b);
    double lo = p.lo + a.lo * b;
    return quick_two_sum(p.hi, lo);
}

inline dd operator/(dd a, dd b) {
    double q0 = a.hi / b.hi;
    dd r = a - b * q0;
    double q1 = r.hi / b.hi;
    r = r - b * q1;
    double q2 = r.hi / b.hi;
    dd s = quick_two_sum(q0, q1);
    return s + dd(q2);
}

inline dd operator/(dd a, double b) { return a / dd(b); }
inline bool dd_abs_less(dd a, dd b) { return std::fabs(a.hi) < std::fabs(b.hi); }
inline dd dd_abs(dd a) { return a.hi < 0.0 ? -a : a; }

inline constexpr dd DD_PI{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr dd DD_2PI{6.283185307179586232e+00, 2.449293598294706414e-16};
inline constexpr dd DD_PI_2{1.570796326794896558e+00, 6.123233995736766036e-17};
inline constexpr dd DD_LN2{6.931471805599452862e-01, 2.319046813846299558e-17};

inline dd dd_exp(dd x) {
    if (x.hi > 709.0) return {std::numeric_limits<double>::infinity(), 0.0};
    if (x.hi < -709.0) return {0.0, 0.0};
    double m = std::floor(x.hi / DD_LN2.hi + 0.5);
    dd r = x - DD_LN2 * m;
    // scale into [-ln2/1024, ln2/1024], Taylor, then 9 squarings
    r.hi = std::ldexp(r.hi, -9);
    r.lo = std::ldexp(r.lo, -9);
    dd sum = dd(1.0) + r;
    dd term = r;
    for (int k = 2; k <= 14; ++k) {
        term = term * r / static_cast<double>(k);
        sum = sum + term;
        if (std::fabs(term.hi) < 1e-35 * std::fabs(sum.hi)) break;
    }
    for (int i = 0; i < 9; ++i) sum = sum * sum;
    sum.hi = std::ldexp(sum.hi, static_cast<int>(m));
    sum.lo = std::ldexp(sum.lo, static_cast<int>(m));
    return sum;
}

inline dd dd_log(dd x) {
    dd y(std::log(x.hi));
    for (int i = 0; i < 2; ++i) {
        y = y + x * dd_exp(-y) - dd(1.0);
    }
    return y;
}

inline dd dd_pow(dd a, dd b) { return dd_exp(dd_log(a) * b); }
inline dd dd_pow(dd a, double b) { return dd_exp(dd_log(a) * b); }

// sin/cos by Taylor on [-pi/4, pi/4] after quadrant reduction
inline void dd_sincos_reduced(dd r, dd& s, dd& c) {
    dd r2 = r * r;
    dd term = r;
    s = r;
    for (int k = 1; k <= 15; ++k) {
        term = term * r2 / static_cast<double>((2 * k) * (2 * k + 1));
        s = (k % 2 == 0) ? s + term : s - term;
        if (std::fabs(term.hi) < 1e-36) break;
    }
    term = dd(1.0);
    c = dd(1.0);
    for (int k = 1; k <= 15; ++k) {
        term = term * r2 / static_cast<double>((2 * k - 1) * (2 * k));
        c = (k % 2 == 0) ? c + term : c - term;
        if (std::fabs(term.hi) < 1e-36) break;
    }
}

inline void dd_sincos(dd x, dd& s, dd& c) {
    double k = std::floor(x.hi / DD_PI_2.hi + 0.5);
    dd r = x - DD_PI_2 * k;
    dd sr, cr;
    dd_sincos_reduced(r, sr, cr);
    long quad = static_cast<long>(k) & 3;
    if (quad < 0) quad += 4;
    switch (quad) {
        case 0: s = sr; c = cr; break;
        case 1: s = cr; c = -sr; break;
        case 2: s = -sr; c = -cr; break;
        default: s = -cr; c = sr; break;
    }
}

// Stirling series for log Gamma, argument lifted to z >= 24.
inline dd dd_lgamma(dd z) {
    static const double bnum[16] = {1, -1, 1, -1, 5, -691, 7, -3617, 43867,
                                    -174611, 854513, -236364091, 8553103,
                                    -23749461029.0, 8615841276005.0, -7709321041217.0};
    static const double bden[16] = {6, 30, 42, 30, 66, 2730, 6, 510, 798,
                                    330, 138, 2730, 6, 870, 14322, 510};
    dd shift(0.0);
    bool has_shift = false;
    while (z.hi < 24.0) {
        dd lg = dd_log(z);
        shift = has_shift ? shift + lg : lg;
        has_shift = true;
        z = z + dd(1.0);
    }
    // (z-1/2) log z - z + log(2 pi)/2 + sum B_{2k} / (2k(2k-1) z^{2k-1})
    static const dd half_ln_2pi = dd_log(DD_2PI) * 0.5;
    dd lz = dd_log(z);
    dd out = (z - dd(0.5)) * lz - z + half_ln_2pi;
    dd z2 = z * z;
    dd zp = z;
    for (int k = 0; k < 16; ++k) {
        double c2k = (2.0 * (k + 1)) * (2.0 * (k + 1) - 1.0);
        dd term = (dd(bnum[k]) / dd(bden[k] * c2k)) / zp;
        out = out + term;
        if (std::fabs(term.hi) < 1e-36 * std::fabs(out.hi)) break;
        zp = zp * z2;
    }
    if (has_shift) out = out - shift;
    return out;
}

}  // namespace fracobs::detail
