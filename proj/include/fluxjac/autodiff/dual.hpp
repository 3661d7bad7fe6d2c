#pragma once

#include <array>
#include <cmath>

#include "fluxjac/error.hpp"

namespace fluxjac {

// When enabled, log/sqrt/division domain violations inside dual arithmetic
// throw DomainError instead of propagating NaN.
void set_ad_trap_domain_errors(bool on);
bool ad_trap_domain_errors();

// Forward-mode dual number carrying N tangents alongside the value.
// Comparisons act on the value channel, so branch selection (max, the
// logarithmic-mean series switch) follows the primal evaluation.
template <int N>
struct Dual {
    double val = 0.0;
    std::array<double, N> dot{};

    Dual() = default;
    Dual(double v) : val(v) {}  // NOLINT: constants promote implicitly

    static Dual seeded(double v, int k) {
        Dual d(v);
        d.dot[static_cast<std::size_t>(k)] = 1.0;
        return d;
    }
};

template <int N>
inline Dual<N> operator+(const Dual<N>& a, const Dual<N>& b) {
    Dual<N> r(a.val + b.val);
    for (int i = 0; i < N; ++i) r.dot[i] = a.dot[i] + b.dot[i];
    return r;
}
template <int N>
inline Dual<N> operator+(const Dual<N>& a, double b) {
    Dual<N> r = a;
    r.val += b;
    return r;
}
template <int N>
inline Dual<N> operator+(double a, const Dual<N>& b) {
    return b + a;
}

template <int N>
inline Dual<N> operator-(const Dual<N>& a) {
    Dual<N> r(-a.val);
    for (int i = 0; i < N; ++i) r.dot[i] = -a.dot[i];
    return r;
}
template <int N>
inline Dual<N> operator-(const Dual<N>& a, const Dual<N>& b) {
    Dual<N> r(a.val - b.val);
    for (int i = 0; i < N; ++i) r.dot[i] = a.dot[i] - b.dot[i];
    return r;
}
template <int N>
inline Dual<N> operator-(const Dual<N>& a, double b) {
    Dual<N> r = a;
    r.val -= b;
    return r;
}
template <int N>
inline Dual<N> operator-(double a, const Dual<N>& b) {
    Dual<N> r(a - b.val);
    for (int i = 0; i < N; ++i) r.dot[i] = -b.dot[i];
    return r;
}

template <int N>
inline Dual<N> operator*(const Dual<N>& a, const Dual<N>& b) {
    Dual<N> r(a.val * b.val);
    for (int i = 0; i < N; ++i) r.dot[i] = a.val * b.dot[i] + b.val * a.dot[i];
    return r;
}
template <int N>
inline Dual<N> operator*(const Dual<N>& a, double b) {
    Dual<N> r(a.val * b);
    for (int i = 0; i < N; ++i) r.dot[i] = a.dot[i] * b;
    return r;
}
template <int N>
inline Dual<N> operator*(double a, const Dual<N>& b) {
    return b * a;
}

template <int N>
inline Dual<N> operator/(const Dual<N>& a, const Dual<N>& b) {
    const double inv = 1.0 / b.val;
    Dual<N> r(a.val * inv);
    for (int i = 0; i < N; ++i) r.dot[i] = (a.dot[i] - r.val * b.dot[i]) * inv;
    return r;
}
template <int N>
inline Dual<N> operator/(const Dual<N>& a, double b) {
    const double inv = 1.0 / b;
    Dual<N> r(a.val * inv);
    for (int i = 0; i < N; ++i) r.dot[i] = a.dot[i] * inv;
    return r;
}
template <int N>
inline Dual<N> operator/(double a, const Dual<N>& b) {
    const double inv = 1.0 / b.val;
    Dual<N> r(a * inv);
    for (int i = 0; i < N; ++i) r.dot[i] = -r.val * inv * b.dot[i];
    return r;
}

template <int N>
inline Dual<N>& operator+=(Dual<N>& a, const Dual<N>& b) { return a = a + b; }
template <int N>
inline Dual<N>& operator-=(Dual<N>& a, const Dual<N>& b) { return a = a - b; }
template <int N>
inline Dual<N>& operator+=(Dual<N>& a, double b) { a.val += b; return a; }
template <int N>
inline Dual<N>& operator-=(Dual<N>& a, double b) { a.val -= b; return a; }
template <int N>
inline Dual<N>& operator*=(Dual<N>& a, const Dual<N>& b) { return a = a * b; }
template <int N>
inline Dual<N>& operator/=(Dual<N>& a, const Dual<N>& b) { return a = a / b; }

template <int N> inline bool operator<(const Dual<N>& a, const Dual<N>& b) { return a.val < b.val; }
template <int N> inline bool operator>(const Dual<N>& a, const Dual<N>& b) { return a.val > b.val; }
template <int N> inline bool operator<=(const Dual<N>& a, const Dual<N>& b) { return a.val <= b.val; }
template <int N> inline bool operator>=(const Dual<N>& a, const Dual<N>& b) { return a.val >= b.val; }
template <int N> inline bool operator<(const Dual<N>& a, double b) { return a.val < b; }
template <int N> inline bool operator>(const Dual<N>& a, double b) { return a.val > b; }
template <int N> inline bool operator<(double a, const Dual<N>& b) { return a < b.val; }
template <int N> inline bool operator>(double a, const Dual<N>& b) { return a > b.val; }

template <int N>
inline Dual<N> log(const Dual<N>& a) {
    if (a.val <= 0.0 && ad_trap_domain_errors())
        throw DomainError("log of non-positive dual value");
    Dual<N> r(std::log(a.val));
    const double inv = 1.0 / a.val;
    for (int i = 0; i < N; ++i) r.dot[i] = a.dot[i] * inv;
    return r;
}

template <int N>
inline Dual<N> sqrt(const Dual<N>& a) {
    if (a.val < 0.0 && ad_trap_domain_errors())
        throw DomainError("sqrt of negative dual value");
    const double s = std::sqrt(a.val);
    Dual<N> r(s);
    const double inv = 0.5 / s;
    for (int i = 0; i < N; ++i) r.dot[i] = a.dot[i] * inv;
    return r;
}

template <int N>
inline Dual<N> exp(const Dual<N>& a) {
    const double e = std::exp(a.val);
    Dual<N> r(e);
    for (int i = 0; i < N; ++i) r.dot[i] = a.dot[i] * e;
    return r;
}

template <int N>
inline Dual<N> pow(const Dual<N>& a, double e) {
    if (a.val <= 0.0 && ad_trap_domain_errors())
        throw DomainError("pow of non-positive dual base");
    const double p = std::pow(a.val, e);
    Dual<N> r(p);
    const double d = e * std::pow(a.val, e - 1.0);
    for (int i = 0; i < N; ++i) r.dot[i] = a.dot[i] * d;
    return r;
}

template <int N>
inline Dual<N> abs(const Dual<N>& a) {
    return a.val < 0.0 ? -a : a;
}

template <int N>
inline Dual<N> max(const Dual<N>& a, const Dual<N>& b) {
    return a.val >= b.val ? a : b;
}

// Scalar-generic accessors so flux code can be written once for double and
// Dual arguments.
inline double value(double x) { return x; }
template <int N>
inline double value(const Dual<N>& x) { return x.val; }

}  // namespace fluxjac
