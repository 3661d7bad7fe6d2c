#pragma once

#include <span>

#include "fluxjac/autodiff/dual.hpp"
#include "fluxjac/linalg/dense.hpp"

namespace fluxjac {

// d/du_R of a bivariate scalar flux, via one dual evaluation.  The callable
// must be generic in its scalar type.
template <class F>
double derivative_wrt_right(F&& f, double u_left, double u_right) {
    Dual<1> r = f(Dual<1>(u_left), Dual<1>::seeded(u_right, 0));
    return r.dot[0];
}

template <class F>
double derivative_wrt_left(F&& f, double u_left, double u_right) {
    Dual<1> r = f(Dual<1>::seeded(u_left, 0), Dual<1>(u_right));
    return r.dot[0];
}

// Invoke fn with std::integral_constant<int, n> for runtime n in 1..5, the
// largest system carried by any implemented conservation law.
template <class Fn>
decltype(auto) with_tangent_width(int n, Fn&& fn) {
    switch (n) {
        case 1: return fn(std::integral_constant<int, 1>{});
        case 2: return fn(std::integral_constant<int, 2>{});
        case 3: return fn(std::integral_constant<int, 3>{});
        case 4: return fn(std::integral_constant<int, 4>{});
        case 5: return fn(std::integral_constant<int, 5>{});
        default: throw DimensionError("tangent width outside 1..5");
    }
}

// Jacobian of a bivariate vector flux with respect to the right state,
// computed in a single evaluation with n tangent seeds.  The callable has
// signature flux(span<const T> uL, span<const T> uR, span<T> out).
// out(i, j) = d(flux_i)/d(uR_j).
template <class F>
DenseMatrix flux_jacobian_right(F&& flux, std::span<const double> u_left,
                                std::span<const double> u_right) {
    const int n = static_cast<int>(u_left.size());
    DenseMatrix jac(n, n);
    with_tangent_width(n, [&](auto width) {
        constexpr int W = decltype(width)::value;
        std::array<Dual<W>, W> ul, ur, out;
        for (int i = 0; i < n; ++i) {
            ul[i] = Dual<W>(u_left[i]);
            ur[i] = Dual<W>::seeded(u_right[i], i);
        }
        flux(std::span<const Dual<W>>(ul.data(), n), std::span<const Dual<W>>(ur.data(), n),
             std::span<Dual<W>>(out.data(), n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) jac(i, j) = out[i].dot[j];
    });
    return jac;
}

template <class F>
DenseMatrix flux_jacobian_left(F&& flux, std::span<const double> u_left,
                               std::span<const double> u_right) {
    const int n = static_cast<int>(u_left.size());
    DenseMatrix jac(n, n);
    with_tangent_width(n, [&](auto width) {
        constexpr int W = decltype(width)::value;
        std::array<Dual<W>, W> ul, ur, out;
        for (int i = 0; i < n; ++i) {
            ul[i] = Dual<W>::seeded(u_left[i], i);
            ur[i] = Dual<W>(u_right[i]);
        }
        flux(std::span<const Dual<W>>(ul.data(), n), std::span<const Dual<W>>(ur.data(), n),
             std::span<Dual<W>>(out.data(), n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) jac(i, j) = out[i].dot[j];
    });
    return jac;
}

}  // namespace fluxjac
