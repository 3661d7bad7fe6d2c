#include "fluxjac/operators/quadrature.hpp"

#include <cmath>

#include "fluxjac/error.hpp"

namespace fluxjac {

namespace {

// Legendre P_0..P_n and derivatives at one point, by the three-term
// recurrence.
void legendre_all(double x, int n, std::vector<double>& p, std::vector<double>& dp) {
    p.assign(n + 1, 0.0);
    dp.assign(n + 1, 0.0);
    p[0] = 1.0;
    if (n >= 1) {
        p[1] = x;
        dp[1] = 1.0;
    }
    for (int k = 1; k < n; ++k) {
        p[k + 1] = ((2 * k + 1) * x * p[k] - k * p[k - 1]) / (k + 1);
        dp[k + 1] = dp[k - 1] + (2 * k + 1) * p[k];
    }
}

}  // namespace

std::pair<Vector, Vector> lobatto_nodes(int degree) {
    if (degree < 1) throw DimensionError("lobatto rule needs degree >= 1");
    const int n = degree;
    Vector x(n + 1), w(n + 1);
    x[0] = -1.0;
    x[n] = 1.0;
    std::vector<double> p, dp;
    // interior nodes are the roots of P'_N, located via Newton on
    // q = P_{N-1} - P_{N+1} from Chebyshev-Lobatto initial guesses
    for (int i = 1; i < n; ++i) {
        double xi = -std::cos(M_PI * i / n);
        for (int it = 0; it < 100; ++it) {
            legendre_all(xi, n + 1, p, dp);
            const double q = p[n - 1] - p[n + 1];
            const double dq = dp[n - 1] - dp[n + 1];
            const double step = q / dq;
            xi -= step;
            if (std::abs(step) < 1e-15) break;
        }
        x[i] = xi;
    }
    for (int i = 0; i <= n; ++i) {
        legendre_all(x[i], n, p, dp);
        w[i] = 2.0 / (n * (n + 1) * p[n] * p[n]);
    }
    return {x, w};
}

std::pair<Vector, Vector> gauss_nodes(int n) {
    if (n < 1) throw DimensionError("gauss rule needs at least one point");
    Vector x(n), w(n);
    std::vector<double> p, dp;
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, Newton on P_n
        double xi = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            legendre_all(xi, n, p, dp);
            const double step = p[n] / dp[n];
            xi -= step;
            if (std::abs(step) < 1e-15) break;
        }
        legendre_all(xi, n, p, dp);
        x[i] = xi;
        w[i] = 2.0 / ((1.0 - xi * xi) * dp[n] * dp[n]);
    }
    return {x, w};
}

void legendre_vandermonde(const Vector& x, int degree, DenseMatrix& v, DenseMatrix& vx) {
    const int m = static_cast<int>(x.size());
    v.resize(m, degree + 1);
    vx.resize(m, degree + 1);
    std::vector<double> p, dp;
    for (int i = 0; i < m; ++i) {
        legendre_all(x[i], degree, p, dp);
        for (int k = 0; k <= degree; ++k) {
            const double c = std::sqrt((2 * k + 1) / 2.0);
            v(i, k) = c * p[k];
            vx(i, k) = c * dp[k];
        }
    }
}

}  // namespace fluxjac
