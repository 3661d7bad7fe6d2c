#include <chrono>
#include <cmath>

#include "fluxjac/autodiff/flux_derivatives.hpp"
#include "fluxjac/fluxes/dissipation.hpp"
#include "fluxjac/oracles/oracles.hpp"
#include "fluxjac/semidiscrete/flux_differencing.hpp"

namespace fluxjac {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

SparseOperator random_skew_op(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> d;
    DenseMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = d(rng);
    return SparseOperator::from_dense(a - a.transpose(), Symmetry::skew);
}

SparseOperator random_symmetric_op(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> d;
    DenseMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = d(rng);
    return SparseOperator::from_dense(a + a.transpose(), Symmetry::symmetric);
}

// One verification case: r(u) = scale (Q o F) 1 over a single random
// operator, with F either an entropy conservative flux (skew Q) or a
// Lax-Friedrichs flux (symmetric Q).
OracleReport run_case(const std::string& name, const ConservationLaw& law,
                      const SparseOperator& q, bool dissipative,
                      const std::vector<double>& normal, std::span<const double> u) {
    const int nf = law.n_fields;
    const int n = q.rows();
    const double scale = dissipative ? 1.0 : 2.0;

    auto flux_d = [&](std::span<const double> a, std::span<const double> b,
                      std::span<double> f) {
        if (dissipative)
            lax_friedrichs(law, a, b, normal.data(), WavespeedPolicy::max_endpoint, f);
        else
            flux_ec(law, 0, a, b, f);
    };
    auto flux_ad = [&](std::span<const Dual<1>> a, std::span<const Dual<1>> b,
                       std::span<Dual<1>> f) {
        if (dissipative)
            lax_friedrichs(law, a, b, normal.data(), WavespeedPolicy::max_endpoint, f);
        else
            flux_ec(law, 0, a, b, f);
    };

    // analytic Jacobian from the Hadamard-structured formulas
    auto t0 = Clock::now();
    BlockTriplets bt(nf, n);
    auto kernel = [&](int a, int b, std::span<double> g) {
        with_tangent_width(nf, [&](auto width) {
            constexpr int W = decltype(width)::value;
            std::array<Dual<W>, W> ua, ub, out;
            for (int f = 0; f < nf; ++f) {
                ua[f] = Dual<W>(u[f * n + a]);
                ub[f] = Dual<W>::seeded(u[f * n + b], f);
            }
            if (dissipative)
                lax_friedrichs(law, std::span<const Dual<W>>(ua.data(), nf),
                               std::span<const Dual<W>>(ub.data(), nf), normal.data(),
                               WavespeedPolicy::max_endpoint,
                               std::span<Dual<W>>(out.data(), nf));
            else
                flux_ec(law, 0, std::span<const Dual<W>>(ua.data(), nf),
                        std::span<const Dual<W>>(ub.data(), nf),
                        std::span<Dual<W>>(out.data(), nf));
            for (int i = 0; i < nf; ++i)
                for (int j = 0; j < nf; ++j) g[i * nf + j] = out[i].dot[j];
        });
    };
    // diagonal-correction sign: skew EC uses -, symmetric dissipative uses -
    add_hadamard_jacobian(q, nf, scale, 1.0, -1.0, JacobianVariant::right_arg, kernel, bt);
    const DenseMatrix analytic = bt.build().to_dense();
    const double time_analytic = seconds_since(t0);

    // AD applied to the residual itself
    DifferentiableResidual res;
    res.eval = [&](std::span<const double> x) {
        std::vector<double> out(x.size(), 0.0);
        add_hadamard_residual(q, nf, x, scale, flux_d, std::span<double>(out));
        return out;
    };
    res.eval_dual = [&](std::span<const Dual<1>> x) {
        std::vector<Dual<1>> out(x.size(), Dual<1>(0.0));
        add_hadamard_residual(q, nf, x, scale, flux_ad, std::span<Dual<1>>(out));
        return out;
    };
    t0 = Clock::now();
    const DenseMatrix oracle = ad_jacobian(res, u);
    const double time_oracle = seconds_since(t0);

    t0 = Clock::now();
    volatile double sink = res.eval(u)[0];
    (void)sink;
    const double time_residual = seconds_since(t0);

    OracleReport rep;
    rep.name = name;
    rep.frobenius_abs = (analytic - oracle).norm();
    rep.frobenius_rel = rep.frobenius_abs / std::max(oracle.norm(), 1e-300);
    rep.time_analytic = time_analytic;
    rep.time_oracle = time_oracle;
    rep.time_residual = time_residual;
    rep.pass = rep.frobenius_rel <= 1e-10;
    return rep;
}

}  // namespace

std::vector<OracleReport> verify_table1(unsigned long seed) {
    std::mt19937_64 rng(seed);
    const int n = 25;
    std::vector<OracleReport> out;

    const auto burgers = ConservationLaw::burgers(1);
    const auto swe = ConservationLaw::shallow_water(2);
    const auto euler = ConservationLaw::euler(3);

    std::vector<double> unit_x{1.0, 0.0, 0.0};
    for (const auto* law : {&burgers, &swe, &euler}) {
        auto q = random_skew_op(n, rng);
        auto u = random_admissible_field(*law, n, rng);
        out.push_back(run_case(law->name(), *law, q, false, unit_x, u));
    }
    for (const auto* law : {&burgers, &swe, &euler}) {
        auto b = random_symmetric_op(n, rng);
        auto u = random_admissible_field(*law, n, rng);
        std::normal_distribution<double> nd;
        std::vector<double> normal(3, 0.0);
        double norm2 = 0.0;
        for (int d = 0; d < law->dim; ++d) {
            normal[d] = nd(rng);
            norm2 += normal[d] * normal[d];
        }
        for (int d = 0; d < law->dim; ++d) normal[d] /= std::sqrt(norm2);
        out.push_back(run_case("lf-" + law->name(), *law, b, true, normal, u));
    }
    return out;
}

}  // namespace fluxjac
