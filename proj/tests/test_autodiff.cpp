#include <doctest.h>

#include <random>

#include "fluxjac/autodiff/flux_derivatives.hpp"
#include "fluxjac/fluxes/dissipation.hpp"
#include "fluxjac/fluxes/fluxes.hpp"
#include "test_helpers.hpp"

using namespace fluxjac;
using namespace fluxjac::testing;

namespace {

// Central-difference Jacobian of a vector flux in its right argument.
DenseMatrix fd_jacobian_right(const ConservationLaw& law, int dir,
                              const std::vector<double>& ul,
                              const std::vector<double>& ur) {
    const int n = law.n_fields;
    DenseMatrix jac(n, n);
    std::vector<double> up(ur), um(ur), fp(n), fm(n);
    for (int j = 0; j < n; ++j) {
        const double h = 1e-6 * std::max(std::abs(ur[j]), 1.0);
        up = ur; um = ur;
        up[j] += h; um[j] -= h;
        flux_ec<double>(law, dir, ul, up, fp);
        flux_ec<double>(law, dir, ul, um, fm);
        for (int i = 0; i < n; ++i) jac(i, j) = (fp[i] - fm[i]) / (2 * h);
    }
    return jac;
}

}  // namespace

TEST_SUITE("autodiff") {

TEST_CASE("dual arithmetic basics") {
    auto x = Dual<1>::seeded(3.0, 0);
    CHECK((x * x).val == doctest::Approx(9.0));
    CHECK((x * x).dot[0] == doctest::Approx(6.0));

    auto y = Dual<1>::seeded(2.0, 0);
    CHECK(log(y).dot[0] == doctest::Approx(0.5));

    auto z = Dual<1>::seeded(1.0, 0);
    CHECK((z * log(z)).dot[0] == doctest::Approx(1.0));  // product rule by hand

    CHECK(sqrt(Dual<1>::seeded(4.0, 0)).dot[0] == doctest::Approx(0.25));
    CHECK(pow(Dual<1>::seeded(2.0, 0), 3.0).dot[0] == doctest::Approx(12.0));
    CHECK((1.0 / Dual<1>::seeded(2.0, 0)).dot[0] == doctest::Approx(-0.25));
}

TEST_CASE("domain errors propagate as NaN, trap mode throws") {
    auto bad = log(Dual<1>(-1.0));
    CHECK(std::isnan(bad.val));
    set_ad_trap_domain_errors(true);
    CHECK_THROWS_AS(log(Dual<1>(-1.0)), DomainError);
    CHECK_THROWS_AS(sqrt(Dual<1>(-1.0)), DomainError);
    set_ad_trap_domain_errors(false);
}

TEST_CASE("derivative_wrt_right on scalar fluxes") {
    auto burgers = [](auto x, auto y) { return (x * x + y * y + x * y) * (1.0 / 6.0); };
    CHECK(derivative_wrt_right(burgers, 1.0, 2.0) == doctest::Approx(5.0 / 6.0));

    auto left_only = [](auto x, auto) { return x; };
    CHECK(derivative_wrt_right(left_only, 1.5, -0.3) == 0.0);

    // logarithmic mean at equal arguments: both partials are 1/2
    auto lm = [](auto a, auto b) { return logmean(a, b); };
    const double h = 1e-6;
    const double fd = (logmean(1.0, 1.0 + h) - logmean(1.0, 1.0 - h)) / (2 * h);
    CHECK(derivative_wrt_right(lm, 1.0, 1.0) == doctest::Approx(fd).epsilon(1e-6));
    CHECK(derivative_wrt_right(lm, 1.0, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("flux jacobians sum to the physical flux jacobian at equal states") {
    std::mt19937_64 rng(17);
    for (const auto& law : {ConservationLaw::burgers(1), ConservationLaw::shallow_water(2),
                            ConservationLaw::euler(3)}) {
        auto u = random_state(law, rng);
        const int n = law.n_fields;
        auto flux = [&](auto ul, auto ur, auto out) { flux_ec(law, 0, ul, ur, out); };
        DenseMatrix sum = flux_jacobian_right(flux, std::span<const double>(u),
                                              std::span<const double>(u)) +
                          flux_jacobian_left(flux, std::span<const double>(u),
                                             std::span<const double>(u));
        // central FD of the physical flux
        DenseMatrix fd(n, n);
        std::vector<double> up(n), um(n), fp(n), fm(n);
        for (int j = 0; j < n; ++j) {
            const double h = 1e-6 * std::max(std::abs(u[j]), 1.0);
            up = u; um = u;
            up[j] += h; um[j] -= h;
            flux_physical<double>(law, 0, up, fp);
            flux_physical<double>(law, 0, um, fm);
            for (int i = 0; i < n; ++i) fd(i, j) = (fp[i] - fm[i]) / (2 * h);
        }
        CHECK((sum - fd).norm() < 1e-5 * std::max(fd.norm(), 1.0));
    }
}

TEST_CASE("swe mass-flux partial is one half") {
    auto law = ConservationLaw::shallow_water(2);
    std::vector<double> ul{1.0, 0.4, -0.2}, ur{1.5, -0.1, 0.3};
    auto flux = [&](auto a, auto b, auto out) { flux_ec(law, 0, a, b, out); };
    auto jac = flux_jacobian_right(flux, std::span<const double>(ul),
                                   std::span<const double>(ur));
    CHECK(jac(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("dual jacobians match central differences on random pairs") {
    std::mt19937_64 rng(19);
    for (const auto& law : {ConservationLaw::burgers(1), ConservationLaw::shallow_water(2),
                            ConservationLaw::euler(2), ConservationLaw::euler(3)}) {
        for (int dir = 0; dir < law.dim; ++dir) {
            for (int trial = 0; trial < 100; ++trial) {
                auto ul = random_state(law, rng);
                auto ur = random_state(law, rng);
                auto flux = [&](auto a, auto b, auto out) { flux_ec(law, dir, a, b, out); };
                auto ad = flux_jacobian_right(flux, std::span<const double>(ul),
                                              std::span<const double>(ur));
                auto fd = fd_jacobian_right(law, dir, ul, ur);
                CHECK((ad - fd).norm() <= 1e-5 * std::max(fd.norm(), 1.0));
            }
        }
    }
}

TEST_CASE("symmetry transfer between left and right partials") {
    std::mt19937_64 rng(23);
    auto law = ConservationLaw::euler(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_state(law, rng);
        auto b = random_state(law, rng);
        auto flux = [&](auto l, auto r, auto out) { flux_ec(law, 0, l, r, out); };
        auto right_ab = flux_jacobian_right(flux, std::span<const double>(a),
                                            std::span<const double>(b));
        auto left_ba = flux_jacobian_left(flux, std::span<const double>(b),
                                          std::span<const double>(a));
        CHECK((right_ab - left_ba).norm() <= 1e-13 * std::max(right_ab.norm(), 1.0));
    }
}

}  // TEST_SUITE
