#include <doctest.h>

#include "fluxjac/cli/config.hpp"
#include "fluxjac/oracles/oracles.hpp"
#include "test_helpers.hpp"

using namespace fluxjac;
using namespace fluxjac::testing;

namespace {

DifferentiableResidual linear_residual(const DenseMatrix& a) {
    DifferentiableResidual r;
    r.eval = [a](std::span<const double> u) {
        std::vector<double> out(a.rows(), 0.0);
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) out[i] += a(i, j) * u[j];
        return out;
    };
    r.eval_dual = [a](std::span<const Dual<1>> u) {
        std::vector<Dual<1>> out(a.rows(), Dual<1>(0.0));
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) out[i] += a(i, j) * u[j];
        return out;
    };
    return r;
}

}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("ad_jacobian recovers linear maps exactly") {
    std::mt19937_64 rng(71);
    auto a = random_dense(6, rng);
    std::vector<double> u(6);
    std::normal_distribution<double> dist;
    for (auto& x : u) x = dist(rng);
    auto jac = ad_jacobian(linear_residual(a), u);
    CHECK((jac - a).norm() == 0.0);
}

TEST_CASE("ad_jacobian of the squaring map is diag(2u)") {
    DifferentiableResidual r;
    r.eval = [](std::span<const double> u) {
        std::vector<double> out(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * u[i];
        return out;
    };
    r.eval_dual = [](std::span<const Dual<1>> u) {
        std::vector<Dual<1>> out(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * u[i];
        return out;
    };
    std::vector<double> u{1.0, -2.0, 0.5};
    auto jac = ad_jacobian(r, u);
    CHECK((jac - DenseMatrix(Vector(to_eigen(u) * 2.0).asDiagonal())).norm() == 0.0);
}

TEST_CASE("fd_jacobian accuracy") {
    std::mt19937_64 rng(72);
    auto a = random_dense(5, rng);
    std::vector<double> u(5);
    std::normal_distribution<double> dist;
    for (auto& x : u) x = dist(rng);
    auto lin = linear_residual(a);
    CHECK((fd_jacobian(lin.eval, u) - a).norm() < 1e-10 * a.norm());

    // cubic map at u = 2: derivative 12 within the truncation floor
    auto cube = [](std::span<const double> x) {
        return std::vector<double>{x[0] * x[0] * x[0]};
    };
    std::vector<double> two{2.0};
    CHECK(fd_jacobian(cube, two)(0, 0) == doctest::Approx(12.0).epsilon(1e-6));
}

TEST_CASE("ad and fd oracles agree on a DG system") {
    ExperimentConfig cfg;
    cfg.scheme = "dgsem";
    cfg.law = "euler2d";
    cfg.degree = 2;
    cfg.k = 2;
    cfg.dissipation = "lax-friedrichs";
    auto sys = build_system(cfg);
    std::mt19937_64 rng(73);
    auto u = random_admissible_field(sys.law(), sys.disc.n_per_field(), rng);
    auto oracle = make_residual_oracle(sys);
    auto ad = ad_jacobian(oracle, u);
    auto fd = fd_jacobian(oracle.eval, u);
    CHECK((ad - fd).norm() <= 1e-5 * ad.norm());
}

TEST_CASE("random-operator verification rows pass") {
    auto reports = verify_table1(12345);
    REQUIRE(reports.size() == 6);
    // per-case absolute scales comparable to machine-precision expectations
    const double abs_limit[6] = {1.6e-13, 9.2e-11, 2.7e-12, 2.1e-12, 3.1e-10, 5.1e-12};
    for (std::size_t i = 0; i < reports.size(); ++i) {
        CAPTURE(reports[i].name);
        CHECK(reports[i].pass);
        CHECK(reports[i].frobenius_rel <= 1e-10);
        CHECK(reports[i].frobenius_abs <= abs_limit[i]);
    }
}

TEST_CASE("verification verdict is seed independent") {
    for (unsigned long seed : {1ul, 42ul, 987654321ul}) {
        for (const auto& r : verify_table1(seed)) {
            CAPTURE(seed);
            CAPTURE(r.name);
            CHECK(r.pass);
        }
    }
}

}  // TEST_SUITE
