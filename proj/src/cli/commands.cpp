#include "fluxjac/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>

#include "fluxjac/cli/bench_kernels.hpp"
#include "fluxjac/cli/manufactured.hpp"
#include "fluxjac/linalg/matrix_market.hpp"

namespace fluxjac {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::ofstream open_out(const ExperimentConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    std::ofstream os(fs::path(cfg.out_dir) / name);
    if (!os) throw IoError("cannot write " + name + " under " + cfg.out_dir);
    os << std::setprecision(17);
    return os;
}

void write_summary(const ExperimentConfig& cfg, const nlohmann::json& j) {
    auto os = open_out(cfg, "summary.json");
    os << j.dump(2) << "\n";
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

// median wall time of fn() over `samples` samples of `inner` iterations
template <class Fn>
double time_median(Fn&& fn, int samples, int inner) {
    std::vector<double> times;
    times.reserve(samples);
    fn();  // warm up
    for (int s = 0; s < samples; ++s) {
        const auto t0 = Clock::now();
        for (int i = 0; i < inner; ++i) fn();
        times.push_back(std::chrono::duration<double>(Clock::now() - t0).count() / inner);
    }
    return median(std::move(times));
}

}  // namespace

// ---------------------------------------------------------------------------
// verify

std::vector<OracleReport> verify_sweep(unsigned long seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<OracleReport> out;

    struct Case {
        std::string scheme;
        std::string law;
    };
    const std::vector<std::string> schemes = {"fv", "dgsem", "dgsem-nonperiodic",
                                              "modal-gauss", "dgsem-2d"};
    const std::vector<std::string> laws = {"burgers", "euler2d"};

    for (const auto& scheme : schemes) {
        for (const auto& law_name : laws) {
            for (bool dissipative : {false, true}) {
                ExperimentConfig cfg;
                cfg.law = scheme == "dgsem-2d" && law_name == "burgers" ? "burgers2d"
                                                                        : law_name;
                cfg.degree = 2;
                cfg.k = scheme == "fv" ? 6 : 3;
                cfg.kx = cfg.ky = 2;
                cfg.dissipation = dissipative ? "lax-friedrichs" : "none";
                if (scheme == "dgsem-nonperiodic") {
                    cfg.scheme = "dgsem";
                    cfg.periodic = false;
                    cfg.boundary = "dirichlet";
                } else {
                    cfg.scheme = scheme;
                }
                auto sys = build_system(cfg);
                auto u = random_admissible_field(sys.law(), sys.disc.n_per_field(), rng);
                if (sys.disc.is_modal()) {
                    // interpret the random field as coefficients of a mildly
                    // varying state: damp higher modes around the first
                    const int np = sys.disc.elem.n_p;
                    const int n = sys.disc.n_per_field();
                    auto base = random_admissible_field(sys.law(), sys.disc.kx, rng);
                    for (int f = 0; f < sys.law().n_fields; ++f)
                        for (int e = 0; e < sys.disc.kx; ++e)
                            for (int m = 0; m < np; ++m) {
                                const double lead = base[f * sys.disc.kx + e];
                                u[f * n + e * np + m] =
                                    lead * std::sqrt(2.0) * (m == 0 ? 1.0 : 0.0) +
                                    0.05 * u[f * n + e * np + m] / (1.0 + m * m);
                            }
                }

                OracleReport rep;
                rep.name = scheme + "/" + cfg.law + (dissipative ? "/ec+lf" : "/ec");

                const auto t0 = Clock::now();
                const DenseMatrix analytic = jacobian_flat(sys, u).to_dense();
                rep.time_analytic = std::chrono::duration<double>(Clock::now() - t0).count();

                const auto oracle_fns = make_residual_oracle(sys);
                const auto t1 = Clock::now();
                const DenseMatrix oracle = ad_jacobian(oracle_fns, u);
                rep.time_oracle = std::chrono::duration<double>(Clock::now() - t1).count();

                rep.frobenius_abs = (analytic - oracle).norm();
                rep.frobenius_rel = rep.frobenius_abs / std::max(oracle.norm(), 1e-300);
                rep.pass = rep.frobenius_rel <= 1e-9;
                out.push_back(std::move(rep));
            }
        }
    }
    return out;
}

int cmd_verify(const ExperimentConfig& cfg, std::ostream& log) {
    auto table1 = verify_table1(cfg.seed);
    auto sweep = verify_sweep(cfg.seed);

    auto csv = open_out(cfg, "verify.csv");
    csv << "case,frobenius_abs,frobenius_rel,threshold,pass\n";
    bool all_pass = true;
    nlohmann::json cases = nlohmann::json::array();
    auto emit = [&](const OracleReport& r, double threshold) {
        csv << r.name << "," << r.frobenius_abs << "," << r.frobenius_rel << ","
            << threshold << "," << (r.pass ? 1 : 0) << "\n";
        log << (r.pass ? "pass " : "FAIL ") << std::left << std::setw(28) << r.name
            << " rel " << std::scientific << std::setprecision(3) << r.frobenius_rel
            << "  abs " << r.frobenius_abs << std::defaultfloat << "\n";
        cases.push_back({{"name", r.name},
                         {"frobenius_abs", r.frobenius_abs},
                         {"frobenius_rel", r.frobenius_rel},
                         {"threshold", threshold},
                         {"pass", r.pass}});
        all_pass = all_pass && r.pass;
    };
    for (const auto& r : table1) emit(r, 1e-10);
    for (const auto& r : sweep) emit(r, 1e-9);

    write_summary(cfg, {{"command", "verify"}, {"pass", all_pass}, {"cases", cases}});
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// bench

std::vector<BenchRow> run_bench(const std::vector<int>& sizes, unsigned long seed,
                                int samples, int min_inner) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    std::vector<BenchRow> rows;
    for (int n : sizes) {
        DenseMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = dist(rng);
        const DenseMatrix q = a - a.transpose();
        std::vector<double> u(n);
        for (auto& x : u) x = dist(rng);

        std::vector<double> r(n), colsum(n), wp(n), wm(n), up(n);
        DenseMatrix jac(n, n), jac_ad(n, n), jac_full(n, n), jac_fd(n, n);

        // cross-check the kernels against each other before timing
        bench_jacobian_burgers<false>(q, u.data(), jac, colsum.data());
        bench_ad_jacobian_burgers(q, u.data(), jac_full);
        if ((jac - jac_full).norm() > 1e-12 * jac_full.norm())
            throw Error("bench kernel disagreement");

        BenchRow row;
        row.size = n;
        const int inner = std::max(min_inner, 1);
        row.t_residual =
            time_median([&] { bench_residual_burgers(q, u.data(), r.data()); }, samples, inner);
        row.t_formula = time_median(
            [&] { bench_jacobian_burgers<false>(q, u.data(), jac, colsum.data()); }, samples,
            inner);
        row.t_formula_ad = time_median(
            [&] { bench_jacobian_burgers<true>(q, u.data(), jac_ad, colsum.data()); }, samples,
            inner);
        const int inner_slow = std::max(min_inner / 20, 10);
        row.t_ad = time_median([&] { bench_ad_jacobian_burgers(q, u.data(), jac_full); },
                               samples, inner_slow);
        row.t_fd = time_median(
            [&] { bench_fd_jacobian_burgers(q, u.data(), jac_fd, wp.data(), wm.data(), up.data()); },
            samples, inner_slow);
        rows.push_back(row);
    }
    return rows;
}

int cmd_bench(const ExperimentConfig& cfg, std::ostream& log) {
#ifndef NDEBUG
    log << "warning: benchmark built without optimization\n";
#endif
    const auto rows = run_bench({10, 25, 50}, cfg.seed, 31, 1000);
    auto csv = open_out(cfg, "bench.csv");
    csv << "n,ad_us,fd_us,formula_analytic_us,formula_ad_us,residual_us\n";
    log << "  n        AD        FD   formula  formula(AD)  residual   (microseconds, median)\n";
    for (const auto& r : rows) {
        csv << r.size << "," << r.t_ad * 1e6 << "," << r.t_fd * 1e6 << ","
            << r.t_formula * 1e6 << "," << r.t_formula_ad * 1e6 << ","
            << r.t_residual * 1e6 << "\n";
        log << std::setw(3) << r.size << std::fixed << std::setprecision(3) << std::setw(10)
            << r.t_ad * 1e6 << std::setw(10) << r.t_fd * 1e6 << std::setw(10)
            << r.t_formula * 1e6 << std::setw(12) << r.t_formula_ad * 1e6 << std::setw(10)
            << r.t_residual * 1e6 << std::defaultfloat << "\n";
    }
    const auto& last = rows.back();
    log << "ratios at n=" << last.size << ": formula/residual = "
        << last.t_formula / last.t_residual
        << ", ad/formula = " << last.t_ad / last.t_formula << "\n";

    write_summary(cfg, {{"command", "bench"},
                        {"formula_over_residual", last.t_formula / last.t_residual},
                        {"ad_over_formula", last.t_ad / last.t_formula}});
    return 0;
}

// ---------------------------------------------------------------------------
// converge

std::vector<ConvergeRow> run_converge(const ExperimentConfig& cfg,
                                      const std::vector<std::string>& methods) {
    std::vector<ConvergeRow> rows;
    for (const auto& method_name : methods) {
        const TimeMethod method = time_method_from_name(method_name);
        double prev_err = 0.0;
        for (int level = 0; level < cfg.levels; ++level) {
            auto sys = build_system(cfg);
            if (sys.law().kind == LawKind::burgers)
                attach_burgers_source(sys, cfg.k_freq);
            else
                attach_swe1d_source(sys, cfg.k_freq);

            const double dt = cfg.dt0 / (1 << level);
            const long steps = std::lround(cfg.final_time / dt);
            auto u = manufactured_initial(sys, cfg.k_freq, 0.0);
            double t = 0.0;
            for (long s = 0; s < steps; ++s) {
                switch (method) {
                    case TimeMethod::tdrk1: u = step_tdrk(1, sys, u, t, dt); break;
                    case TimeMethod::tdrk2: u = step_tdrk(2, sys, u, t, dt); break;
                    case TimeMethod::tdrk3: u = step_tdrk(3, sys, u, t, dt); break;
                    case TimeMethod::rk45: u = step_rk45(sys, u, t, dt); break;
                    default: throw ConfigError("converge supports explicit methods");
                }
                t += dt;
            }
            ConvergeRow row;
            row.method = method_name;
            row.level = level;
            row.dt = dt;
            row.error = manufactured_l2_error(sys, u, cfg.k_freq, t);
            // halving dt should shrink the error by at least 2x for any of
            // these methods; stagnation signals the accuracy floor
            row.roundoff =
                row.error < 5e-13 || (level > 0 && row.error > 0.35 * prev_err);
            row.rate = level > 0 ? std::log2(prev_err / row.error) : 0.0;
            prev_err = row.error;
            rows.push_back(row);
        }
    }
    return rows;
}

int cmd_converge(const ExperimentConfig& cfg, std::ostream& log) {
    const std::vector<std::string> methods = {"tdrk1", "tdrk2", "tdrk3", "rk45"};
    const auto rows = run_converge(cfg, methods);
    auto csv = open_out(cfg, "converge.csv");
    csv << "method,level,dt,l2_error,rate,roundoff\n";
    for (const auto& r : rows) {
        csv << r.method << "," << r.level << "," << r.dt << "," << r.error << "," << r.rate
            << "," << (r.roundoff ? 1 : 0) << "\n";
        log << std::setw(6) << r.method << "  dt " << std::scientific << std::setprecision(3)
            << r.dt << "  err " << r.error << std::defaultfloat << "  rate " << std::fixed
            << std::setprecision(3) << r.rate << (r.roundoff ? "  (roundoff)" : "")
            << std::defaultfloat << "\n";
    }
    nlohmann::json j = {{"command", "converge"}};
    write_summary(cfg, j);
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

std::vector<double> initial_condition(const ExperimentConfig& cfg,
                                      const SemiDiscreteSystem& sys) {
    const auto& d = sys.disc;
    const auto& law = sys.law();
    const int nf = law.n_fields;
    const int n = d.n_per_field();
    std::vector<double> u(static_cast<std::size_t>(nf) * n, 0.0);
    std::string init = cfg.init;
    if (init == "default") {
        init = law.kind == LawKind::euler ? "density-box" : "sin";
    }
    if (d.is_modal()) throw ConfigError("simulate expects collocated schemes");

    if (init == "sin") {
        for (int i = 0; i < n; ++i) u[i] = -std::sin(M_PI * d.x[i]);
        if (law.kind != LawKind::burgers)
            throw ConfigError("sin initial data is defined for burgers");
        return u;
    }
    if (init == "random") {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        if (law.kind != LawKind::burgers)
            throw ConfigError("random initial data is defined for burgers");
        for (int i = 0; i < n; ++i) u[i] = uni(rng);
        return u;
    }
    if (init == "density-box") {
        if (law.kind != LawKind::euler) throw ConfigError("density-box requires euler");
        for (int i = 0; i < n; ++i) {
            const double x = d.x[i], y = law.dim >= 2 ? d.y[i] : 0.0;
            const double rho =
                (std::abs(x) <= 0.5 && std::abs(y) <= 0.5) ? 1.1 : 1.0;
            u[i] = rho;
            u[(nf - 1) * n + i] = std::pow(rho, law.gamma);
        }
        return u;
    }
    throw ConfigError("unknown initial condition: " + init);
}

SimulateResult run_simulate(const ExperimentConfig& cfg) {
    auto sys = build_system(cfg);
    SimulateResult res;
    auto u = initial_condition(cfg, sys);
    res.entropy0 = total_entropy(sys, u);
    res.energy0 = total_energy(sys, u);

    const double h_min = sys.disc.scheme == SchemeKind::dgsem2d
                             ? std::min(sys.disc.hx, sys.disc.hy)
                             : sys.disc.hx;
    double dt = cfg.dt > 0.0 ? cfg.dt : compute_dt(h_min, sys.disc.degree, cfg.cfl);
    const long steps = std::max(1L, static_cast<long>(std::ceil(cfg.final_time / dt - 1e-12)));
    dt = cfg.final_time / static_cast<double>(steps);

    const TimeMethod method = time_method_from_name(cfg.method);
    res.min_newton = cfg.newton_max_iter + 1;
    double t = 0.0;
    for (long s = 0; s < steps; ++s) {
        StepReport rep;
        if (method == TimeMethod::implicit_midpoint) {
            auto out = step_implicit_midpoint(sys, u, t, dt, cfg.newton_rtol,
                                              cfg.newton_max_iter);
            u = std::move(out.u);
            rep = std::move(out.report);
            res.all_converged = res.all_converged && rep.converged;
            res.max_newton = std::max(res.max_newton, rep.newton_iters);
            res.min_newton = std::min(res.min_newton, rep.newton_iters);
            if (!rep.converged) {
                res.steps.push_back(rep);
                break;
            }
        } else {
            switch (method) {
                case TimeMethod::tdrk1: u = step_tdrk(1, sys, u, t, dt); break;
                case TimeMethod::tdrk2: u = step_tdrk(2, sys, u, t, dt); break;
                case TimeMethod::tdrk3: u = step_tdrk(3, sys, u, t, dt); break;
                case TimeMethod::rk45: u = step_rk45(sys, u, t, dt); break;
                default: break;
            }
            rep.time = t + dt;
            rep.dt = dt;
            rep.entropy = total_entropy(sys, u);
            rep.energy = total_energy(sys, u);
        }
        res.steps.push_back(rep);
        t += dt;
    }
    res.u_final = std::move(u);
    return res;
}

int cmd_simulate(const ExperimentConfig& cfg, bool assert_mode, std::ostream& log) {
    auto res = run_simulate(cfg);
    auto csv = open_out(cfg, "series.csv");
    csv << "time,entropy,entropy_change,energy,newton_iters,dt\n";
    for (const auto& s : res.steps)
        csv << s.time << "," << s.entropy << "," << s.entropy - res.entropy0 << ","
            << s.energy << "," << s.newton_iters << "," << s.dt << "\n";

    if (cfg.dump_matrices) {
        auto sys = build_system(cfg);
        auto u0 = initial_condition(cfg, sys);
        export_matrix_market(jacobian_flat(sys, u0),
                             (fs::path(cfg.out_dir) / "jacobian.mtx").string());
    }

    const auto& last = res.steps.back();
    const double denergy = std::abs(last.energy - res.energy0) /
                           std::max(std::abs(res.energy0), 1e-300);
    const double dentropy = last.entropy - res.entropy0;
    log << "steps " << res.steps.size() << ", |dE|/E " << std::scientific
        << std::setprecision(3) << denergy << ", S(T)-S(0) " << dentropy
        << std::defaultfloat;
    if (cfg.method == "implicit-midpoint")
        log << ", newton " << res.min_newton << ".." << res.max_newton
            << (res.all_converged ? "" : " (non-convergence!)");
    log << "\n";

    bool pass = true;
    if (assert_mode) {
        if (cfg.method == "implicit-midpoint") pass = pass && res.all_converged;
        const bool ec = cfg.dissipation == "none";
        if (ec && cfg.law == "burgers2d" && cfg.method == "implicit-midpoint")
            pass = pass && denergy <= 1e-12;
        if (!ec) {
            // entropy must not increase beyond roundoff
            double prev = res.entropy0;
            for (const auto& s : res.steps) {
                pass = pass && s.entropy <= prev + 1e-10 * std::abs(prev);
                prev = s.entropy;
            }
        }
    }

    write_summary(cfg, {{"command", "simulate"},
                        {"steps", res.steps.size()},
                        {"energy_change_rel", denergy},
                        {"entropy_change", dentropy},
                        {"newton_min", res.min_newton},
                        {"newton_max", res.max_newton},
                        {"all_converged", res.all_converged},
                        {"pass", pass}});
    if (!res.all_converged && cfg.method == "implicit-midpoint") return 2;
    return pass ? 0 : 1;
}

}  // namespace fluxjac
