#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fluxjac/cli/config.hpp"
#include "fluxjac/oracles/oracles.hpp"

namespace fluxjac {

// Jacobian verification: the random-operator rows plus the full
// oracle-equivalence sweep over schemes, laws, and dissipation settings.
// Exit code 0 iff every case passes its threshold.
int cmd_verify(const ExperimentConfig& cfg, std::ostream& log);

// All sweep cases as reports (library entry point for tests).
std::vector<OracleReport> verify_sweep(unsigned long seed);

struct BenchRow {
    int size = 0;
    double t_ad = 0.0;          // AD on the residual
    double t_fd = 0.0;          // finite differences
    double t_formula = 0.0;     // closed-form Jacobian, analytic flux derivative
    double t_formula_ad = 0.0;  // closed-form Jacobian, AD flux derivative
    double t_residual = 0.0;    // residual evaluation for reference
};
std::vector<BenchRow> run_bench(const std::vector<int>& sizes, unsigned long seed,
                                int samples, int min_inner);
int cmd_bench(const ExperimentConfig& cfg, std::ostream& log);

struct ConvergeRow {
    std::string method;
    int level = 0;
    double dt = 0.0;
    double error = 0.0;
    double rate = 0.0;       // versus the previous level
    bool roundoff = false;   // error at the roundoff floor
};
std::vector<ConvergeRow> run_converge(const ExperimentConfig& cfg,
                                      const std::vector<std::string>& methods);
int cmd_converge(const ExperimentConfig& cfg, std::ostream& log);

struct SimulateResult {
    std::vector<StepReport> steps;
    std::vector<double> u_final;
    double entropy0 = 0.0;
    double energy0 = 0.0;
    bool all_converged = true;
    int max_newton = 0;
    int min_newton = 0;
};
SimulateResult run_simulate(const ExperimentConfig& cfg);
int cmd_simulate(const ExperimentConfig& cfg, bool assert_mode, std::ostream& log);

// Deterministic initial condition for a simulation config.
std::vector<double> initial_condition(const ExperimentConfig& cfg,
                                      const SemiDiscreteSystem& sys);

}  // namespace fluxjac
