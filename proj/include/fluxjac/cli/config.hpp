#pragma once

#include <string>

#include "fluxjac/semidiscrete/system.hpp"
#include "fluxjac/timestepping/integrators.hpp"

namespace fluxjac {

// Line-oriented key = value configuration with [section] headers and #
// comments.  serialize() emits a canonical form whose parse is lossless.
struct ExperimentConfig {
    // [experiment]
    unsigned long seed = 12345;
    std::string out_dir = "out";

    // [law]
    std::string law = "burgers";
    double gamma = 1.4;
    double gravity = 1.0;

    // [scheme]
    std::string scheme = "dgsem";  // fv | dgsem | modal-gauss | dgsem-2d
    int degree = 2;
    int k = 4;
    int kx = 4, ky = 4;
    bool periodic = true;
    std::string boundary = "dirichlet";  // dirichlet | reflective | extrapolated
    std::string dissipation = "none";    // none | lax-friedrichs
    std::string wavespeed = "max";       // max | rms

    // [integrator]
    std::string method = "rk45";
    double cfl = 1.0;
    double dt = 0.0;  // overrides cfl when positive
    double final_time = 1.0;
    double newton_rtol = 1e-11;
    int newton_max_iter = 25;

    // [converge]
    int levels = 5;
    double k_freq = 10.0;   // manufactured-solution frequency
    double dt0 = 0.01;      // coarsest time step

    // [simulate]
    std::string init = "default";  // default | sin | random | density-box
    bool dump_matrices = false;

    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::string& path);
    std::string serialize() const;

    bool operator==(const ExperimentConfig&) const = default;
};

// Builds the semi-discrete system the configuration describes.
SemiDiscreteSystem build_system(const ExperimentConfig& cfg);

}  // namespace fluxjac
