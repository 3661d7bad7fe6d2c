#include "fluxjac/cli/config.hpp"

#include <fstream>
#include <sstream>

namespace fluxjac {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("bad boolean for " + key + ": " + v);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string full = section.empty() ? key : section + "." + key;

        if (full == "experiment.seed") cfg.seed = std::stoul(val);
        else if (full == "experiment.out") cfg.out_dir = val;
        else if (full == "law.id") cfg.law = val;
        else if (full == "law.gamma") cfg.gamma = std::stod(val);
        else if (full == "law.gravity") cfg.gravity = std::stod(val);
        else if (full == "scheme.kind") cfg.scheme = val;
        else if (full == "scheme.degree") cfg.degree = std::stoi(val);
        else if (full == "scheme.k") cfg.k = std::stoi(val);
        else if (full == "scheme.kx") cfg.kx = std::stoi(val);
        else if (full == "scheme.ky") cfg.ky = std::stoi(val);
        else if (full == "scheme.periodic") cfg.periodic = parse_bool(val, full);
        else if (full == "scheme.boundary") cfg.boundary = val;
        else if (full == "scheme.dissipation") cfg.dissipation = val;
        else if (full == "scheme.wavespeed") cfg.wavespeed = val;
        else if (full == "integrator.method") cfg.method = val;
        else if (full == "integrator.cfl") cfg.cfl = std::stod(val);
        else if (full == "integrator.dt") cfg.dt = std::stod(val);
        else if (full == "integrator.final_time") cfg.final_time = std::stod(val);
        else if (full == "integrator.newton_rtol") cfg.newton_rtol = std::stod(val);
        else if (full == "integrator.newton_max_iter") cfg.newton_max_iter = std::stoi(val);
        else if (full == "converge.levels") cfg.levels = std::stoi(val);
        else if (full == "converge.k_freq") cfg.k_freq = std::stod(val);
        else if (full == "converge.dt0") cfg.dt0 = std::stod(val);
        else if (full == "simulate.init") cfg.init = val;
        else if (full == "simulate.dump_matrices") cfg.dump_matrices = parse_bool(val, full);
        else throw ConfigError("unknown configuration key: " + full);
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
}

std::string ExperimentConfig::serialize() const {
    std::ostringstream os;
    os << "[experiment]\n";
    os << "seed = " << seed << "\n";
    os << "out = " << out_dir << "\n";
    os << "\n[law]\n";
    os << "id = " << law << "\n";
    os << "gamma = " << fmt(gamma) << "\n";
    os << "gravity = " << fmt(gravity) << "\n";
    os << "\n[scheme]\n";
    os << "kind = " << scheme << "\n";
    os << "degree = " << degree << "\n";
    os << "k = " << k << "\n";
    os << "kx = " << kx << "\n";
    os << "ky = " << ky << "\n";
    os << "periodic = " << (periodic ? "true" : "false") << "\n";
    os << "boundary = " << boundary << "\n";
    os << "dissipation = " << dissipation << "\n";
    os << "wavespeed = " << wavespeed << "\n";
    os << "\n[integrator]\n";
    os << "method = " << method << "\n";
    os << "cfl = " << fmt(cfl) << "\n";
    os << "dt = " << fmt(dt) << "\n";
    os << "final_time = " << fmt(final_time) << "\n";
    os << "newton_rtol = " << fmt(newton_rtol) << "\n";
    os << "newton_max_iter = " << newton_max_iter << "\n";
    os << "\n[converge]\n";
    os << "levels = " << levels << "\n";
    os << "k_freq = " << fmt(k_freq) << "\n";
    os << "dt0 = " << fmt(dt0) << "\n";
    os << "\n[simulate]\n";
    os << "init = " << init << "\n";
    os << "dump_matrices = " << (dump_matrices ? "true" : "false") << "\n";
    return os.str();
}

SemiDiscreteSystem build_system(const ExperimentConfig& cfg) {
    ConservationLaw law = ConservationLaw::from_name(cfg.law);
    law.gamma = cfg.gamma;
    law.gravity = cfg.gravity;

    SemiDiscreteSystem sys;
    if (cfg.scheme == "fv") {
        sys.disc = fv_periodic(cfg.k, law);
    } else if (cfg.scheme == "dgsem") {
        auto elem = lobatto_sbp(cfg.degree);
        if (cfg.periodic) {
            sys.disc = assemble_global_periodic(elem, cfg.k, law);
        } else {
            BoundaryPolicy bc;
            if (cfg.boundary == "dirichlet") {
                // exterior pinned to a uniform admissible reference state
                std::vector<double> ref(law.n_fields, 0.0);
                switch (law.kind) {
                    case LawKind::burgers: ref = {0.0}; break;
                    case LawKind::shallow_water:
                        ref.assign(law.n_fields, 0.0);
                        ref[0] = 1.0;
                        break;
                    case LawKind::euler:
                        ref.assign(law.n_fields, 0.0);
                        ref[0] = 1.0;
                        ref[law.n_fields - 1] = 1.0 / (law.gamma - 1.0);
                        break;
                }
                bc = BoundaryPolicy::dirichlet(ref, ref);
            } else if (cfg.boundary == "reflective") {
                bc = BoundaryPolicy::reflective();
            } else if (cfg.boundary == "extrapolated") {
                bc = BoundaryPolicy::extrapolated();
            } else {
                throw ConfigError("unknown boundary policy: " + cfg.boundary);
            }
            sys.disc = assemble_global_nonperiodic(elem, cfg.k, bc, law);
        }
    } else if (cfg.scheme == "modal-gauss") {
        sys.disc = assemble_global_modal(modal_reference(cfg.degree), cfg.k, law);
    } else if (cfg.scheme == "modal-lobatto") {
        sys.disc = assemble_global_modal(
            modal_reference(cfg.degree, VolumeQuadrature::lobatto), cfg.k, law);
    } else if (cfg.scheme == "dgsem-2d") {
        sys.disc = tensor2d_affine(lobatto_sbp(cfg.degree), cfg.kx, cfg.ky, law);
    } else {
        throw ConfigError("unknown scheme: " + cfg.scheme);
    }

    if (cfg.dissipation == "lax-friedrichs") {
        sys.dissipation = cfg.wavespeed == "rms" ? WavespeedPolicy::rms_endpoint
                                                 : WavespeedPolicy::max_endpoint;
    } else if (cfg.dissipation != "none") {
        throw ConfigError("unknown dissipation: " + cfg.dissipation);
    }
    return sys;
}

}  // namespace fluxjac
