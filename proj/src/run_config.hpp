// run_config.hpp — Run configuration shared by the CLI commands.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dicke3/model.hpp"

namespace dicke3::run {

// Invalid configuration; the CLI maps it to exit code 2.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure during a run; the CLI maps it to exit code 3.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class InitialState { AllExcited, Ghz };

struct RunConfig {
    double omega_c{1.0};
    double omega{0.15};
    double g{0.08};
    double z{3.0};
    int n_fock{-1};                 // >= 0 selects the Fock-state field variant
    InitialState initial{InitialState::AllExcited};
    std::vector<std::string> methods{"exact", "adiabatic", "analytic"};
    double t_max{50.0};             // in omega t / 2 pi
    int points{2048};
    int n_tr{0};                    // 0 = automatic rule
    std::vector<double> g_sweep;    // empty = single g
    std::string out_dir{"out"};
    bool emit_plots{false};
    bool json_output{false};

    ModelParams params() const { return make_params(omega_c, omega, g); }

    int resolved_n_tr(double coupling) const {
        if (n_tr > 0) return n_tr;
        const ModelParams p = make_params(omega_c, omega, coupling);
        int n = default_truncation(z, p).n_tr;
        if (n_fock >= 0) n = std::max(n, n_fock + 40);
        return n;
    }

    void validate() const;
};

std::string to_string(InitialState s);

}  // namespace dicke3::run
