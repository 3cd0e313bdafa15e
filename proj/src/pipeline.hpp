// pipeline.hpp — Figure-producing runners behind the CLI commands, factored
// so the verification suite can reuse the same series builders.

#pragma once

#include <Eigen/Dense>

#include <string>

#include "dicke3/analysis.hpp"
#include "dicke3/model.hpp"
#include "dicke3/revival.hpp"
#include "run_config.hpp"

namespace dicke3::run {

// Time grids are in omega t / 2 pi throughout.
Eigen::VectorXd plot_grid(double t_max, int points);

// P1 series for one method ("exact" | "adiabatic" | "analytic") at coupling
// g_val; the field starts in the coherent (z) or Fock (n_fock) preparation.
TimeSeries population_series(const std::string& method, const RunConfig& cfg,
                             double g_val, const Eigen::VectorXd& grid);

struct TangleSeries {
    Eigen::VectorXd times;
    Eigen::VectorXd tau_fq;
    Eigen::VectorXd tau_ab;     // NaN where the family-pattern gate failed
    int pattern_failures{0};
    double initial_leak{0.0};
};

TangleSeries tangle_series(const std::string& method, const RunConfig& cfg,
                           double g_val, const Eigen::VectorXd& grid);

// Default frequency grid for spectra, in units of omega.
Eigen::VectorXd spectrum_grid();

int cmd_population(const RunConfig& cfg);
int cmd_spectrum(const RunConfig& cfg);
int cmd_tangle(const RunConfig& cfg);

}  // namespace dicke3::run
