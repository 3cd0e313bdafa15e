#include "run_config.hpp"

#include <algorithm>
#include <cmath>

namespace dicke3::run {

void RunConfig::validate() const {
    if (!std::isfinite(omega) || !std::isfinite(g) || !std::isfinite(z))
        throw config_error("non-finite parameter");
    if (omega_c <= 0.0) throw config_error("omega_c must be > 0");
    if (omega < 0.0) throw config_error("omega must be >= 0");
    if (g < 0.0) throw config_error("g must be >= 0");
    if (z < 0.0) throw config_error("z must be >= 0");
    if (t_max <= 0.0) throw config_error("t-max must be > 0");
    if (points < 2) throw config_error("points must be >= 2");
    if (n_tr < 0) throw config_error("n-tr must be >= 0 (0 = auto)");
    if (methods.empty()) throw config_error("at least one method required");
    for (const auto& m : methods)
        if (m != "exact" && m != "adiabatic" && m != "analytic")
            throw config_error("unknown method '" + m + "'");
    for (double gs : g_sweep)
        if (gs < 0.0 || !std::isfinite(gs)) throw config_error("invalid g-sweep value");
    if (n_fock >= 0 && n_tr > 0 && n_fock > n_tr)
        throw config_error("n-fock exceeds n-tr");
    if (out_dir.empty()) throw config_error("out-dir must not be empty");
}

std::string to_string(InitialState s) {
    return s == InitialState::AllExcited ? "all-excited" : "ghz";
}

}  // namespace dicke3::run
