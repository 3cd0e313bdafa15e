#include "pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dicke3/adiabatic.hpp"
#include "dicke3/entanglement.hpp"
#include "dicke3/exact.hpp"
#include "output.hpp"
#include "parallel.hpp"

namespace fs = std::filesystem;

namespace dicke3::run {

Eigen::VectorXd plot_grid(double t_max, int points) {
    return Eigen::VectorXd::LinSpaced(points, 0.0, t_max);
}

Eigen::VectorXd spectrum_grid() {
    const double lo = 0.05, hi = 3.5, step = 0.0025;
    const int n = static_cast<int>(std::floor((hi - lo) / step)) + 1;
    return Eigen::VectorXd::LinSpaced(n, lo, lo + step * (n - 1));
}

namespace {

std::string format_g(double g) {
    std::ostringstream os;
    os << g;
    return os.str();
}

TimeSeries exact_population(const RunConfig& cfg, double g_val,
                            const Eigen::VectorXd& grid, int n_tr_override = 0) {
    const ModelParams p = make_params(cfg.omega_c, cfg.omega, g_val);
    const FockTruncation trunc(n_tr_override > 0 ? n_tr_override : cfg.resolved_n_tr(g_val));
    const SpectralDecomposition d = eigendecompose(full_hamiltonian(p, trunc));
    const SpinFieldState psi0 = cfg.n_fock >= 0
                                    ? initial_all_excited_fock(cfg.n_fock, p, trunc)
                                    : initial_all_excited_coherent(cfg.z, p, trunc);
    TimeSeries s;
    s.times = grid;
    s.values.resize(grid.size());
    s.label = "exact";
    parallel_for(static_cast<int>(grid.size()), [&](int i) {
        const double t = grid(i) * 2.0 * M_PI / p.omega;
        const SpinFieldState psi = propagate(d, psi0, t);
        s.values(i) = cfg.n_fock >= 0 ? std::norm(psi0.amplitudes.dot(psi.amplitudes))
                                      : spin_up_population(psi);
    });
    return s;
}

TimeSeries adiabatic_population(const RunConfig& cfg, double g_val,
                                const Eigen::VectorXd& grid) {
    const ModelParams p = make_params(cfg.omega_c, cfg.omega, g_val);
    const FockTruncation trunc(cfg.resolved_n_tr(g_val));
    TimeSeries s;
    s.times = grid;
    s.values.resize(grid.size());
    s.label = "adiabatic";
    parallel_for(static_cast<int>(grid.size()), [&](int i) {
        const double t = grid(i) * 2.0 * M_PI / p.omega;
        s.values(i) = cfg.n_fock >= 0
                          ? population_fock(cfg.n_fock, t, p)
                          : population_coherent_adiabatic(cfg.z, t, p, trunc);
    });
    return s;
}

TimeSeries analytic_population(const RunConfig& cfg, double g_val,
                               const Eigen::VectorXd& grid,
                               PhaseConvention conv = PhaseConvention::Resummed) {
    const ModelParams p = make_params(cfg.omega_c, cfg.omega, g_val);
    TimeSeries s;
    s.times = grid;
    s.values.resize(grid.size());
    s.label = "analytic";
    parallel_for(static_cast<int>(grid.size()), [&](int i) {
        const double t = grid(i) * 2.0 * M_PI / p.omega;
        s.values(i) = cfg.n_fock >= 0 ? population_fock(cfg.n_fock, t, p, SolverMode::Simplified)
                                      : population_analytic(cfg.z, t, p, conv);
    });
    return s;
}

double initial_leak(const RunConfig& cfg, double g_val) {
    const ModelParams p = make_params(cfg.omega_c, cfg.omega, g_val);
    const FockTruncation trunc(cfg.resolved_n_tr(g_val));
    if (cfg.initial == InitialState::Ghz)
        return coherent_vector(Complex(cfg.z, 0.0), trunc).truncated_mass;
    if (cfg.n_fock >= 0)
        return displaced_fock_vector(cfg.n_fock, 1.5, p, trunc).truncated_mass;
    const SpinFieldState psi = initial_all_excited_coherent(cfg.z, p, trunc);
    return 1.0 - psi.amplitudes.squaredNorm();
}

std::string plot_script(const std::string& title, const std::string& xlabel,
                        const std::string& ylabel,
                        const std::vector<std::pair<std::string, std::string>>& files) {
    std::string s = "set datafile separator ','\nset key autotitle columnhead\n";
    s += "set title '" + title + "'\nset xlabel '" + xlabel + "'\nset ylabel '" + ylabel + "'\n";
    s += "plot ";
    for (std::size_t i = 0; i < files.size(); ++i) {
        s += "'" + files[i].first + "' using 1:2 with lines title '" + files[i].second + "'";
        s += (i + 1 < files.size()) ? ", \\\n     " : "\n";
    }
    s += "pause -1\n";
    return s;
}

}  // namespace

TimeSeries population_series(const std::string& method, const RunConfig& cfg,
                             double g_val, const Eigen::VectorXd& grid) {
    if (method == "exact") return exact_population(cfg, g_val, grid);
    if (method == "adiabatic") return adiabatic_population(cfg, g_val, grid);
    if (method == "analytic") return analytic_population(cfg, g_val, grid);
    throw config_error("unknown method '" + method + "'");
}

TangleSeries tangle_series(const std::string& method, const RunConfig& cfg,
                           double g_val, const Eigen::VectorXd& grid) {
    const ModelParams p = make_params(cfg.omega_c, cfg.omega, g_val);
    const FockTruncation trunc(cfg.resolved_n_tr(g_val));
    const double nan = std::numeric_limits<double>::quiet_NaN();

    TangleSeries out;
    out.times = grid;
    out.tau_fq.resize(grid.size());
    out.tau_ab.resize(grid.size());

    if (method == "analytic") {
        parallel_for(static_cast<int>(grid.size()), [&](int i) {
            const double t = grid(i) * 2.0 * M_PI / p.omega;
            Complex s = revival_sum(t, 2, cfg.z, p);
            if (std::abs(s) > 1.0) s /= std::abs(s);   // closed forms assume |S| <= 1
            out.tau_fq(i) = tau_fq_analytic(s).value;
            out.tau_ab(i) = tau_ab_analytic(s).value;
        });
        return out;
    }

    out.initial_leak = coherent_vector(Complex(cfg.z, 0.0), trunc).truncated_mass;
    std::vector<int> failures(thread_count(), 0);
    const DisplacedTrace framed_trace(p, trunc);

    // tau_FQ reads the physical (lab) reduced state; the qubit-pair tangle
    // needs the family-patterned matrix and takes whichever frame sits closer
    // to the pattern (lab at early times, displaced once the conditioned
    // displacement dominates).
    auto eval_point = [&](int i, const SpinFieldState& psi, const char* source) {
        QubitDensity lab = reduced_qubit_density(psi, BasisTag::Jx, p, TraceFrame::Lab);
        lab.source = source;
        out.tau_fq(i) = tau_fq(lab).value;
        QubitDensity framed = framed_trace.reduce(psi, BasisTag::Jx);
        framed.source = source;
        const QubitDensity& family =
            family_pattern_violation(lab) <= family_pattern_violation(framed) ? lab : framed;
        try {
            out.tau_ab(i) = tau_ab_semianalytic(family).value;
        } catch (const std::domain_error&) {
            out.tau_ab(i) = nan;
            failures[i % failures.size()] += 1;
        }
    };

    if (method == "exact") {
        const SpectralDecomposition d = eigendecompose(full_hamiltonian(p, trunc));
        const SpinFieldState psi0 = initial_ghz_coherent(cfg.z, trunc);
        parallel_for(static_cast<int>(grid.size()), [&](int i) {
            eval_point(i, propagate(d, psi0, grid(i) * 2.0 * M_PI / p.omega), "exact");
        });
    } else if (method == "adiabatic") {
        const GhzBlockPropagator prop(cfg.z, p, trunc);
        parallel_for(static_cast<int>(grid.size()), [&](int i) {
            eval_point(i, prop.state_at(grid(i) * 2.0 * M_PI / p.omega), "adiabatic");
        });
    } else {
        throw config_error("unknown method '" + method + "'");
    }
    for (int f : failures) out.pattern_failures += f;
    return out;
}

// ------------------------------------------------------------------ commands

int cmd_population(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.initial != InitialState::AllExcited)
        throw config_error("population requires the all-excited initial state");
    const Eigen::VectorXd grid = plot_grid(cfg.t_max, cfg.points);
    ManifestBuilder manifest;
    manifest.set_config("omega", cfg.omega);
    manifest.set_config("g", cfg.g);
    manifest.set_config("z", cfg.z);
    manifest.set_config("n_fock", double(cfg.n_fock));
    manifest.set_config("initial", to_string(cfg.initial));
    manifest.set_config("t_max", cfg.t_max);
    manifest.set_config("points", double(cfg.points));
    manifest.set_config("n_tr", double(cfg.resolved_n_tr(cfg.g)));

    std::vector<std::pair<std::string, std::string>> plot_files;
    for (const auto& method : cfg.methods) {
        const TimeSeries s = population_series(method, cfg, cfg.g, grid);
        const std::string path =
            (fs::path(cfg.out_dir) / ("population_" + method + ".csv")).string();
        write_csv(path, {"omega_t_over_2pi", "P1"}, {s.times, s.values});
        manifest.add_output(path);
        plot_files.emplace_back("population_" + method + ".csv", method);
    }

    if (cfg.n_fock < 0) manifest.set_diagnostic("initial_leaked_mass", initial_leak(cfg, cfg.g));
    bool has_exact = false;
    for (const auto& m : cfg.methods) has_exact |= (m == "exact");
    if (has_exact) {
        // truncation convergence probe on a coarse subgrid
        const Eigen::VectorXd sub = plot_grid(cfg.t_max, 33);
        const TimeSeries a = exact_population(cfg, cfg.g, sub);
        const TimeSeries b = exact_population(cfg, cfg.g, sub, 2 * cfg.resolved_n_tr(cfg.g));
        manifest.set_diagnostic("doubling_delta", (a.values - b.values).cwiseAbs().maxCoeff());
    }
    if (cfg.emit_plots) {
        const std::string path = (fs::path(cfg.out_dir) / "population.gp").string();
        write_text_atomic(path, plot_script("qubit population", "omega t / 2pi", "P1",
                                            plot_files));
        manifest.add_output(path);
    }
    manifest.write(cfg.out_dir, "population");
    return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.initial != InitialState::AllExcited)
        throw config_error("spectrum requires the all-excited initial state");
    const Eigen::VectorXd grid = plot_grid(cfg.t_max, cfg.points);
    const Eigen::VectorXd nus = spectrum_grid();
    const ModelParams p = cfg.params();

    ManifestBuilder manifest;
    manifest.set_config("omega", cfg.omega);
    manifest.set_config("g", cfg.g);
    manifest.set_config("z", cfg.z);
    manifest.set_config("n_fock", double(cfg.n_fock));
    manifest.set_config("t_max", cfg.t_max);
    manifest.set_config("points", double(cfg.points));

    nlohmann::json peaks_doc;
    std::vector<std::pair<std::string, std::string>> plot_files;
    const std::string tag = cfg.n_fock >= 0 ? "_fock" + std::to_string(cfg.n_fock) : "";
    for (const auto& method : cfg.methods) {
        const TimeSeries s = population_series(method, cfg, cfg.g, grid);
        const Spectrum spec = fourier_transform(s, nus);
        const std::string path =
            (fs::path(cfg.out_dir) / ("spectrum_" + method + tag + ".csv")).string();
        write_csv(path, {"nu_over_omega", "magnitude"},
                  {spec.frequencies, spec.amplitudes.cwiseAbs()});
        manifest.add_output(path);
        plot_files.emplace_back("spectrum_" + method + tag + ".csv", method);

        nlohmann::json plist = nlohmann::json::array();
        for (const auto& pk : find_peaks(spec, 8))
            plist.push_back({{"nu_over_omega", pk.frequency}, {"magnitude", pk.magnitude}});
        peaks_doc[method]["top_peaks"] = plist;
        if (cfg.n_fock < 0) {
            const double wstar = fundamental_frequency(cfg.z, p) / p.omega;
            for (int m = 1; m <= 3; ++m) {
                const Peak bp = band_peak(spec, m * wstar, 0.25);
                peaks_doc[method]["harmonic_bands"].push_back(
                    {{"harmonic", m},
                     {"band_center", m * wstar},
                     {"nu_over_omega", bp.frequency},
                     {"magnitude", bp.magnitude}});
            }
        }
    }
    const std::string peaks_path = (fs::path(cfg.out_dir) / ("peaks" + tag + ".json")).string();
    write_text_atomic(peaks_path, peaks_doc.dump(2) + "\n");
    manifest.add_output(peaks_path);
    if (cfg.emit_plots) {
        const std::string path = (fs::path(cfg.out_dir) / "spectrum.gp").string();
        write_text_atomic(path, plot_script("population spectrum", "nu / omega", "|P1(nu)|",
                                            plot_files));
        manifest.add_output(path);
    }
    manifest.write(cfg.out_dir, "spectrum");
    return 0;
}

int cmd_tangle(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.initial != InitialState::Ghz)
        throw config_error("tangle requires the ghz initial state");
    const Eigen::VectorXd grid = plot_grid(cfg.t_max, cfg.points);

    std::vector<double> gs = cfg.g_sweep;
    if (gs.empty()) gs.push_back(cfg.g);

    ManifestBuilder manifest;
    manifest.set_config("omega", cfg.omega);
    manifest.set_config("z", cfg.z);
    manifest.set_config("initial", to_string(cfg.initial));
    manifest.set_config("t_max", cfg.t_max);
    manifest.set_config("points", double(cfg.points));

    std::vector<std::pair<std::string, std::string>> plot_files;
    for (double g_val : gs) {
        const std::string gtag = gs.size() > 1 || !cfg.g_sweep.empty()
                                     ? "_g" + format_g(g_val) : "";
        for (const auto& method : cfg.methods) {
            const TangleSeries ts = tangle_series(method, cfg, g_val, grid);
            const std::string fq_path =
                (fs::path(cfg.out_dir) / ("tangle_fq_" + method + gtag + ".csv")).string();
            const std::string ab_path =
                (fs::path(cfg.out_dir) / ("tangle_ab_" + method + gtag + ".csv")).string();
            write_csv(fq_path, {"omega_t_over_2pi", "tau_fq"}, {ts.times, ts.tau_fq});
            write_csv(ab_path, {"omega_t_over_2pi", "tau_ab"}, {ts.times, ts.tau_ab});
            manifest.add_output(fq_path);
            manifest.add_output(ab_path);
            plot_files.emplace_back("tangle_fq_" + method + gtag + ".csv",
                                    method + gtag + " FQ");
            if (method != "analytic") {
                manifest.set_diagnostic("pattern_failures_" + method + gtag,
                                        double(ts.pattern_failures));
                manifest.set_diagnostic("initial_leaked_mass" + gtag, ts.initial_leak);
            }
        }
    }
    if (cfg.emit_plots) {
        const std::string path = (fs::path(cfg.out_dir) / "tangle.gp").string();
        write_text_atomic(path, plot_script("I-tangle", "omega t / 2pi", "tau", plot_files));
        manifest.add_output(path);
    }
    manifest.write(cfg.out_dir, "tangle");
    return 0;
}

}  // namespace dicke3::run
