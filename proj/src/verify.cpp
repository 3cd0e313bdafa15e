#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "dicke3/adiabatic.hpp"
#include "dicke3/entanglement.hpp"
#include "dicke3/exact.hpp"
#include "dicke3/revival.hpp"
#include "output.hpp"
#include "pipeline.hpp"
#include "run_config.hpp"

namespace dicke3::run {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

struct Check {
    bool ok{true};
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) ok = false;
        if (!detail.empty()) detail += "; ";
        detail += what + (cond ? " ok" : " FAIL");
    }
};

RunConfig default_run() {
    RunConfig cfg;
    cfg.omega = 0.15;
    cfg.g = 0.08;
    cfg.z = 3.0;
    cfg.n_tr = 80;
    return cfg;
}

// -------------------------------------------------------------- criterion 1

CriterionResult crit1_omega_oracle() {
    Check c;
    double worst = 0.0;
    for (double alpha : {0.04, 0.16, 0.5}) {
        const ModelParams p = make_params(1.0, 0.15, alpha / 2.0);
        for (int n = 0; n <= 20; ++n) {
            const double a = omega_n(n, p);
            const double b = omega_n_sum(n, p);
            worst = std::max(worst, std::abs(a - b) / std::abs(b));
        }
    }
    c.require(worst <= 1e-10, "recurrence vs factorial sum rel err " + fmt(worst) + " <= 1e-10");
    return {1, "omega_n oracle", c.ok, c.detail, 0.0};
}

// -------------------------------------------------------------- criterion 2

CriterionResult crit2_block_identity() {
    const ModelParams p = make_params(1.0, 0.15, 0.08);
    Check c;
    double worst_union = 0.0, worst_closed = 0.0;
    for (int n = 0; n <= 30; ++n) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> e4(block_hamiltonian(n, p).matrix);
        std::vector<double> from2;
        for (int kappa : {+1, -1}) {
            const ParityBlock b = parity_block(n, kappa, p);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> e2(b.matrix);
            from2.push_back(e2.eigenvalues()(0));
            from2.push_back(e2.eigenvalues()(1));
            const auto pair = adiabatic_eigensystem(n, kappa, p);
            for (const auto& ad : pair) {
                const double closest = std::min(std::abs(ad.energy - e2.eigenvalues()(0)),
                                                std::abs(ad.energy - e2.eigenvalues()(1)));
                worst_closed = std::max(worst_closed, closest);
            }
        }
        std::sort(from2.begin(), from2.end());
        for (int i = 0; i < 4; ++i)
            worst_union = std::max(worst_union, std::abs(e4.eigenvalues()(i) - from2[i]));
    }
    c.require(worst_union <= 1e-12, "spec(H_n) vs parity union " + fmt(worst_union));
    c.require(worst_closed <= 1e-12, "closed-form energies vs 2x2 eigensolve " + fmt(worst_closed));
    return {2, "block identity", c.ok, c.detail, 0.0};
}

// -------------------------------------------------------------- criterion 3

CriterionResult crit3_equilibrium() {
    const ModelParams p = make_params(1.0, 0.15, 0.08);
    Check c;
    const int n = 9;
    const double period = M_PI / std::abs(omega_n(n, p));
    const int npts = 4096;                 // periodic trapezoid: spectrally accurate
    double acc = 0.0;
    for (int i = 0; i < npts; ++i)
        acc += population_fock(n, period * i / npts, p, SolverMode::Simplified);
    const double avg = acc / npts;
    c.require(std::abs(avg - 10.0 / 32.0) <= 1e-6,
              "quadrature mean " + fmt(avg) + " vs 10/32");
    return {3, "equilibrium value 10/32", c.ok, c.detail, 0.0};
}

// -------------------------------------------------------------- criterion 4

CriterionResult crit4_fundamental() {
    RunConfig cfg = default_run();
    const ModelParams p = cfg.params();
    Check c;
    const double wstar = fundamental_frequency(cfg.z, p) / p.omega;
    c.require(std::abs(wstar - 0.76) <= 0.005, "omega*/omega = " + fmt(wstar) + " vs 0.76");

    // spectrum of the as-printed analytic signal over a window long enough to
    // sharpen all three harmonic revivals
    const Eigen::VectorXd grid = plot_grid(50.0, 4096);
    TimeSeries s;
    s.times = grid;
    s.values.resize(grid.size());
    for (int i = 0; i < grid.size(); ++i)
        s.values(i) = population_analytic(cfg.z, grid(i) * 2.0 * M_PI / p.omega, p,
                                          PhaseConvention::Verbatim);
    const Spectrum spec = fourier_transform(s, spectrum_grid());
    double mag_prev = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    for (int m = 1; m <= 3; ++m) {
        const Peak pk = band_peak(spec, m * wstar, 0.25);
        c.require(std::abs(pk.frequency - m * wstar) <= 0.03,
                  "harmonic " + std::to_string(m) + " at " + fmt(pk.frequency) + " vs " +
                      fmt(m * wstar));
        decreasing = decreasing && pk.magnitude < mag_prev;
        mag_prev = pk.magnitude;
    }
    c.require(decreasing, "harmonic magnitudes strictly decreasing");
    return {4, "fundamental frequency and harmonics", c.ok, c.detail, 0.0};
}

// -------------------------------------------------------------- criterion 5

CriterionResult crit5_population() {
    RunConfig cfg = default_run();
    const ModelParams p = cfg.params();
    Check c;

    const Eigen::VectorXd grid = plot_grid(50.0, 2048);
    const TimeSeries ex = population_series("exact", cfg, cfg.g, grid);
    const TimeSeries ana = population_series("analytic", cfg, cfg.g, grid);
    const SeriesMetrics m = compare_series(ex, ana);
    c.require(m.rms <= 0.05, "RMS(exact, analytic) over [0,50] = " + fmt(m.rms) + " <= 0.05");

    // first revival cluster of the fundamental: intensity-weighted centroid
    const RevivalWindow rw = revival_schedule(1, 1, cfg.z, p);
    const double t1 = rw.t_center * p.omega / (2.0 * M_PI);
    const double w1 = rw.width * p.omega / (2.0 * M_PI);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        if (std::abs(grid(i) - t1) > 3.0 * w1) continue;
        const double dev = ex.values(i) - 10.0 / 32.0;
        num += grid(i) * dev * dev;
        den += dev * dev;
    }
    const double centroid = num / den;
    c.require(std::abs(centroid - t1) <= 0.05 * t1,
              "revival center " + fmt(centroid) + " vs " + fmt(t1) + " (5%)");

    // breakup: sub-peaks in the fundamental band of the short-window spectrum
    const Eigen::VectorXd grid20 = plot_grid(20.0, 2048);
    const TimeSeries ex20 = population_series("exact", cfg, cfg.g, grid20);
    const TimeSeries ana20 = population_series("analytic", cfg, cfg.g, grid20);
    const double wstar = fundamental_frequency(cfg.z, p) / p.omega;
    const int n_ex = count_band_peaks(fourier_transform(ex20, spectrum_grid()), wstar, 0.25, 0.2);
    const int n_an = count_band_peaks(fourier_transform(ana20, spectrum_grid()), wstar, 0.25, 0.2);
    c.require(n_ex >= 2 && n_an == 1, "fundamental sub-peaks exact " + std::to_string(n_ex) +
                                          " >= 2, analytic " + std::to_string(n_an) + " == 1");
    return {5, "population cross-validation", c.ok, c.detail, 0.0};
}

// -------------------------------------------------------------- criterion 6

CriterionResult crit6_entanglement_identities() {
    Check c;
    double worst_fq = 0.0, worst_ab = 0.0, worst_lam = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const Complex s(i / 100.0, 0.0);
        const QubitDensity rho = rho_q_analytic(s);
        worst_fq = std::max(worst_fq, std::abs(tau_fq(rho).value - tau_fq_analytic(s).value));
        worst_ab = std::max(worst_ab,
                            std::abs(tau_ab_semianalytic(rho).value - tau_ab_analytic(s).value));
        worst_lam = std::max(worst_lam,
                             std::abs(m_matrix(s).lambda_min - lambda_min_closed_form(s)));
    }
    c.require(worst_fq <= 1e-10, "tau_FQ identity " + fmt(worst_fq));
    c.require(worst_ab <= 1e-10, "tau_AB route identity " + fmt(worst_ab));
    c.require(worst_lam <= 1e-12, "lambda_min closed form " + fmt(worst_lam));
    return {6, "entanglement identities", c.ok, c.detail, 0.0};
}

// -------------------------------------------------------------- criterion 7

CriterionResult crit7_no_sudden_death() {
    Check c;
    // golden-section minimization of the closed form over |S| in [0,1]
    const auto f = [](double s) { return tau_ab_analytic(Complex(s, 0.0)).value; };
    double a = 0.0, b = 1.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    for (int it = 0; it < 200; ++it) {
        if (f(x1) < f(x2)) b = x2, x2 = x1, x1 = b - gr * (b - a);
        else a = x1, x1 = x2, x2 = a + gr * (b - a);
    }
    const double argmin = 0.5 * (a + b);
    const double minval = f(argmin);
    c.require(std::abs(minval - 5.0 / 8.0) <= 1e-9 && argmin <= 1e-6,
              "min of closed form = " + fmt(minval) + " at |S| = " + fmt(argmin));

    RunConfig cfg = default_run();
    cfg.initial = InitialState::Ghz;

    // bound along trajectories: analytic series, and semianalytic where the
    // reduced state stays inside the family pattern
    const Eigen::VectorXd grid = plot_grid(30.0, 301);
    double min_ana = 2.0, min_semi = 2.0;
    int valid = 0;
    for (double g_val : {0.02, 0.08}) {
        const TangleSeries ana = tangle_series("analytic", cfg, g_val, grid);
        const TangleSeries ex = tangle_series("exact", cfg, g_val, grid);
        if (g_val == 0.08) {
            c.require(ex.tau_fq(0) <= 1e-6, "tau_FQ(0) = " + fmt(ex.tau_fq(0)));
            c.require(std::abs(ex.tau_ab(0) - 1.0) <= 1e-6, "tau_AB(0) = " + fmt(ex.tau_ab(0)));
        }
        for (int i = 0; i < grid.size(); ++i) {
            min_ana = std::min(min_ana, ana.tau_ab(i));
            if (!std::isnan(ex.tau_ab(i))) {
                min_semi = std::min(min_semi, ex.tau_ab(i));
                ++valid;
            }
        }
    }
    c.require(min_ana >= 5.0 / 8.0 - 1e-9, "analytic tau_AB min " + fmt(min_ana) + " >= 5/8");
    c.require(min_semi >= 5.0 / 8.0 - 1e-9, "semianalytic tau_AB min " + fmt(min_semi) +
                                                " >= 5/8 (" + std::to_string(valid) +
                                                " in-family points)");
    return {7, "no entanglement sudden death", c.ok, c.detail, 0.0};
}

// -------------------------------------------------------------- criterion 8

CriterionResult crit8_tangle_regime() {
    Check c;
    RunConfig cfg = default_run();
    cfg.initial = InitialState::Ghz;

    // g = 0.02: exact tau_FQ tracks the closed form
    const Eigen::VectorXd grid = plot_grid(30.0, 512);
    const TangleSeries ex02 = tangle_series("exact", cfg, 0.02, grid);
    const ModelParams p02 = make_params(1.0, cfg.omega, 0.02);
    double acc = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        const double t = grid(i) * 2.0 * M_PI / cfg.omega;
        const double ana = tau_fq_analytic(revival_sum(t, 2, cfg.z, p02)).value;
        acc += (ex02.tau_fq(i) - ana) * (ex02.tau_fq(i) - ana);
    }
    const double rms = std::sqrt(acc / grid.size());
    c.require(rms <= 0.1, "RMS(exact, closed form) at g=0.02 over [0,30] = " + fmt(rms) + " <= 0.1");

    // oscillation period: global tau_FQ minimum after the initial rise
    const Eigen::VectorXd wide = plot_grid(400.0, 2048);
    auto first_min = [&](double g_val) {
        const TangleSeries ts = tangle_series("exact", cfg, g_val, wide);
        int i0 = 0;
        while (i0 < ts.tau_fq.size() && ts.tau_fq(i0) < 0.55) ++i0;
        int imin = i0;
        for (int i = i0; i < ts.tau_fq.size(); ++i)
            if (ts.tau_fq(i) < ts.tau_fq(imin)) imin = i;
        return wide(imin);
    };
    const double t008 = first_min(0.08), t002 = first_min(0.02);
    c.require(t008 < t002, "tau_FQ dip at g=0.08 (" + fmt(t008) + ") before g=0.02 (" +
                               fmt(t002) + ")");
    return {8, "tangle regime check", c.ok, c.detail, 0.0};
}

// -------------------------------------------------------------- criterion 9

CriterionResult crit9_conservation() {
    Check c;
    RunConfig cfg = default_run();
    const ModelParams p = cfg.params();
    const FockTruncation trunc(cfg.n_tr);
    const FullHamiltonian h = full_hamiltonian(p, trunc);
    const SpectralDecomposition d = eigendecompose(h);
    const Eigen::MatrixXd pi = parity_operator(trunc);
    const SpinFieldState psi0 = initial_ghz_coherent(cfg.z, trunc);

    const double e0 = psi0.amplitudes.dot(apply_real(h.matrix, psi0.amplitudes)).real();
    const double pi0 = psi0.amplitudes.dot(apply_real(pi, psi0.amplitudes)).real();
    double worst_norm = 0.0, worst_energy = 0.0, worst_parity = 0.0;
    double worst_herm = 0.0, worst_trace = 0.0, worst_psd = 0.0;
    for (int i = 0; i <= 32; ++i) {
        const double t = (50.0 * i / 32.0) * 2.0 * M_PI / p.omega;
        const SpinFieldState psi = propagate(d, psi0, t);
        worst_norm = std::max(worst_norm, std::abs(psi.amplitudes.norm() - 1.0));
        worst_energy = std::max(
            worst_energy,
            std::abs(psi.amplitudes.dot(apply_real(h.matrix, psi.amplitudes)).real() - e0));
        worst_parity = std::max(
            worst_parity,
            std::abs(psi.amplitudes.dot(apply_real(pi, psi.amplitudes)).real() - pi0));
        const QubitDensity rho = reduced_qubit_density(psi, BasisTag::Jx, p);
        worst_herm = std::max(worst_herm,
                              (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff());
        worst_trace = std::max(worst_trace, std::abs(rho.trace() - 1.0));
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho.matrix);
        worst_psd = std::max(worst_psd, std::max(0.0, -es.eigenvalues().minCoeff()));
    }
    c.require(worst_norm <= 1e-8, "norm drift " + fmt(worst_norm));
    c.require(worst_energy <= 1e-8 * std::max(1.0, std::abs(e0)), "energy drift " + fmt(worst_energy));
    c.require(worst_parity <= 1e-8, "parity drift " + fmt(worst_parity));
    c.require(worst_herm <= 1e-12, "reduced density hermiticity " + fmt(worst_herm));
    c.require(worst_trace <= 1e-12, "reduced density trace " + fmt(worst_trace));
    c.require(worst_psd <= 1e-10, "reduced density PSD defect " + fmt(worst_psd));

    // truncation convergence: doubling n_tr
    const Eigen::VectorXd sub = plot_grid(50.0, 33);
    const TimeSeries a = population_series("exact", cfg, cfg.g, sub);
    RunConfig cfg2 = cfg;
    cfg2.n_tr = 2 * cfg.n_tr;
    const TimeSeries b = population_series("exact", cfg2, cfg2.g, sub);
    const double dbl = (a.values - b.values).cwiseAbs().maxCoeff();
    c.require(dbl <= 1e-6, "doubling n_tr delta " + fmt(dbl));

    RunConfig cfg_t = cfg;
    cfg_t.initial = InitialState::Ghz;
    const TangleSeries ta = tangle_series("exact", cfg_t, cfg.g, sub);
    RunConfig cfg_t2 = cfg_t;
    cfg_t2.n_tr = 2 * cfg.n_tr;
    const TangleSeries tb = tangle_series("exact", cfg_t2, cfg.g, sub);
    const double dbl_fq = (ta.tau_fq - tb.tau_fq).cwiseAbs().maxCoeff();
    c.require(dbl_fq <= 1e-6, "doubling n_tr tau_FQ delta " + fmt(dbl_fq));
    return {9, "conservation suite", c.ok, c.detail, 0.0};
}

}  // namespace

std::vector<CriterionResult> run_criteria() {
    std::vector<std::function<CriterionResult()>> criteria = {
        crit1_omega_oracle, crit2_block_identity, crit3_equilibrium,
        crit4_fundamental,  crit5_population,     crit6_entanglement_identities,
        crit7_no_sudden_death, crit8_tangle_regime, crit9_conservation,
    };
    std::vector<CriterionResult> results;
    for (auto& fn : criteria) {
        const auto t0 = Clock::now();
        CriterionResult r = fn();
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("[%s] criterion %d: %-34s (%.2fs)  %s\n", r.pass ? "PASS" : "FAIL",
                    r.index, r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
        results.push_back(std::move(r));
    }
    return results;
}

int cmd_verify(bool json_output, const std::string& out_dir) {
    const auto t0 = Clock::now();
    const auto results = run_criteria();
    const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    std::printf("%s: %zu criteria in %.1fs\n", all ? "ALL PASS" : "FAILURES PRESENT",
                results.size(), elapsed);

    if (json_output) {
        nlohmann::json doc;
        doc["all_pass"] = all;
        doc["elapsed_seconds"] = elapsed;
        for (const auto& r : results)
            doc["criteria"].push_back({{"index", r.index},
                                       {"name", r.name},
                                       {"pass", r.pass},
                                       {"detail", r.detail},
                                       {"seconds", r.seconds}});
        write_text_atomic((std::filesystem::path(out_dir) / "verify_report.json").string(),
                          doc.dump(2) + "\n");
    }
    return all ? 0 : 1;
}

}  // namespace dicke3::run
