// revival.hpp — Closed-form collapse/revival analytics: individual revival
// terms, their harmonic sums, the analytic population, revival times and
// widths, and the fundamental spectral frequency.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dicke3/model.hpp"

namespace dicke3 {

// The resummation constant of the printed formula drops the quadratic-term
// mean phase mu alpha^4 |z|^2 (|z|^2 - 1) / 4, which anti-phases odd-k
// revivals; Resummed restores it, Verbatim evaluates the formula as printed.
enum class PhaseConvention { Resummed, Verbatim };

// Dimensionless ingredients shared by the revival formulas.
struct RevivalParams {
    double f{0.0};       // |alpha z|^2
    double alpha{0.0};
    double zmag{0.0};
    double omega{0.0};

    RevivalParams(double z, const ModelParams& p)
        : f(p.alpha * p.alpha * z * z), alpha(p.alpha), zmag(std::abs(z)), omega(p.omega) {}

    double mu(double t, int mharm) const {
        return mharm * omega * t * std::exp(-alpha * alpha / 2.0);
    }
    double h_k(int k) const {
        return std::pow(1.0 + M_PI * M_PI * k * k * f * f, -0.25);
    }
    double mu_k(int k) const { return M_PI * k * (f + 2.0) / (alpha * alpha); }
    double delta_mu_k(int k) const {
        return std::sqrt(1.0 + M_PI * M_PI * k * k * f * f) / (zmag * alpha * alpha);
    }
};

// S_k(t, m omega): Gaussian envelope centered on the k-th revival, with the
// harmonic substitution mu -> m omega t e^{-alpha^2/2}.
inline Complex revival_term(int k, double t, int mharm, double z, const ModelParams& p,
                            PhaseConvention conv = PhaseConvention::Resummed) {
    if (k < 0) throw std::invalid_argument("revival_term: k must be >= 0");
    if (mharm < 1 || mharm > 3) throw std::invalid_argument("revival_term: mharm in {1,2,3}");
    const RevivalParams r(z, p);
    const double mu = r.mu(t, mharm);
    const double hk = r.h_k(k);
    const double phi_re =
        -0.5 * hk * hk * hk * hk * (mu - r.mu_k(k)) * (mu - r.mu_k(k)) * r.f * r.alpha * r.alpha;
    double phi_im = 0.5 * std::atan(M_PI * k * r.f) + mu * (1.0 - r.f) +
                    2.0 * M_PI * k * r.zmag * r.zmag;
    if (conv == PhaseConvention::Resummed) {
        const double n2 = r.zmag * r.zmag;
        phi_im += mu * std::pow(r.alpha, 4) * n2 * (n2 - 1.0) / 4.0;
    }
    return hk * std::exp(phi_re) * std::exp(Complex(0.0, phi_im));
}

// Truncated sum S(t, m omega); k_max < 0 selects the automatic cutoff
// (three envelope spacings beyond the current mu).
inline Complex revival_sum(double t, int mharm, double z, const ModelParams& p,
                           int k_max = -1, PhaseConvention conv = PhaseConvention::Resummed) {
    const RevivalParams r(z, p);
    if (k_max < 0)
        k_max = static_cast<int>(std::ceil(r.mu(t, mharm) * r.alpha * r.alpha /
                                           (M_PI * (r.f + 2.0)))) + 3;
    Complex s(0.0, 0.0);
    for (int k = 0; k <= k_max; ++k) s += revival_term(k, t, mharm, z, p, conv);
    return s;
}

// P1(z,t) = (1/32) Re[10 + 15 S(t,w) + 6 S(t,2w) + S(t,3w)], clipped to [0,1].
inline double population_analytic(double z, double t, const ModelParams& p,
                                  PhaseConvention conv = PhaseConvention::Resummed,
                                  bool* clipped = nullptr) {
    const double raw = (10.0 + 15.0 * revival_sum(t, 1, z, p, -1, conv).real() +
                        6.0 * revival_sum(t, 2, z, p, -1, conv).real() +
                        revival_sum(t, 3, z, p, -1, conv).real()) / 32.0;
    if (clipped) *clipped = raw < 0.0 || raw > 1.0;
    return std::min(1.0, std::max(0.0, raw));
}

// Center and width (in natural time) of the k-th revival of harmonic mharm.
struct RevivalWindow {
    double t_center{0.0};
    double width{0.0};
};

inline RevivalWindow revival_schedule(int k, int mharm, double z, const ModelParams& p) {
    if (k < 0) throw std::invalid_argument("revival_schedule: k must be >= 0");
    if (mharm < 1 || mharm > 3) throw std::invalid_argument("revival_schedule: mharm in {1,2,3}");
    const RevivalParams r(z, p);
    const double scale = std::exp(r.alpha * r.alpha / 2.0) / (mharm * p.omega);
    return {r.mu_k(k) * scale, r.delta_mu_k(k) * scale};
}

// omega* = omega e^{-alpha^2/2} (1 - |z|^2 alpha^2)
inline double fundamental_frequency(double z, const ModelParams& p) {
    return p.omega * std::exp(-p.alpha * p.alpha / 2.0) *
           (1.0 - z * z * p.alpha * p.alpha);
}

}  // namespace dicke3
