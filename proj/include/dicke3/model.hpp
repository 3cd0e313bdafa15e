// model.hpp — Model parameters and basic state-space descriptors

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace dicke3 {

using Complex = std::complex<double>;

// Which spin eigenbasis a 4-component object is expressed in.
// Ordering is m = 3/2, 1/2, -1/2, -3/2 (descending) for both tags.
enum class BasisTag { Jz, Jx };

// Physical constants of the three-qubit Dicke model, in units of the
// field frequency (omega_c = 1 by default). alpha = 2 g / omega_c is the
// dimensionless displacement of the oscillator equilibrium per unit m.
struct ModelParams {
    double omega_c{1.0};   // field frequency
    double omega{0.0};     // qubit splitting
    double g{0.0};         // qubit-field coupling
    double alpha{0.0};     // 2 g / omega_c

    // advisory: the block truncation is trustworthy for omega << omega_c
    bool adiabatic_regime() const {
        return omega <= 0.25 * omega_c && g <= 0.1 * omega_c;
    }
};

inline ModelParams make_params(double omega_c, double omega, double g) {
    if (!std::isfinite(omega_c) || !std::isfinite(omega) || !std::isfinite(g))
        throw std::invalid_argument("make_params: non-finite input");
    if (omega_c <= 0.0)
        throw std::invalid_argument("make_params: omega_c must be > 0");
    if (omega < 0.0 || g < 0.0)
        throw std::invalid_argument("make_params: omega and g must be >= 0");
    ModelParams p;
    p.omega_c = omega_c;
    p.omega = omega;
    p.g = g;
    p.alpha = 2.0 * g / omega_c;
    return p;
}

// Inclusive maximum Fock index of a truncated oscillator space.
struct FockTruncation {
    int n_tr{1};

    explicit FockTruncation(int n) : n_tr(n) {
        if (n < 1) throw std::invalid_argument("FockTruncation: n_tr must be >= 1");
    }
    int dim() const { return n_tr + 1; }
};

// Default truncation rule: Poisson tail of |z| below 1e-10 plus margin for
// the displaced-basis support.
inline FockTruncation default_truncation(double zmag, const ModelParams& p) {
    const double n = zmag * zmag + 8.0 * zmag + 20.0 + 9.0 * p.alpha * p.alpha;
    return FockTruncation(static_cast<int>(std::ceil(n)));
}

}  // namespace dicke3
