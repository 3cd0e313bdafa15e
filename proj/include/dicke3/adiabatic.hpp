// adiabatic.hpp — Block-level eigensolutions of the displaced-basis
// Hamiltonian, the closed-form qubit populations they imply, and the
// block-diagonal propagator for GHZ (x) coherent initial states.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dicke3/fock.hpp"
#include "dicke3/hamiltonian.hpp"
#include "dicke3/model.hpp"
#include "dicke3/states.hpp"

namespace dicke3 {

// ExactInBlock solves each 2x2 parity block exactly; Simplified drops the
// 4 g^2 / omega_c corner shift (valid for |Omega_n| >> 4 g^2 / omega_c).
enum class SolverMode { ExactInBlock, Simplified };

// How marginal the Simplified mode is at these parameters (>> 1 is safe).
inline double simplified_validity_ratio(int n, const ModelParams& p) {
    return std::abs(omega_n(n, p)) / (4.0 * p.g * p.g / p.omega_c);
}

struct AdiabaticEigenpair {
    int n{0};
    int kappa{+1};
    int branch{+1};            // the +/- of the 2x2 eigenvalue pair
    double energy{0.0};
    Eigen::Vector4d state;     // normalized, components ordered m = 3/2..-3/2
    double theta{0.0};
    double c{0.0};             // mixing coefficient (may overflow near crossings)
    double d{0.0};             // normalizer 1/sqrt(2c^2+2)
};

// Both eigenpairs of the (n, kappa) parity block.
inline std::array<AdiabaticEigenpair, 2> adiabatic_eigensystem(
    int n, int kappa, const ModelParams& p, SolverMode mode = SolverMode::ExactInBlock) {
    if (kappa != 1 && kappa != -1)
        throw std::invalid_argument("adiabatic_eigensystem: kappa must be +1 or -1");
    const int xi = (n % 2 == 0) ? kappa : -kappa;
    const double on = omega_n(n, p);
    const double gsq = p.g * p.g / p.omega_c;
    std::array<AdiabaticEigenpair, 2> out;
    for (int ib = 0; ib < 2; ++ib) {
        const int branch = ib == 0 ? +1 : -1;
        AdiabaticEigenpair e;
        e.n = n;
        e.kappa = kappa;
        e.branch = branch;
        if (mode == SolverMode::Simplified) {
            e.energy = n * p.omega_c + (xi - 2.0 * branch) * on;
            e.theta = 2.0 * std::abs(on);
            e.c = std::sqrt(3.0) / (xi - 2.0 * branch);
            e.d = std::sqrt((2.0 - branch * xi) / 8.0);
            e.state << e.c, 1.0, double(xi), xi * e.c;
            e.state *= e.d;
        } else {
            e.theta = std::hypot(xi * on + 4.0 * gsq, std::sqrt(3.0) * on);
            e.energy = n * p.omega_c + xi * on - 5.0 * gsq + branch * e.theta;
            // stable eigenvector: pick the larger-norm two-component form, so
            // the removable singularity of c at Omega_n ~ 0 never enters
            const double e32 = block_diagonal_energy(n, 1.5, p);
            const double e12 = block_diagonal_energy(n, 0.5, p) + 2.0 * xi * on;
            Eigen::Vector2d va(std::sqrt(3.0) * on, e.energy - e32);
            Eigen::Vector2d vb(e.energy - e12, std::sqrt(3.0) * on);
            Eigen::Vector2d v2 = va.norm() >= vb.norm() ? va : vb;
            v2.normalize();
            if (v2(1) < 0.0 || (v2(1) == 0.0 && v2(0) < 0.0)) v2 = -v2;
            e.state << v2(0), v2(1), xi * v2(1), xi * v2(0);
            e.state /= std::sqrt(2.0);
            e.d = v2(1) / std::sqrt(2.0);
            e.c = v2(1) != 0.0 ? v2(0) / v2(1)
                               : std::numeric_limits<double>::infinity();
        }
        out[ib] = e;
    }
    return out;
}

// All four eigenpairs of block n (kappa = +1 then -1, branch + then -).
inline std::array<AdiabaticEigenpair, 4> block_eigensystem(
    int n, const ModelParams& p, SolverMode mode = SolverMode::ExactInBlock) {
    const auto a = adiabatic_eigensystem(n, +1, p, mode);
    const auto b = adiabatic_eigensystem(n, -1, p, mode);
    return {a[0], a[1], b[0], b[1]};
}

// ------------------------------------------------------------- populations

// P1(n, t): probability that the qubits remain in |3/2,3/2> when the field
// starts in the matching displaced Fock state. Simplified mode is the
// three-cosine closed form; ExactInBlock expands over the block eigenpairs.
inline double population_fock(int n, double t, const ModelParams& p,
                              SolverMode mode = SolverMode::ExactInBlock) {
    if (t < 0.0) throw std::invalid_argument("population_fock: t must be >= 0");
    if (mode == SolverMode::Simplified) {
        const double on = omega_n(n, p);
        return (10.0 + 15.0 * std::cos(2.0 * on * t) + 6.0 * std::cos(4.0 * on * t) +
                std::cos(6.0 * on * t)) / 32.0;
    }
    Complex amp(0.0, 0.0);
    double wsum = 0.0;
    for (const auto& e : block_eigensystem(n, p, mode)) {
        const double w = e.state(0) * e.state(0);
        wsum += w;
        amp += w * std::exp(Complex(0.0, -e.energy * t));
    }
    if (std::abs(wsum - 1.0) > 1e-10)
        throw std::runtime_error("population_fock: expansion weights do not sum to 1");
    return std::norm(amp);
}

// Poisson-weighted sum over displaced Fock populations (field initially the
// displaced coherent state of magnitude z).
inline double population_coherent_adiabatic(double z, double t, const ModelParams& p,
                                            const FockTruncation& trunc,
                                            SolverMode mode = SolverMode::ExactInBlock,
                                            double max_tail = 1e-8) {
    double mass = 0.0, value = 0.0;
    for (int n = 0; n <= trunc.n_tr; ++n) {
        const double pn = poisson_weight(n, z);
        if (pn < 1e-18 && n > z * z) break;
        mass += pn;
        if (pn >= 1e-18) value += pn * population_fock(n, t, p, mode);
    }
    if (1.0 - mass > max_tail)
        throw std::runtime_error("population_coherent_adiabatic: Poisson tail exceeds tolerance");
    return value;
}

// --------------------------------------------- GHZ expansion and propagation

// One term of the block expansion of the evolved GHZ (x) coherent state under
// the |n> ~ |n>_{A_m} identification: coefficient sqrt(p(n)/2) (1+xi) d c.
struct GhzAmplitude {
    int n{0};
    int kappa{+1};
    int branch{+1};
    double coeff{0.0};
    double energy{0.0};
};

inline std::vector<GhzAmplitude> ghz_amplitudes_adiabatic(
    double z, const ModelParams& p, const FockTruncation& trunc,
    SolverMode mode = SolverMode::ExactInBlock) {
    std::vector<GhzAmplitude> out;
    out.reserve(4 * (trunc.n_tr + 1));
    for (int n = 0; n <= trunc.n_tr; ++n) {
        const double pn = poisson_weight(n, z);
        for (const auto& e : block_eigensystem(n, p, mode)) {
            const int xi = (n % 2 == 0) ? e.kappa : -e.kappa;
            GhzAmplitude a;
            a.n = n;
            a.kappa = e.kappa;
            a.branch = e.branch;
            a.energy = e.energy;
            a.coeff = std::sqrt(pn / 2.0) * (1.0 + xi) * e.state(0);
            out.push_back(a);
        }
    }
    return out;
}

// Reconstruction of the amplitude list at time t in the bare-Fock
// identification (|n>_{A_m} read as |n>), as used by the closed-form chain.
inline SpinFieldState ghz_state_bare(const std::vector<GhzAmplitude>& amps, double t,
                                     const ModelParams& p, const FockTruncation& trunc,
                                     SolverMode mode = SolverMode::ExactInBlock) {
    SpinFieldState psi;
    psi.n_tr = trunc.n_tr;
    psi.amplitudes = Eigen::VectorXcd::Zero(4 * trunc.dim());
    for (const auto& a : amps) {
        if (a.coeff == 0.0) continue;
        const auto es = adiabatic_eigensystem(a.n, a.kappa, p, mode);
        const auto& e = es[a.branch > 0 ? 0 : 1];
        const Complex phase = a.coeff * std::exp(Complex(0.0, -a.energy * t));
        for (int s = 0; s < 4; ++s) psi.at(a.n, s) += phase * e.state(s);
    }
    return psi;
}

// Block-diagonal propagator for the GHZ (x) coherent initial state with the
// exact initial-state expansion (displacement overlaps kept). This is the
// adiabatic approximation proper: only the off-block couplings are dropped.
class GhzBlockPropagator {
public:
    GhzBlockPropagator(double z, const ModelParams& p, const FockTruncation& trunc,
                       SolverMode mode = SolverMode::ExactInBlock)
        : params_(p), trunc_(trunc) {
        const int nf = trunc.dim();
        // displaced-basis columns per spin component
        std::array<Eigen::MatrixXd, 4> disp;
        static const double ms[4] = {1.5, 0.5, -0.5, -1.5};
        for (int s = 0; s < 4; ++s)
            disp[s] = displacement_matrix(-ms[s] * p.alpha, trunc_);

        const FieldVector coh = coherent_vector(Complex(z, 0.0), trunc);
        Eigen::Vector4cd ghz = Eigen::Vector4cd::Zero();
        ghz(0) = ghz(3) = 1.0 / std::sqrt(2.0);
        const SpinFieldState psi0 = make_spin_field(coh, ghz);

        // keep blocks with non-negligible Poisson support, away from the edge
        int n_max = trunc.n_tr - 8;
        const int floor_n = std::max(8, static_cast<int>(z * z));
        while (n_max > floor_n && poisson_weight(n_max, z) < 1e-16) --n_max;

        for (int n = 0; n <= n_max; ++n) {
            for (const auto& e : block_eigensystem(n, p, mode)) {
                Eigen::VectorXd vec = Eigen::VectorXd::Zero(4 * nf);
                for (int s = 0; s < 4; ++s)
                    for (int q = 0; q < nf; ++q)
                        vec(4 * q + s) = e.state(s) * disp[s](q, n);
                const Complex c(vec.dot(psi0.amplitudes.real()),
                                vec.dot(psi0.amplitudes.imag()));   // <vec|psi0>
                if (std::abs(c) < 1e-14) continue;
                basis_.push_back(std::move(vec));
                coeffs_.push_back(c);
                energies_.push_back(e.energy);
            }
        }
        double w = 0.0;
        for (const auto& c : coeffs_) w += std::norm(c);
        captured_weight_ = w;
    }

    SpinFieldState state_at(double t) const {
        const int dim = 4 * trunc_.dim();
        Eigen::VectorXd re = Eigen::VectorXd::Zero(dim), im = Eigen::VectorXd::Zero(dim);
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            const Complex w = coeffs_[k] * std::exp(Complex(0.0, -energies_[k] * t));
            re += w.real() * basis_[k];
            im += w.imag() * basis_[k];
        }
        SpinFieldState psi;
        psi.n_tr = trunc_.n_tr;
        psi.amplitudes.resize(dim);
        psi.amplitudes.real() = re;
        psi.amplitudes.imag() = im;
        return psi;
    }

    // fraction of the initial state captured by the kept blocks
    double captured_weight() const { return captured_weight_; }

private:
    ModelParams params_;
    FockTruncation trunc_;
    std::vector<Eigen::VectorXd> basis_;
    std::vector<Complex> coeffs_;
    std::vector<double> energies_;
    double captured_weight_{0.0};
};

}  // namespace dicke3
