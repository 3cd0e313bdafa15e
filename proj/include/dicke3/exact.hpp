// exact.hpp — Dense reference solver: spectral decomposition of the truncated
// Hamiltonian with parity labels, exact unitary propagation, and the
// population / GHZ observables evaluated on it.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "dicke3/adiabatic.hpp"
#include "dicke3/analysis.hpp"
#include "dicke3/fock.hpp"
#include "dicke3/hamiltonian.hpp"
#include "dicke3/model.hpp"
#include "dicke3/states.hpp"

namespace dicke3 {

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;    // ascending
    Eigen::MatrixXd eigenvectors;   // orthonormal columns (real basis)
    Eigen::VectorXi parity;         // +1 / -1, 0 where ill-defined
    ModelParams params;
    int n_tr{0};

    int dim() const { return static_cast<int>(eigenvalues.size()); }
};

// Dense symmetric eigensolve plus parity classification; degenerate clusters
// are rotated to parity eigenvectors before labeling.
inline SpectralDecomposition eigendecompose(const FullHamiltonian& h,
                                            double degeneracy_gap = 1e-10) {
    if ((h.matrix - h.matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("eigendecompose: Hamiltonian is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: eigensolver failed");

    SpectralDecomposition d;
    d.params = h.params;
    d.n_tr = h.n_tr;
    d.eigenvalues = es.eigenvalues();
    d.eigenvectors = es.eigenvectors();
    d.parity = Eigen::VectorXi::Zero(d.dim());

    const Eigen::MatrixXd pi = parity_operator(FockTruncation(h.n_tr));
    int i = 0;
    while (i < d.dim()) {
        int j = i + 1;
        while (j < d.dim() && d.eigenvalues(j) - d.eigenvalues(j - 1) < degeneracy_gap) ++j;
        const int sz = j - i;
        if (sz > 1) {
            // simultaneous diagonalization within the degenerate cluster
            const Eigen::MatrixXd sub = d.eigenvectors.middleCols(i, sz);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ps(sub.transpose() * pi * sub);
            d.eigenvectors.middleCols(i, sz) = sub * ps.eigenvectors();
        }
        for (int k = i; k < j; ++k) {
            const double exp_pi = d.eigenvectors.col(k).dot(pi * d.eigenvectors.col(k));
            if (std::abs(exp_pi) > 0.99) d.parity(k) = exp_pi > 0.0 ? 1 : -1;
        }
        i = j;
    }
    return d;
}

// psi(t) = V exp(-i Lambda t) V^T psi0.
inline SpinFieldState propagate(const SpectralDecomposition& d, const SpinFieldState& psi0,
                                double t) {
    if (psi0.amplitudes.size() != d.dim())
        throw std::invalid_argument("propagate: dimension mismatch");
    Eigen::VectorXcd c = apply_real(d.eigenvectors.transpose(), psi0.amplitudes);
    for (int k = 0; k < c.size(); ++k)
        c(k) *= std::exp(Complex(0.0, -d.eigenvalues(k) * t));
    SpinFieldState psi;
    psi.n_tr = psi0.n_tr;
    psi.spin_basis = psi0.spin_basis;
    psi.amplitudes = apply_real(d.eigenvectors, c);
    return psi;
}

// ------------------------------------------------------------ initial states

// |3/2,3/2> (x) |n>_{A_{3/2}}
inline SpinFieldState initial_all_excited_fock(int n, const ModelParams& p,
                                               const FockTruncation& trunc) {
    Eigen::Vector4cd up = Eigen::Vector4cd::Zero();
    up(0) = 1.0;
    return make_spin_field(displaced_fock_vector(n, 1.5, p, trunc), up);
}

// |3/2,3/2> (x) D(-beta_{3/2}) |z>  (the displaced coherent preparation)
inline SpinFieldState initial_all_excited_coherent(double z, const ModelParams& p,
                                                   const FockTruncation& trunc) {
    const FieldVector coh = coherent_vector(Complex(z, 0.0), trunc);
    const Eigen::MatrixXd disp = displacement_matrix(-1.5 * p.alpha, trunc);
    FieldVector field;
    field.n_tr = trunc.n_tr;
    field.amplitudes = apply_real(disp, coh.amplitudes);
    field.truncated_mass = 1.0 - field.amplitudes.squaredNorm();
    if (field.truncated_mass > 1e-8)
        throw std::runtime_error("initial_all_excited_coherent: displaced state leaks");
    Eigen::Vector4cd up = Eigen::Vector4cd::Zero();
    up(0) = 1.0;
    return make_spin_field(field, up);
}

// (|3/2,3/2> + |3/2,-3/2>)/sqrt(2) (x) |z>  (true coherent field)
inline SpinFieldState initial_ghz_coherent(double z, const FockTruncation& trunc) {
    Eigen::Vector4cd ghz = Eigen::Vector4cd::Zero();
    ghz(0) = ghz(3) = 1.0 / std::sqrt(2.0);
    return make_spin_field(coherent_vector(Complex(z, 0.0), trunc), ghz);
}

// -------------------------------------------------------------- observables

// probability of the qubits staying in |3/2,3/2>, field traced out
inline double spin_up_population(const SpinFieldState& psi) {
    double s = 0.0;
    for (int n = 0; n < psi.fock_dim(); ++n) s += std::norm(psi.at(n, 0));
    return s;
}

// P1(n, t) on a grid: projection onto the initial spin (x) displaced-Fock
// product under full (not block) evolution. Times in units of omega t / 2 pi.
inline TimeSeries population_fock_exact(int n, const Eigen::VectorXd& t_plot,
                                        const ModelParams& p, const FockTruncation& trunc) {
    const SpectralDecomposition d = eigendecompose(full_hamiltonian(p, trunc));
    const SpinFieldState psi0 = initial_all_excited_fock(n, p, trunc);
    TimeSeries s;
    s.times = t_plot;
    s.values.resize(t_plot.size());
    s.label = "exact";
    for (int i = 0; i < t_plot.size(); ++i) {
        const double t = t_plot(i) * 2.0 * M_PI / p.omega;
        const SpinFieldState psi = propagate(d, psi0, t);
        s.values(i) = std::norm(psi0.amplitudes.dot(psi.amplitudes));
    }
    return s;
}

// P1(z, t) on a grid: qubit population observable on the exact evolved state.
inline TimeSeries population_coherent_exact(double z, const Eigen::VectorXd& t_plot,
                                            const ModelParams& p,
                                            const FockTruncation& trunc) {
    const SpectralDecomposition d = eigendecompose(full_hamiltonian(p, trunc));
    const SpinFieldState psi0 = initial_all_excited_coherent(z, p, trunc);
    TimeSeries s;
    s.times = t_plot;
    s.values.resize(t_plot.size());
    s.label = "exact";
    for (int i = 0; i < t_plot.size(); ++i) {
        const double t = t_plot(i) * 2.0 * M_PI / p.omega;
        s.values(i) = spin_up_population(propagate(d, psi0, t));
    }
    return s;
}

// GHZ trajectory: evolved states at the requested plot times.
inline std::vector<SpinFieldState> ghz_evolution_exact(double z, const Eigen::VectorXd& t_plot,
                                                       const ModelParams& p,
                                                       const FockTruncation& trunc) {
    const SpectralDecomposition d = eigendecompose(full_hamiltonian(p, trunc));
    const SpinFieldState psi0 = initial_ghz_coherent(z, trunc);
    std::vector<SpinFieldState> out;
    out.reserve(t_plot.size());
    for (int i = 0; i < t_plot.size(); ++i)
        out.push_back(propagate(d, psi0, t_plot(i) * 2.0 * M_PI / p.omega));
    return out;
}

// Lab-frame partial trace over the field (the physical reduced state).
inline QubitDensity reduced_density_exact(const SpinFieldState& psi, BasisTag basis,
                                          const ModelParams& p) {
    QubitDensity rho = reduced_qubit_density(psi, basis, p, TraceFrame::Lab);
    rho.source = "exact";
    return rho;
}

}  // namespace dicke3
