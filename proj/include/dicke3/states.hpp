// states.hpp — Joint spin-field states, reduced qubit densities, and the
// partial traces connecting them. Tensor ordering is Fock (x) spin with the
// spin index fastest: component (n, m-index) sits at 4 n + s.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include "dicke3/fock.hpp"
#include "dicke3/model.hpp"
#include "dicke3/spin.hpp"

namespace dicke3 {

// Real matrix (expression) applied to a complex vector via two real products.
template <typename Derived>
Eigen::VectorXcd apply_real(const Eigen::MatrixBase<Derived>& m, const Eigen::VectorXcd& v) {
    Eigen::VectorXcd out(m.rows());
    out.real() = m * v.real();
    out.imag() = m * v.imag();
    return out;
}

struct SpinFieldState {
    Eigen::VectorXcd amplitudes;   // dimension 4 (n_tr + 1)
    BasisTag spin_basis{BasisTag::Jz};
    int n_tr{0};

    int fock_dim() const { return n_tr + 1; }
    Complex& at(int n, int s) { return amplitudes(4 * n + s); }
    Complex at(int n, int s) const { return amplitudes(4 * n + s); }
};

inline SpinFieldState make_spin_field(const FieldVector& field,
                                      const Eigen::Vector4cd& spin,
                                      BasisTag tag = BasisTag::Jz) {
    SpinFieldState psi;
    psi.n_tr = field.n_tr;
    psi.spin_basis = tag;
    psi.amplitudes.resize(4 * field.amplitudes.size());
    for (int n = 0; n < field.amplitudes.size(); ++n)
        for (int s = 0; s < 4; ++s)
            psi.amplitudes(4 * n + s) = field.amplitudes(n) * spin(s);
    return psi;
}

// 4x4 reduced density matrix of the three qubits (symmetric subspace).
struct QubitDensity {
    Eigen::Matrix4cd matrix;
    BasisTag basis{BasisTag::Jz};
    std::string source;   // "analytic", "exact", "adiabatic"

    double trace() const { return matrix.trace().real(); }
};

inline QubitDensity to_basis(const QubitDensity& rho, BasisTag tag) {
    if (rho.basis == tag) return rho;
    const Eigen::Matrix4cd u = jx_rotation().cast<Complex>();
    QubitDensity out;
    out.basis = tag;
    out.source = rho.source;
    if (tag == BasisTag::Jx)
        out.matrix = u * rho.matrix * u.adjoint();
    else
        out.matrix = u.adjoint() * rho.matrix * u;
    return out;
}

// Partial trace over the field. The optional displaced frame removes the
// m-conditioned displacement D(-beta_m) from each spin component before
// tracing (the frame in which the block-diagonal treatment is formulated);
// the plain lab frame is the physical partial trace.
enum class TraceFrame { Lab, Displaced };

// Precomputed per-m displacements for repeated displaced-frame traces.
class DisplacedTrace {
public:
    DisplacedTrace(const ModelParams& params, const FockTruncation& trunc) {
        static const double ms[4] = {1.5, 0.5, -0.5, -1.5};
        for (int s = 0; s < 4; ++s)
            d_[s] = displacement_matrix(ms[s] * params.alpha, trunc);
    }

    QubitDensity reduce(const SpinFieldState& psi, BasisTag basis) const {
        const int nf = psi.fock_dim();
        Eigen::MatrixXcd comp(nf, 4);
        for (int n = 0; n < nf; ++n)
            for (int s = 0; s < 4; ++s) comp(n, s) = psi.at(n, s);
        // amplitudes in the displaced basis: <n|_{A_m} psi_m = D(beta_m) psi_m
        for (int s = 0; s < 4; ++s) comp.col(s) = apply_real(d_[s], comp.col(s));
        QubitDensity rho;
        rho.basis = psi.spin_basis;
        rho.matrix = comp.transpose() * comp.conjugate();
        return to_basis(rho, basis);
    }

private:
    std::array<Eigen::MatrixXd, 4> d_;
};

inline QubitDensity reduced_qubit_density(const SpinFieldState& psi,
                                          BasisTag basis,
                                          const ModelParams& params,
                                          TraceFrame frame = TraceFrame::Lab) {
    if (frame == TraceFrame::Displaced)
        return DisplacedTrace(params, FockTruncation(psi.n_tr)).reduce(psi, basis);
    const int nf = psi.fock_dim();
    Eigen::MatrixXcd comp(nf, 4);
    for (int n = 0; n < nf; ++n)
        for (int s = 0; s < 4; ++s) comp(n, s) = psi.at(n, s);
    QubitDensity rho;
    rho.basis = psi.spin_basis;
    rho.matrix = comp.transpose() * comp.conjugate();   // rho[s,s'] = sum_n c(n,s) c*(n,s')
    return to_basis(rho, basis);
}

inline double purity(const QubitDensity& rho) {
    return (rho.matrix * rho.matrix).trace().real();
}

// ---- embeddings into the 8-dim product space and the A|BC partial traces ----

// rho on the symmetric subspace lifted to the three-qubit product space.
inline Eigen::MatrixXcd embed_in_product(const QubitDensity& rho) {
    const Eigen::MatrixXcd v = dicke_to_product(rho.basis).cast<Complex>();
    return v * rho.matrix * v.adjoint();
}

// Trace over qubits 2,3 (subsystem BC): 8x8 -> 2x2.
inline Eigen::Matrix2cd ptrace_keep_first(const Eigen::MatrixXcd& rho8) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 4; ++k) out(i, j) += rho8(4 * i + k, 4 * j + k);
    return out;
}

// Trace over qubit 1 (subsystem A): 8x8 -> 4x4.
inline Eigen::Matrix4cd ptrace_drop_first(const Eigen::MatrixXcd& rho8) {
    return rho8.topLeftCorner<4, 4>() + rho8.bottomRightCorner<4, 4>();
}

}  // namespace dicke3
