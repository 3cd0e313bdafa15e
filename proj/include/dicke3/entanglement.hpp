// entanglement.hpp — I-tangle measures for the GHZ dynamics: the analytic
// reduced density matrix, the field-qubit tangle, the universal state
// inverter, the 3x3 M matrix with its smallest eigenvalue, and the
// qubit-pair tangle in analytic and semianalytic form.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dicke3/model.hpp"
#include "dicke3/spin.hpp"
#include "dicke3/states.hpp"

namespace dicke3 {

struct TangleValue {
    double value{0.0};
    enum class Kind { FQ, AB } kind{Kind::FQ};
    Complex s_used{0.0, 0.0};   // the S(t,2w) value behind the number, if any
};

// The adiabatic-family reduced density matrix in the Jx tag:
// diag(1/4, 0, 3/4, 0) with off-diagonal sqrt(3) S / 4 between rows 1 and 3.
inline QubitDensity rho_q_analytic(Complex s) {
    if (std::abs(s) > 1.0 + 1e-9)
        throw std::domain_error("rho_q_analytic: |S| > 1, approximation invalid");
    QubitDensity rho;
    rho.basis = BasisTag::Jx;
    rho.source = "analytic";
    rho.matrix.setZero();
    rho.matrix(0, 0) = 0.25;
    rho.matrix(2, 2) = 0.75;
    rho.matrix(0, 2) = std::sqrt(3.0) * s / 4.0;
    rho.matrix(2, 0) = std::conj(rho.matrix(0, 2));
    return rho;
}

inline void check_density_axioms(const QubitDensity& rho, double tol = 1e-9) {
    if ((rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > tol)
        throw std::invalid_argument("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho.matrix);
    if (es.eigenvalues().minCoeff() < -100.0 * tol)
        throw std::invalid_argument("density matrix is not positive semidefinite");
}

// tau_FQ = 2 (1 - tr rho^2): field-qubit I-tangle of a pure joint state.
inline TangleValue tau_fq(const QubitDensity& rho) {
    check_density_axioms(rho);
    TangleValue t;
    t.kind = TangleValue::Kind::FQ;
    t.value = 2.0 * (1.0 - purity(rho));
    return t;
}

// Closed form (3 - 3|S|^2)/4 for the analytic family.
inline TangleValue tau_fq_analytic(Complex s) {
    TangleValue t;
    t.kind = TangleValue::Kind::FQ;
    t.s_used = s;
    t.value = (3.0 - 3.0 * std::norm(s)) / 4.0;
    return t;
}

// Universal state inverter on the qubit (x) pair split:
// rho~ = I - rho_A (x) I - I (x) rho_B + rho.
inline Eigen::MatrixXcd state_inverter(const Eigen::MatrixXcd& rho8) {
    if (rho8.rows() != 8 || rho8.cols() != 8)
        throw std::invalid_argument("state_inverter: expected an 8x8 density matrix");
    const Eigen::Matrix2cd rho_a = ptrace_keep_first(rho8);
    const Eigen::Matrix4cd rho_b = ptrace_drop_first(rho8);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(8, 8) + rho8;
    out -= Eigen::kroneckerProduct(rho_a, Eigen::Matrix4cd::Identity()).eval();
    out -= Eigen::kroneckerProduct(Eigen::Matrix2cd::Identity(), rho_b).eval();
    return out;
}

// The 3x3 M matrix of the rank-2 tangle construction, specialized to the
// analytic family, and its smallest eigenvalue.
struct MMatrix {
    Eigen::Matrix3d matrix;
    double lambda_min{0.0};
};

inline MMatrix m_matrix(Complex s_val) {
    const double s2 = std::norm(s_val);
    const double s = std::sqrt(s2);
    MMatrix m;
    m.matrix << 2.0 + 2.0 * s2, 0.0, 4.0 * s / std::sqrt(3.0),
                0.0, -(1.0 + s2) / 2.0, 0.0,
                4.0 * s / std::sqrt(3.0), 0.0, (-1.0 + 9.0 * s2) / 3.0;
    m.matrix /= 3.0 * (1.0 + 3.0 * s2);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m.matrix);
    m.lambda_min = es.eigenvalues().minCoeff();
    return m;
}

inline double lambda_min_closed_form(Complex s) {
    const double s2 = std::norm(s);
    return -(1.0 + s2) / (6.0 + 18.0 * s2);
}

// Closed form tau_AB = (5 + 20|S|^2 + 7|S|^4) / (8 (1 + 3|S|^2)).
inline TangleValue tau_ab_analytic(Complex s) {
    const double s2 = std::norm(s);
    TangleValue t;
    t.kind = TangleValue::Kind::AB;
    t.s_used = s;
    t.value = (5.0 + 20.0 * s2 + 7.0 * s2 * s2) / (8.0 * (1.0 + 3.0 * s2));
    return t;
}

// Pattern distance from the analytic family: largest row/column norm over
// the m_x = 1/2 and m_x = -3/2 slots of a Jx-tagged density matrix.
inline double family_pattern_violation(const QubitDensity& rho_jx) {
    if (rho_jx.basis != BasisTag::Jx)
        throw std::invalid_argument("family_pattern_violation: expected a Jx-tagged density");
    double v = 0.0;
    for (int idx : {1, 3}) {
        v = std::max(v, rho_jx.matrix.row(idx).norm());
        v = std::max(v, rho_jx.matrix.col(idx).norm());
    }
    return v;
}

// S read back from a family-patterned density matrix (Jx tag).
inline Complex extract_s(const QubitDensity& rho_jx) {
    return 4.0 * rho_jx.matrix(0, 2) / std::sqrt(3.0);
}

// Semianalytic tau_AB: embed the (family-patterned) density in the product
// space, evaluate Tr(rho rho~) numerically, and take lambda_min from the
// 3x3 eigensolve at the extracted S.
inline TangleValue tau_ab_semianalytic(const QubitDensity& rho, double pattern_tol = 0.05) {
    const QubitDensity rho_x = to_basis(rho, BasisTag::Jx);
    const double viol = family_pattern_violation(rho_x);
    if (viol > pattern_tol)
        throw std::domain_error(
            "tau_ab_semianalytic: state outside the adiabatic-family pattern (violation " +
            std::to_string(viol) + "); the general rank-2 M-matrix construction is not "
            "implemented");
    const Complex s_est = extract_s(rho_x);
    const Eigen::MatrixXcd rho8 = embed_in_product(rho_x);
    const Eigen::MatrixXcd rho_tilde = state_inverter(rho8);
    const double tr_rr = (rho8 * rho_tilde).trace().real();
    const double tr_r2 = (rho8 * rho8).trace().real();
    TangleValue t;
    t.kind = TangleValue::Kind::AB;
    t.s_used = s_est;
    t.value = tr_rr + 2.0 * m_matrix(s_est).lambda_min * (1.0 - tr_r2);
    return t;
}

}  // namespace dicke3
