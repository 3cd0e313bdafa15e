// spin.hpp — Spin-3/2 operators, the Jx eigenbasis rotation, and the embedding
// of the symmetric (Dicke) subspace into the three-qubit product space.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dicke3/model.hpp"

namespace dicke3 {

// Basis ordering everywhere: m = 3/2, 1/2, -1/2, -3/2.

inline Eigen::Matrix4d spin_jz() {
    Eigen::Vector4d d;
    d << 1.5, 0.5, -0.5, -1.5;
    return d.asDiagonal();
}

inline Eigen::Matrix4d spin_jplus() {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 1) = std::sqrt(3.0);
    m(1, 2) = 2.0;
    m(2, 3) = std::sqrt(3.0);
    return m;
}

inline Eigen::Matrix4d spin_jx() {
    const Eigen::Matrix4d jp = spin_jplus();
    return 0.5 * (jp + jp.transpose());
}

inline Eigen::Matrix4cd spin_jy() {
    const Eigen::Matrix4d jp = spin_jplus();
    return Complex(0.0, -0.5) * (jp - jp.transpose()).cast<Complex>();
}

// Deterministic sign fix: first component of largest magnitude made positive.
inline void fix_column_phases(Eigen::Matrix4d& m) {
    for (int c = 0; c < 4; ++c) {
        int imax = 0;
        for (int r = 1; r < 4; ++r)
            if (std::abs(m(r, c)) > std::abs(m(imax, c))) imax = r;
        if (m(imax, c) < 0.0) m.col(c) = -m.col(c);
    }
}

// Unitary U mapping Jz-basis coordinates to Jx-basis coordinates:
// U Jx U^T = diag(3/2, 1/2, -1/2, -3/2).
inline Eigen::Matrix4d jx_rotation() {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(spin_jx());
    Eigen::Matrix4d r = es.eigenvectors();   // ascending eigenvalues
    r = r.rowwise().reverse().eval();        // descending m
    fix_column_phases(r);
    return r.transpose();
}

// Isometry V (8x4) whose columns are the symmetric Dicke states |3/2,m> in
// the three-qubit product basis |q1 q2 q3>, qubit 1 the most significant bit
// (e = 0, g = 1). For the Jx tag, columns are the |3/2,m>_x states.
inline Eigen::MatrixXd dicke_to_product(BasisTag basis = BasisTag::Jz) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(8, 4);
    const double s3 = 1.0 / std::sqrt(3.0);
    v(0, 0) = 1.0;                                    // |eee>
    v(1, 1) = s3; v(2, 1) = s3; v(4, 1) = s3;         // one g
    v(3, 2) = s3; v(5, 2) = s3; v(6, 2) = s3;         // two g
    v(7, 3) = 1.0;                                    // |ggg>
    if (basis == BasisTag::Jx) v = v * jx_rotation().transpose();
    return v;
}

}  // namespace dicke3
