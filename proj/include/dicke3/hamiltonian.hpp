// hamiltonian.hpp — The j=3/2 Dicke Hamiltonian in all the forms the solver
// chain needs: the coupling function Omega_n, the 4x4 displaced-basis blocks,
// their 2x2 parity reduction, the full truncated matrix, and the parity
// operator.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "dicke3/fock.hpp"
#include "dicke3/model.hpp"
#include "dicke3/spin.hpp"

namespace dicke3 {

// Off-diagonal coupling Omega_n = -(omega/2) e^{-alpha^2/2} L_n(alpha^2),
// evaluated through the Laguerre recurrence.
inline double omega_n(int n, const ModelParams& p) {
    if (n < 0) throw std::invalid_argument("omega_n: n must be >= 0");
    const double x = p.alpha * p.alpha;
    return -(p.omega / 2.0) * std::exp(-x / 2.0) * laguerre(n, x);
}

// The same quantity from the explicit factorial sum
//   -(omega/2) e^{-a^2/2} sum_l (-1)^{n-l} n! a^{2(n-l)} / (l! [(n-l)!]^2).
// Overflows in double precision past n ~ 20; kept as the independent route
// for cross-checks.
inline double omega_n_sum(int n, const ModelParams& p) {
    if (n < 0) throw std::invalid_argument("omega_n_sum: n must be >= 0");
    const double x = p.alpha * p.alpha;
    double sum = 0.0;
    for (int l = 0; l <= n; ++l) {
        const int k = n - l;
        double term = std::exp(std::lgamma(n + 1.0) - std::lgamma(l + 1.0) -
                               2.0 * std::lgamma(k + 1.0)) *
                      std::pow(x, k);
        if (k % 2 != 0) term = -term;
        sum += term;
    }
    return -(p.omega / 2.0) * std::exp(-x / 2.0) * sum;
}

// eps^n_m = omega_c (n - beta_m^2), beta_m = m alpha.
inline double block_diagonal_energy(int n, double m, const ModelParams& p) {
    const double beta = m * p.alpha;
    return p.omega_c * (n - beta * beta);
}

// ------------------------------------------------------------ 4x4 block H_n

struct BlockHamiltonian {
    int n{0};
    Eigen::Matrix4d matrix;
    ModelParams params;
};

inline BlockHamiltonian block_hamiltonian(int n, const ModelParams& p) {
    const double on = omega_n(n, p);
    const double e32 = block_diagonal_energy(n, 1.5, p);
    const double e12 = block_diagonal_energy(n, 0.5, p);
    const double s3 = std::sqrt(3.0) * on;
    BlockHamiltonian b;
    b.n = n;
    b.params = p;
    b.matrix << e32, s3, 0.0, 0.0,
                s3, e12, 2.0 * on, 0.0,
                0.0, 2.0 * on, e12, s3,
                0.0, 0.0, s3, e32;
    return b;
}

// ------------------------------------------------------- 2x2 parity blocks

struct ParityBlock {
    int n{0};
    int kappa{+1};   // parity eigenvalue
    int xi{+1};      // kappa (-1)^n
    Eigen::Matrix2d matrix;
};

inline ParityBlock parity_block(int n, int kappa, const ModelParams& p) {
    if (kappa != 1 && kappa != -1)
        throw std::invalid_argument("parity_block: kappa must be +1 or -1");
    ParityBlock b;
    b.n = n;
    b.kappa = kappa;
    b.xi = (n % 2 == 0) ? kappa : -kappa;
    const double on = omega_n(n, p);
    b.matrix << block_diagonal_energy(n, 1.5, p), std::sqrt(3.0) * on,
                std::sqrt(3.0) * on, block_diagonal_energy(n, 0.5, p) + 2.0 * b.xi * on;
    return b;
}

// ----------------------------------------------------------- full Hamiltonian

// H = omega_c a^dag a - omega Jx + 2 g (a^dag + a) Jz on Fock (x) spin,
// spin index fastest. Real symmetric in this basis.
struct FullHamiltonian {
    Eigen::MatrixXd matrix;
    ModelParams params;
    int n_tr{0};

    int dim() const { return static_cast<int>(matrix.rows()); }
};

inline FullHamiltonian full_hamiltonian(const ModelParams& p, const FockTruncation& trunc) {
    const int nf = trunc.dim();
    const Eigen::Matrix4d jx = spin_jx();
    const Eigen::Matrix4d jz = spin_jz();
    FullHamiltonian h;
    h.params = p;
    h.n_tr = trunc.n_tr;
    h.matrix = Eigen::MatrixXd::Zero(4 * nf, 4 * nf);
    for (int n = 0; n < nf; ++n) {
        h.matrix.block<4, 4>(4 * n, 4 * n) =
            p.omega_c * n * Eigen::Matrix4d::Identity() - p.omega * jx;
        if (n + 1 < nf) {
            const Eigen::Matrix4d c = 2.0 * p.g * std::sqrt(n + 1.0) * jz;
            h.matrix.block<4, 4>(4 * n, 4 * (n + 1)) = c;
            h.matrix.block<4, 4>(4 * (n + 1), 4 * n) = c;
        }
    }
    return h;
}

// Parity exp[i pi (3/2 - Jx + a^dag a)]: (-1)^n on the field times the spin
// reflection, which is antidiagonal in the Jz ordering. Real involution.
inline Eigen::MatrixXd parity_operator(const FockTruncation& trunc) {
    Eigen::Matrix4d spin_refl = Eigen::Matrix4d::Zero();
    spin_refl(0, 3) = spin_refl(1, 2) = spin_refl(2, 1) = spin_refl(3, 0) = 1.0;
    const int nf = trunc.dim();
    Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(4 * nf, 4 * nf);
    for (int n = 0; n < nf; ++n)
        pi.block<4, 4>(4 * n, 4 * n) = (n % 2 == 0 ? 1.0 : -1.0) * spin_refl;
    return pi;
}

}  // namespace dicke3
