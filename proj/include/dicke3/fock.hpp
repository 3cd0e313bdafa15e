// fock.hpp — Truncated-oscillator ingredients: ladder operators, Laguerre
// polynomials, Poisson weights, displacement matrices, displaced Fock and
// coherent state vectors.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "dicke3/model.hpp"

namespace dicke3 {

// ---------------------------------------------------------------- ladder ops

inline Eigen::MatrixXd annihilation_op(const FockTruncation& trunc) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(trunc.dim(), trunc.dim());
    for (int n = 1; n < trunc.dim(); ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

inline Eigen::MatrixXd number_op(const FockTruncation& trunc) {
    Eigen::VectorXd d(trunc.dim());
    for (int n = 0; n < trunc.dim(); ++n) d(n) = double(n);
    return d.asDiagonal();
}

// ------------------------------------------------------------------ Laguerre

// L_n(x) by the three-term recurrence; stable where the factorial form is not.
inline double laguerre(int n, double x) {
    if (n < 0) throw std::invalid_argument("laguerre: n must be >= 0");
    double lm2 = 1.0;        // L_0
    if (n == 0) return lm2;
    double lm1 = 1.0 - x;    // L_1
    for (int k = 2; k <= n; ++k) {
        const double lk = ((2.0 * k - 1.0 - x) * lm1 - (k - 1.0) * lm2) / k;
        lm2 = lm1;
        lm1 = lk;
    }
    return lm1;
}

// Associated Laguerre L_n^{(d)}(x), integer d >= 0, same recurrence scheme.
inline double laguerre_assoc(int n, int d, double x) {
    if (n < 0 || d < 0) throw std::invalid_argument("laguerre_assoc: bad order");
    double lm2 = 1.0;
    if (n == 0) return lm2;
    double lm1 = 1.0 + d - x;
    for (int k = 2; k <= n; ++k) {
        const double lk = ((2.0 * k - 1.0 + d - x) * lm1 - (k - 1.0 + d) * lm2) / k;
        lm2 = lm1;
        lm1 = lk;
    }
    return lm1;
}

// ------------------------------------------------------------------- Poisson

// p(n) = e^{-|z|^2} |z|^{2n} / n!, evaluated in log space.
inline double poisson_weight(int n, double zmag) {
    if (n < 0) throw std::invalid_argument("poisson_weight: n must be >= 0");
    if (zmag == 0.0) return n == 0 ? 1.0 : 0.0;
    const double ln = -zmag * zmag + 2.0 * n * std::log(zmag) - std::lgamma(n + 1.0);
    return std::exp(ln);
}

// --------------------------------------------------------------- FieldVector

// Complex amplitudes over Fock levels 0..n_tr, together with the probability
// mass lost to the truncation by the routine that built it.
struct FieldVector {
    Eigen::VectorXcd amplitudes;
    int n_tr{0};
    double truncated_mass{0.0};

    double norm() const { return amplitudes.norm(); }
};

// ---------------------------------------------------------------- displacement

// Matrix elements <p|D(beta)|q> of D(beta) = exp(beta (a^dag - a)), real beta,
// from the associated-Laguerre closed form with log-space prefactors.
inline Eigen::MatrixXd displacement_matrix(double beta, const FockTruncation& trunc) {
    const int N = trunc.dim();
    Eigen::MatrixXd D(N, N);
    if (beta == 0.0) {
        D.setIdentity();
        return D;
    }
    const double x = beta * beta;
    const double lnb = std::log(std::abs(beta));
    const double sgnb = beta > 0.0 ? 1.0 : -1.0;
    for (int p = 0; p < N; ++p) {
        for (int q = 0; q <= p; ++q) {
            const int d = p - q;
            const double L = laguerre_assoc(q, d, x);
            const double lnmag =
                0.5 * (std::lgamma(q + 1.0) - std::lgamma(p + 1.0)) - x / 2.0 + d * lnb;
            const double mag = std::exp(lnmag) * L;
            const double sd = (d % 2 == 0) ? 1.0 : sgnb;
            D(p, q) = sd * mag;                       // <p|D|q>, p >= q
            if (p != q) D(q, p) = (d % 2 == 0 ? 1.0 : -1.0) * D(p, q);  // via D^T = D(-beta)
        }
    }
    return D;
}

// Probability mass a displacement pushes out of the truncated space when
// applied to Fock level q (norm deficit of column q).
inline double displacement_leakage(const Eigen::MatrixXd& D, int q) {
    return 1.0 - D.col(q).squaredNorm();
}

// Displaced Fock state |n>_{A_m} = D(-beta_m)|n> with beta_m = m alpha.
inline FieldVector displaced_fock_vector(int n, double m, const ModelParams& params,
                                         const FockTruncation& trunc,
                                         double max_leakage = 1e-8) {
    if (n < 0 || n > trunc.n_tr)
        throw std::out_of_range("displaced_fock_vector: n outside truncation");
    const Eigen::MatrixXd D = displacement_matrix(-m * params.alpha, trunc);
    FieldVector v;
    v.amplitudes = D.col(n).cast<Complex>();
    v.n_tr = trunc.n_tr;
    v.truncated_mass = displacement_leakage(D, n);
    if (v.truncated_mass > max_leakage)
        throw std::runtime_error("displaced_fock_vector: truncation leakage " +
                                 std::to_string(v.truncated_mass) + " exceeds " +
                                 std::to_string(max_leakage));
    return v;
}

// Coherent state |z>, amplitudes e^{-|z|^2/2} z^n / sqrt(n!) by recurrence.
inline FieldVector coherent_vector(Complex z, const FockTruncation& trunc,
                                   double max_truncated_mass = 1e-8) {
    FieldVector v;
    v.n_tr = trunc.n_tr;
    v.amplitudes.resize(trunc.dim());
    v.amplitudes(0) = std::exp(-std::norm(z) / 2.0);
    for (int n = 1; n < trunc.dim(); ++n)
        v.amplitudes(n) = v.amplitudes(n - 1) * z / std::sqrt(double(n));
    v.truncated_mass = 1.0 - v.amplitudes.squaredNorm();
    if (v.truncated_mass > max_truncated_mass)
        throw std::runtime_error("coherent_vector: truncated mass " +
                                 std::to_string(v.truncated_mass) + " exceeds " +
                                 std::to_string(max_truncated_mass));
    return v;
}

}  // namespace dicke3
