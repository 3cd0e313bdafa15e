#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dicke3/hamiltonian.hpp"

using namespace dicke3;

TEST_CASE("Omega_n") {
    const ModelParams p = make_params(1.0, 0.15, 0.08);

    CHECK(omega_n(0, p) ==
          doctest::Approx(-(0.15 / 2.0) * std::exp(-0.0128)).epsilon(1e-14));

    // n = 1 by hand from the factorial sum: -(w/2) e^{-a^2/2} (1 - a^2)
    CHECK(omega_n(1, p) ==
          doctest::Approx(-0.075 * std::exp(-0.0128) * (1.0 - 0.0256)).epsilon(1e-13));
    CHECK(omega_n(1, p) == doctest::Approx(-0.07215054).epsilon(1e-7));

    SUBCASE("recurrence vs factorial sum") {
        for (double alpha : {0.04, 0.16, 0.5}) {
            const ModelParams q = make_params(1.0, 0.15, alpha / 2.0);
            for (int n = 0; n <= 20; ++n)
                CHECK(std::abs(omega_n(n, q) - omega_n_sum(n, q)) <=
                      1e-10 * std::abs(omega_n_sum(n, q)));
        }
    }

    SUBCASE("recurrence vs library Laguerre") {
        for (double alpha : {0.04, 0.16, 0.5}) {
            const ModelParams q = make_params(1.0, 0.15, alpha / 2.0);
            const double x = alpha * alpha;
            for (int n = 0; n <= 30; ++n) {
                const double ref = -(q.omega / 2.0) * std::exp(-x / 2.0) * std::laguerre(n, x);
                CHECK(std::abs(omega_n(n, q) - ref) <= 1e-10 * std::abs(ref));
            }
        }
    }
}

TEST_CASE("block Hamiltonian") {
    SUBCASE("decoupled limit is pure qubit precession") {
        const ModelParams p = make_params(1.0, 0.15, 0.0);
        const BlockHamiltonian b = block_hamiltonian(0, p);
        CHECK((b.matrix + p.omega * spin_jx()).cwiseAbs().maxCoeff() < 1e-15);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(b.matrix);
        CHECK(es.eigenvalues()(0) == doctest::Approx(-1.5 * p.omega).epsilon(1e-13));
        CHECK(es.eigenvalues()(3) == doctest::Approx(1.5 * p.omega).epsilon(1e-13));
    }

    SUBCASE("corner energy") {
        const ModelParams p = make_params(1.0, 0.15, 0.08);
        CHECK(block_hamiltonian(0, p).matrix(0, 0) ==
              doctest::Approx(-9.0 * p.g * p.g).epsilon(1e-14));
        CHECK(block_hamiltonian(0, p).matrix(1, 1) ==
              doctest::Approx(-p.g * p.g).epsilon(1e-14));
    }

    SUBCASE("block spectrum equals the union of the parity blocks") {
        const ModelParams p = make_params(1.0, 0.15, 0.08);
        for (int n = 0; n <= 30; ++n) {
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> e4(block_hamiltonian(n, p).matrix);
            std::vector<double> ev2;
            for (int kappa : {1, -1}) {
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> e2(
                    parity_block(n, kappa, p).matrix);
                ev2.push_back(e2.eigenvalues()(0));
                ev2.push_back(e2.eigenvalues()(1));
            }
            std::sort(ev2.begin(), ev2.end());
            for (int i = 0; i < 4; ++i)
                CHECK(std::abs(e4.eigenvalues()(i) - ev2[i]) < 1e-12);
        }
    }
}

TEST_CASE("parity blocks") {
    const ModelParams p = make_params(1.0, 0.15, 0.08);
    CHECK(parity_block(0, 1, p).xi == 1);
    CHECK(parity_block(1, 1, p).xi == -1);
    CHECK(parity_block(1, -1, p).xi == 1);
    CHECK(parity_block(0, 1, p).matrix(0, 1) ==
          doctest::Approx(std::sqrt(3.0) * omega_n(0, p)).epsilon(1e-14));
    CHECK_THROWS_AS(parity_block(0, 2, p), std::invalid_argument);
}

TEST_CASE("full Hamiltonian") {
    SUBCASE("symmetric by construction") {
        const ModelParams p = make_params(1.0, 0.15, 0.08);
        const FullHamiltonian h = full_hamiltonian(p, FockTruncation(12));
        CHECK((h.matrix - h.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("decoupled spectrum") {
        const ModelParams p = make_params(1.0, 0.15, 0.0);
        const FockTruncation tr(10);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(full_hamiltonian(p, tr).matrix);
        std::vector<double> expected;
        for (int n = 0; n <= tr.n_tr; ++n)
            for (double mx : {1.5, 0.5, -0.5, -1.5}) expected.push_back(n - mx * p.omega);
        std::sort(expected.begin(), expected.end());
        for (int i = 0; i < es.eigenvalues().size(); ++i)
            CHECK(std::abs(es.eigenvalues()(i) - expected[i]) < 1e-12);
    }

    SUBCASE("low spectrum matches the block energies") {
        const ModelParams p = make_params(1.0, 0.15, 0.08);
        const FockTruncation tr(80);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(full_hamiltonian(p, tr).matrix);
        std::vector<double> blocks;
        for (int n = 0; n <= tr.n_tr; ++n)
            for (int kappa : {1, -1}) {
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> e2(
                    parity_block(n, kappa, p).matrix);
                blocks.push_back(e2.eigenvalues()(0));
                blocks.push_back(e2.eigenvalues()(1));
            }
        std::sort(blocks.begin(), blocks.end());
        for (int i = 0; i < 40; ++i)
            CHECK(std::abs(es.eigenvalues()(i) - blocks[i]) < 0.01);
    }
}

TEST_CASE("parity operator") {
    const FockTruncation tr(11);
    const Eigen::MatrixXd pi = parity_operator(tr);

    CHECK((pi * pi - Eigen::MatrixXd::Identity(pi.rows(), pi.cols()))
              .cwiseAbs().maxCoeff() < 1e-12);

    SUBCASE("commutes with the Hamiltonian away from the edge") {
        const ModelParams p = make_params(1.0, 0.15, 0.08);
        const FullHamiltonian h = full_hamiltonian(p, tr);
        const Eigen::MatrixXd comm = h.matrix * pi - pi * h.matrix;
        const int keep = 4 * tr.n_tr;   // exclude the top Fock level
        CHECK(comm.topLeftCorner(keep, keep).cwiseAbs().maxCoeff() < 1e-10);
    }

    SUBCASE("sectors have equal dimension") {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pi);
        int plus = 0, minus = 0;
        for (int i = 0; i < es.eigenvalues().size(); ++i)
            (es.eigenvalues()(i) > 0 ? plus : minus) += 1;
        CHECK(plus == minus);
    }
}

TEST_CASE("total-spin conservation on the embedded operator") {
    // [H, J^2] = 0 checked on the product-space lift for a small truncation
    const ModelParams p = make_params(1.0, 0.15, 0.08);
    const FockTruncation tr(5);
    const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd sx, sy, sz;
    sx << 0, 1, 1, 0;
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    sz << 1, 0, 0, -1;
    auto lift = [&](const Eigen::Matrix2cd& s) {
        return (Eigen::kroneckerProduct(s, Eigen::kroneckerProduct(id2, id2).eval()).eval() +
                Eigen::kroneckerProduct(id2, Eigen::kroneckerProduct(s, id2).eval()).eval() +
                Eigen::kroneckerProduct(id2, Eigen::kroneckerProduct(id2, s).eval()).eval()) *
               0.5;
    };
    const Eigen::MatrixXcd jx8 = lift(sx), jy8 = lift(sy), jz8 = lift(sz);
    const Eigen::MatrixXcd j2 = jx8 * jx8 + jy8 * jy8 + jz8 * jz8;

    const Eigen::MatrixXd a = annihilation_op(tr);
    const Eigen::MatrixXcd id_f = Eigen::MatrixXd::Identity(tr.dim(), tr.dim()).cast<Complex>();
    const Eigen::MatrixXcd h8 =
        Eigen::kroneckerProduct((a.transpose() * a).cast<Complex>().eval(),
                                Eigen::MatrixXcd::Identity(8, 8).eval()).eval() -
        p.omega * Eigen::kroneckerProduct(id_f, jx8).eval() +
        2.0 * p.g *
            Eigen::kroneckerProduct((a + a.transpose()).cast<Complex>().eval(), jz8).eval();
    const Eigen::MatrixXcd j2_full =
        Eigen::kroneckerProduct(id_f, j2).eval();
    CHECK((h8 * j2_full - j2_full * h8).cwiseAbs().maxCoeff() < 1e-13);
}
