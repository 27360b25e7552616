#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "blockspin/circulant.hpp"
#include "blockspin/landscape.hpp"
#include "blockspin/rng.hpp"

using namespace blockspin;

TEST_CASE("eigenvalue formula: frozen example and dense oracle") {
  const CirculantSpec spec{4, 0.5, 0.2};
  const std::vector<double> lam = eigenvalues(spec);
  CHECK(lam[0] == doctest::Approx(0.5).epsilon(1e-14));  // j = 1
  CHECK(lam[1] == doctest::Approx(0.1).epsilon(1e-14));  // j = 2
  CHECK(lam[2] == doctest::Approx(0.5).epsilon(1e-14));  // j = 3
  CHECK(lam[3] == doctest::Approx(0.9).epsilon(1e-14));  // j = 4

  for (int s : {1, 2, 3, 4, 5, 8, 17, 64}) {
    const CirculantSpec sp{s, 0.5, 0.2};
    std::vector<double> closed = eigenvalues(sp);
    std::sort(closed.begin(), closed.end());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(sp));
    for (int j = 0; j < s; ++j)
      CHECK(closed[j] == doctest::Approx(es.eigenvalues()[j]).epsilon(1e-10));
  }
}

TEST_CASE("alpha = 0 collapses the spectrum to beta") {
  const CirculantSpec spec{6, 0.7, 0.0};
  for (double lam : eigenvalues(spec)) CHECK(lam == doctest::Approx(0.7));
}

TEST_CASE("even sizes reach beta - 2 alpha at the antipodal frequency") {
  for (int s : {2, 4, 8, 64}) {
    const CirculantSpec spec{s, 0.5, 0.2};
    const auto lam = eigenvalues(spec);
    CHECK(*std::min_element(lam.begin(), lam.end()) ==
          doctest::Approx(0.1).epsilon(1e-12));
  }
  CHECK(spectral_norm(CirculantSpec{8, 0.5, 0.2}) == doctest::Approx(0.9));
}

TEST_CASE("apply agrees with the dense matrix-vector product") {
  SplitMix64 rng(5);
  for (int s = 1; s <= 9; ++s) {
    const CirculantSpec spec{s, 0.5, 0.2};
    const Eigen::MatrixXd a = dense(spec);
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXd x(s);
      for (int k = 0; k < s; ++k) x[k] = 2.0 * rng.next_double() - 1.0;
      const Eigen::VectorXd want = a * x;
      std::vector<double> xv(x.data(), x.data() + s);
      const std::vector<double> got = spec.apply(xv);
      for (int k = 0; k < s; ++k)
        CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("kappa1: frozen value and branch selection") {
  CHECK(kappa1(CirculantSpec{8, 0.4, 0.1}) ==
        doctest::Approx(0.1715728752538099).epsilon(1e-14));
  CHECK(kappa1(CirculantSpec{8, 0.5, 0.2}) == doctest::Approx(0.5).epsilon(1e-14));
  for (double beta : {0.1, 0.3, 0.5, 0.7}) {
    for (double alpha : {0.01, 0.05, 0.1}) {
      if (beta + 2 * alpha >= 1.0 || beta <= 2 * alpha) continue;
      const double k = kappa1(CirculantSpec{4, beta, alpha});
      CHECK(k > 0.0);
      CHECK(k < 1.0);
    }
  }
  CHECK_THROWS(kappa1(CirculantSpec{4, 0.8, 0.25}));
}

TEST_CASE("(I-A)^{-1} closed form vs LU inversion") {
  for (int s : {1, 2, 3, 5, 8, 64}) {
    for (const auto& [beta, alpha] :
         std::vector<std::pair<double, double>>{{0.4, 0.1}, {0.5, 0.2}, {0.3, 0.05}}) {
      const CirculantSpec spec{s, beta, alpha};
      const Eigen::MatrixXd ima = Eigen::MatrixXd::Identity(s, s) - dense(spec);
      const Eigen::MatrixXd lu = ima.partialPivLu().inverse();
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
          CHECK(inverse_I_minus_A_entry(spec, i, j) ==
                doctest::Approx(lu(i, j)).epsilon(1e-10));
    }
  }
}

TEST_CASE("(I-A)^{-1}: symmetry and circulant distance dependence") {
  const CirculantSpec spec{9, 0.4, 0.1};
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      CHECK(inverse_I_minus_A_entry(spec, i, j) == inverse_I_minus_A_entry(spec, j, i));
      CHECK(inverse_I_minus_A_entry(spec, i, j) ==
            inverse_I_minus_A_entry(spec, (i + 3) % 9, (j + 3) % 9));
    }
}

TEST_CASE("large-s diagonal approaches 1/sqrt((1-beta)^2 - 4 alpha^2)") {
  const CirculantSpec spec{64, 0.4, 0.1};
  CHECK(inverse_I_minus_A_entry(spec, 0, 0) ==
        doctest::Approx(1.7677669529663687).epsilon(1e-9));
  CHECK(sigma_limit_entry(spec, 0, 0) ==
        doctest::Approx(1.7677669529663687).epsilon(1e-14));
}

TEST_CASE("alpha -> 0 recovers the Curie-Weiss variance") {
  const CirculantSpec spec{6, 0.4, 1e-13};
  CHECK(inverse_I_minus_A_entry(spec, 0, 0) ==
        doctest::Approx(1.0 / 0.6).epsilon(1e-10));
  CHECK(std::abs(inverse_I_minus_A_entry(spec, 0, 1)) < 1e-10);
}

TEST_CASE("sigma limit: geometric ratio and finite-size agreement") {
  const CirculantSpec spec{32, 0.4, 0.1};
  const double k1 = kappa1(spec);
  for (int j = 0; j < 6; ++j)
    CHECK(sigma_limit_entry(spec, 0, j + 1) / sigma_limit_entry(spec, 0, j) ==
          doctest::Approx(k1).epsilon(1e-12));
  // finite-s closed form deviates by at most kappa^{s/2}
  for (int j = 0; j < 8; ++j)
    CHECK(std::abs(sigma_limit_entry(spec, 0, j) - inverse_I_minus_A_entry(spec, 0, j)) <
          std::pow(k1, 16));
}

TEST_CASE("sigma limit is the Cauchy limit of LU-inverted finite matrices") {
  double prev_gap = 1e300;
  for (int s : {64, 128, 256}) {
    const CirculantSpec spec{s, 0.4, 0.1};
    const Eigen::MatrixXd ima = Eigen::MatrixXd::Identity(s, s) - dense(spec);
    const Eigen::MatrixXd lu = ima.partialPivLu().inverse();
    const double gap = std::abs(lu(0, 0) - sigma_limit_entry(spec, 0, 0));
    CHECK(gap < prev_gap + 1e-15);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-12);
}

TEST_CASE("Sigma* against dense inversion of I - A(1 - m*^2)") {
  const double m_star = solve_m_star(1.3);
  const CirculantSpec spec{128, 0.8, 0.25};
  const double c = 1.0 - m_star * m_star;
  const Eigen::MatrixXd ima =
      Eigen::MatrixXd::Identity(128, 128) - c * dense(CirculantSpec{128, 0.8, 0.25});
  const Eigen::MatrixXd lu = ima.partialPivLu().inverse();
  for (int j = 0; j < 8; ++j) {
    CHECK(sigma_star_entry(spec, m_star, 0, j) ==
          doctest::Approx(c * lu(0, j)).epsilon(1e-8));
    CHECK(sigma_star_entry_finite(spec, m_star, 0, j) ==
          doctest::Approx(c * lu(0, j)).epsilon(1e-12));
  }
}

TEST_CASE("Sigma* vanishes as m* -> 1 and stays positive definite") {
  const CirculantSpec spec{16, 0.8, 0.25};
  CHECK(std::abs(sigma_star_entry(spec, 0.9999, 0, 0)) < 1e-3);
  const double m_star = solve_m_star(1.3);
  for (int d : {2, 3, 4, 6}) {
    Eigen::MatrixXd block(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) block(i, j) = sigma_star_entry(spec, m_star, i, j);
    Eigen::LLT<Eigen::MatrixXd> llt(block);
    CHECK(llt.info() == Eigen::Success);
  }
}

TEST_CASE("discrete Poisson identity") {
  const PoissonIdentity id = discrete_poisson_check(0.5, 4, 0);
  CHECK(id.lhs == doctest::Approx(id.rhs).epsilon(1e-12));
  CHECK(std::abs(id.lhs_imag) < 1e-12);

  for (double r : {0.1, 0.5, 0.9})
    for (int s : {2, 3, 8, 32})
      for (int m = 0; m < std::min(s, 5); ++m) {
        const PoissonIdentity p = discrete_poisson_check(r, s, m);
        CHECK(p.lhs == doctest::Approx(p.rhs).epsilon(1e-12));
        CHECK(std::abs(p.lhs_imag) < 1e-12);
      }
}

TEST_CASE("geometric series identity behind the Poisson identity") {
  // sum_k r^{|k|} e^{2 pi i k l / s} = (1 - r^2) / (1 - 2 r cos(2 pi l / s) + r^2)
  const double r = 0.6;
  const int s = 8;
  for (int l = 0; l < s; ++l) {
    const double theta = 2.0 * M_PI * l / s;
    std::complex<double> acc = 1.0;
    for (int k = 1; k <= 200; ++k)
      acc += std::pow(r, k) * 2.0 * std::cos(theta * k);
    const double want = (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(theta) + r * r);
    CHECK(acc.real() == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("Hessian-at-zero eigenvalues: dense oracle and sign pattern") {
  for (int s : {2, 3, 4, 8, 16}) {
    const CirculantSpec spec{s, 0.5, 0.2};
    std::vector<double> closed = hessian_at_zero_eigenvalues(spec);
    std::sort(closed.begin(), closed.end());
    const Eigen::MatrixXd a = dense(spec);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a - a * a);
    for (int j = 0; j < s; ++j)
      CHECK(closed[j] == doctest::Approx(es.eigenvalues()[j]).epsilon(1e-10));
  }

  // positive definite iff beta + 2 alpha < 1, boundary exactly semidefinite
  const auto high = hessian_at_zero_eigenvalues(CirculantSpec{8, 0.5, 0.2});
  CHECK(*std::min_element(high.begin(), high.end()) > 0.0);
  const auto low = hessian_at_zero_eigenvalues(CirculantSpec{8, 0.8, 0.25});
  CHECK(*std::min_element(low.begin(), low.end()) <= 0.0);
  const auto critical = hessian_at_zero_eigenvalues(CirculantSpec{8, 0.6, 0.2});
  CHECK(std::abs(*std::min_element(critical.begin(), critical.end())) < 1e-12);
}

TEST_CASE("closed-form inverse assembled against (I-A) gives the identity") {
  for (int s : {3, 17, 128, 512}) {
    const CirculantSpec spec{s, 0.4, 0.1};
    Eigen::MatrixXd inv(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) inv(i, j) = inverse_I_minus_A_entry(spec, i, j);
    const Eigen::MatrixXd residual =
        inv * (Eigen::MatrixXd::Identity(s, s) - dense(spec)) -
        Eigen::MatrixXd::Identity(s, s);
    CHECK(residual.cwiseAbs().maxCoeff() < 1e-9);
  }
}
