#include <doctest.h>

#include <chrono>
#include <cmath>
#include <sstream>
#include <vector>

#include "blockspin/circulant.hpp"
#include "blockspin/exact.hpp"
#include "blockspin/landscape.hpp"

using namespace blockspin;

TEST_CASE("lattice enumeration equals the spin-level brute force") {
  for (const auto& [n, s, beta, alpha] :
       std::vector<std::tuple<int, int, double, double>>{
           {10, 2, 0.5, 0.2}, {12, 3, 0.5, 0.2}, {12, 3, 0.8, 0.25}, {12, 4, 0.4, 0.1}}) {
    const ModelParams params{beta, alpha, n, s, ParamMode::strict};
    const ExactLaw lattice = exact_law(params);
    const ExactLaw spins = spin_level_law(params);
    CHECK(total_variation(lattice, spins) < 1e-12);
    CHECK(lattice.log_Z == doctest::Approx(spins.log_Z).epsilon(1e-12));
  }
}

TEST_CASE("log Z is nonnegative and monotone in the couplings") {
  for (const auto& [n, s] : std::vector<std::pair<int, int>>{{12, 3}, {16, 4}, {12, 1}})
    CHECK(exact_law({0.5, 0.2, n, s, ParamMode::strict}).log_Z >= -1e-12);

  double prev = -1e300;
  for (double beta : {0.3, 0.4, 0.5, 0.6}) {
    const double z = exact_law({beta, 0.1, 12, 3, ParamMode::strict}).log_Z;
    CHECK(z > prev);
    prev = z;
  }
  prev = -1e300;
  for (double alpha : {0.05, 0.1, 0.15, 0.2}) {
    const double z = exact_law({0.5, alpha, 12, 3, ParamMode::strict}).log_Z;
    CHECK(z > prev);
    prev = z;
  }
}

TEST_CASE("alpha = 0 factorizes into independent per-block models") {
  const ModelParams params{0.5, 0.0, 12, 3, ParamMode::relaxed};
  const ExactLaw joint = exact_law(params);
  const ModelParams one_block{0.5, 0.0, 4, 1, ParamMode::relaxed};
  const ExactLaw single = exact_law(one_block);

  double tv = 0.0;
  for (std::int64_t r = 0; r < joint.n_states(); ++r) {
    const BlockCounts counts = joint.counts_at(r);
    double product = 1.0;
    for (int c : counts) product *= single.prob(c);
    tv += std::abs(joint.prob(r) - product);
  }
  CHECK(0.5 * tv < 1e-12);
}

TEST_CASE("flip symmetry of the law is exact in floating point") {
  const ModelParams params{0.5, 0.2, 12, 3, ParamMode::strict};
  const ExactLaw law = exact_law(params);
  const int b = params.block_size();
  for (std::int64_t r = 0; r < law.n_states(); ++r) {
    BlockCounts flipped = law.counts_at(r);
    for (int& c : flipped) c = b - c;
    CHECK(law.log_probs[r] == law.log_probs[law.rank_of(flipped)]);
  }
}

TEST_CASE("moments: symmetry, positive semidefiniteness, Green's function trend") {
  const ModelParams params{0.4, 0.1, 24, 3, ParamMode::strict};
  const auto [mean, cov] = exact_moments(exact_law(params), 3);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(mean[i]) < 1e-13);
  CHECK((cov - cov.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  CHECK(es.eigenvalues().minCoeff() > -1e-14);

  // (N/s) Cov_11 approaches the finite-s closed form of (I-A)^{-1}_11 from
  // below as N grows at fixed s
  const CirculantSpec spec{3, 0.4, 0.1};
  const double target = inverse_I_minus_A_entry(spec, 0, 0);
  double prev_gap = 1e300;
  for (int n : {24, 48, 96}) {
    const ModelParams p{0.4, 0.1, n, 3, ParamMode::strict};
    const auto [m, c] = exact_moments(exact_law(p), 3);
    const double gap = std::abs((n / 3.0) * c(0, 0) - target);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.1);
}

TEST_CASE("conditional law: restriction, decomposition, low-temperature mean") {
  const ModelParams params{0.8, 0.25, 36, 3, ParamMode::strict};
  const ExactLaw law = exact_law(params);
  const double m_star = solve_m_star(1.3);

  // radius large enough to keep everything reproduces the law
  const ExactLaw all = conditional_law(law, MagnetizationVector(3, 0.0), 10.0);
  CHECK(total_variation(all, law) < 1e-14);

  // +ball and -ball restrictions carry equal mass and recompose the law up to
  // the mass outside both balls
  const double radius = 0.49 * m_star * std::sqrt(3.0);
  const MagnetizationVector plus(3, m_star), minus(3, -m_star);
  const ExactLaw in_plus = conditional_law(law, plus, radius);
  const ExactLaw in_minus = conditional_law(law, minus, radius);
  const double mass_plus = std::exp(in_plus.log_Z - law.log_Z);
  const double mass_minus = std::exp(in_minus.log_Z - law.log_Z);
  CHECK(mass_plus == doctest::Approx(mass_minus).epsilon(1e-12));
  double recomposed = 0.0;
  for (std::int64_t r = 0; r < law.n_states(); ++r) {
    const double via_mix =
        mass_plus * in_plus.prob(r) + mass_minus * in_minus.prob(r);
    recomposed += via_mix;
    CHECK(via_mix <= law.prob(r) + 1e-15);
  }
  CHECK(recomposed == doctest::Approx(mass_plus + mass_minus).epsilon(1e-12));

  // conditional mean close to m*vec at finite N (spacing is 2s/N)
  const auto [mean, cov] = exact_moments(in_plus, 3);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(mean[k] - m_star) < 4.0 * 3.0 / 36.0);

  CHECK_THROWS(conditional_law(law, MagnetizationVector(3, 5.0), 0.01));
}

TEST_CASE("budget guard and streaming log Z") {
  CHECK_THROWS_AS(exact_law({0.5, 0.2, 4096, 8, ParamMode::strict}, 1000000),
                  std::length_error);

  for (const auto& [n, s] : std::vector<std::pair<int, int>>{{12, 3}, {16, 4}, {10, 2}}) {
    const ModelParams params{0.5, 0.2, n, s, ParamMode::strict};
    CHECK(exact_log_Z(params, 2) ==
          doctest::Approx(exact_law(params).log_Z).epsilon(1e-12));
  }
}

TEST_CASE("enumeration at B = 9, s = 8 is feasible (cost is (B+1)^s, not 2^N)") {
  const auto start = std::chrono::steady_clock::now();
  const ModelParams params{0.5, 0.2, 72, 8, ParamMode::strict};  // 10^8 states
  const double log_z = exact_log_Z(params, 2);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(log_z >= 0.0);
  CHECK(seconds < 120.0);
}

TEST_CASE("Hubbard-Stratonovich identity at s = 1 via quadrature") {
  const ModelParams params{0.5, 0.2, 16, 1, ParamMode::strict};  // theta = 0.9
  for (int i = 0; i < 20; ++i) {
    const double x = -3.0 + 6.0 * i / 19.0;
    const HsDensity d = hs_density_check(params, {x});
    CHECK(d.lhs == doctest::Approx(d.rhs).epsilon(1e-8));
  }
}

TEST_CASE("Hubbard-Stratonovich identity at s = 2: quadrature and ratios") {
  const ModelParams params{0.5, 0.2, 8, 2, ParamMode::strict};
  const ExactLaw law = exact_law(params);

  const HsDensity d0 = hs_density_check(params, {0.0, 0.0});
  CHECK(d0.lhs == doctest::Approx(d0.rhs).epsilon(1e-6));

  // normalization-free: mixture log-density differences equal exponent
  // differences exactly
  const std::vector<std::vector<double>> points = {
      {0.0, 0.0}, {0.5, -0.25}, {1.0, 1.0}, {-0.75, 0.3}};
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double lhs_diff = hs_log_density_mixture(params, law, points[i]) -
                            hs_log_density_mixture(params, law, points[0]);
    const double rhs_diff = hs_log_density_exponent(params, points[i]) -
                            hs_log_density_exponent(params, points[0]);
    CHECK(lhs_diff == doctest::Approx(rhs_diff).epsilon(1e-9));
  }

  // symmetry and the high-temperature maximizer at the origin
  CHECK(hs_log_density_mixture(params, law, {0.7, -0.2}) ==
        doctest::Approx(hs_log_density_mixture(params, law, {-0.7, 0.2})).epsilon(1e-12));
  const double at_zero = hs_log_density_exponent(params, {0.0, 0.0});
  for (double x : {0.3, -0.8, 1.5})
    CHECK(hs_log_density_exponent(params, {x, 0.5 * x}) < at_zero);
}

TEST_CASE("CSV dump shape") {
  const ModelParams params{0.5, 0.2, 4, 2, ParamMode::strict};
  const ExactLaw law = exact_law(params);
  std::ostringstream os;
  dump_csv(law, os);
  const std::string text = os.str();
  CHECK(text.substr(0, text.find('\n')) == "m_1,m_2,log_prob");
  std::size_t lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == static_cast<std::size_t>(law.n_states()) + 1);
}
