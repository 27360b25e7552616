#include <doctest.h>

#include <cmath>
#include <vector>

#include "blockspin/rng.hpp"
#include "blockspin/stats.hpp"

using namespace blockspin;

TEST_CASE("normal cdf reference points") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(1.959964) == doctest::Approx(0.975).epsilon(1e-6));
  CHECK(normal_cdf(-1.959964) == doctest::Approx(0.025).epsilon(1e-5));
}

TEST_CASE("Wilson interval brackets the point estimate and stays in [0,1]") {
  const WilsonInterval w = wilson_interval(5, 10);
  CHECK(w.lo < 0.5);
  CHECK(w.hi > 0.5);
  CHECK(w.lo > 0.0);
  CHECK(w.hi < 1.0);

  const WilsonInterval zero = wilson_interval(0, 50);
  CHECK(zero.lo == 0.0);
  CHECK(zero.hi > 0.0);
  CHECK(zero.hi < 0.15);

  const WilsonInterval narrow = wilson_interval(500, 1000);
  const WilsonInterval wide = wilson_interval(5, 10);
  CHECK(narrow.hi - narrow.lo < wide.hi - wide.lo);
}

TEST_CASE("Kolmogorov survival function") {
  CHECK(kolmogorov_q(0.5) == doctest::Approx(0.9639).epsilon(1e-3));
  CHECK(kolmogorov_q(1.36) == doctest::Approx(0.0505).epsilon(2e-2));
  CHECK(kolmogorov_q(0.01) == 1.0);
  CHECK(kolmogorov_q(3.0) < 1e-7);
}

TEST_CASE("KS test accepts normal data and rejects uniform data") {
  SplitMix64 rng(77);
  std::vector<double> normal(20000), uniform(20000);
  for (std::size_t i = 0; i < normal.size(); ++i) {
    // Box-Muller
    const double u1 = rng.next_double() + 1e-300;
    const double u2 = rng.next_double();
    normal[i] = 2.0 * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    uniform[i] = 2.0 * rng.next_double() - 1.0;
  }
  const KsResult good = ks_test_normal(normal, 2.0, normal.size());
  CHECK(good.p_value > 0.01);
  const KsResult bad = ks_test_normal(uniform, 2.0, uniform.size());
  CHECK(bad.p_value < 1e-6);
}

TEST_CASE("mean/se and linear fit") {
  const MeanSe ms = mean_se({1.0, 2.0, 3.0, 4.0});
  CHECK(ms.mean == doctest::Approx(2.5));
  CHECK(ms.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));

  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(i);
    y.push_back(3.0 - 0.7 * i);
  }
  const LinearFit fit = linear_fit(x, y);
  CHECK(fit.slope == doctest::Approx(-0.7).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}
