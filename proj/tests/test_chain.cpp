#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "blockspin/chain.hpp"
#include "blockspin/exact.hpp"
#include "blockspin/stats.hpp"

using namespace blockspin;

namespace {

// brute-force partition function of the free-boundary chain: site terms
// (B beta / 2) m_k^2, bond terms (B alpha) m_k m_{k+1} for k = 1..s-1
double free_chain_log_z_brute(const ChainSpec& chain) {
  const int b = chain.block_size;
  const std::vector<double> logw = apriori_log_weights(b);
  std::vector<double> values(b + 1);
  for (int l = 0; l <= b; ++l) values[l] = lattice_value(l, b);

  std::vector<int> digits(chain.n_blocks, 0);
  long double total = 0.0L;
  for (;;) {
    double e = 0.0;
    for (int k = 0; k < chain.n_blocks; ++k) {
      e += 0.5 * b * chain.beta * values[digits[k]] * values[digits[k]] +
           logw[digits[k]];
      if (k + 1 < chain.n_blocks)
        e += b * chain.alpha * values[digits[k]] * values[digits[k + 1]];
    }
    total += std::exp((long double)e);
    int k = chain.n_blocks - 1;
    while (k >= 0 && digits[k] == b) digits[k--] = 0;
    if (k < 0) break;
    ++digits[k];
  }
  return static_cast<double>(std::log(total));
}

}  // namespace

TEST_CASE("transfer matrix: symmetry, positivity, trace vs enumeration") {
  for (const auto& [b, s] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {4, 6}, {1, 5}}) {
    const ChainSpec chain{b, 0.5, 0.2, s};
    const TransferMatrix t = build_transfer_matrix(chain);
    CHECK((t.scaled - t.scaled.transpose()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(t.scaled.minCoeff() > 0.0);

    const double z_transfer = log_partition_periodic(t);
    const double z_enum = exact_law(chain.to_params()).log_Z;
    CHECK(z_transfer == doctest::Approx(z_enum).epsilon(1e-10));
  }
}

TEST_CASE("marginals: symmetric, translation invariant, match enumeration") {
  const ChainSpec chain{3, 0.5, 0.2, 4};
  const TransferMatrix t = build_transfer_matrix(chain);
  const std::vector<double> marg = chain_marginal(t);
  const int b = chain.block_size;
  for (int a = 0; a <= b; ++a)
    CHECK(marg[a] == doctest::Approx(marg[b - a]).epsilon(1e-13));

  const ExactLaw law = exact_law(chain.to_params());
  std::vector<double> want(b + 1, 0.0);
  for (std::int64_t r = 0; r < law.n_states(); ++r)
    want[law.counts_at(r)[2]] += law.prob(r);
  for (int a = 0; a <= b; ++a) CHECK(marg[a] == doctest::Approx(want[a]).epsilon(1e-11));

  // translation invariance: the exact marginal is the same at every site
  for (int site : {0, 1, 3}) {
    std::vector<double> other(b + 1, 0.0);
    for (std::int64_t r = 0; r < law.n_states(); ++r)
      other[law.counts_at(r)[site]] += law.prob(r);
    for (int a = 0; a <= b; ++a)
      CHECK(other[a] == doctest::Approx(want[a]).epsilon(1e-12));
  }

  // block size 1: single-site marginal is uniform on +-1
  const TransferMatrix t1 = build_transfer_matrix({1, 0.5, 0.2, 8});
  const std::vector<double> m1 = chain_marginal(t1);
  CHECK(m1[0] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(m1[1] == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("two-point function matches enumeration and decays geometrically") {
  const ChainSpec chain{2, 0.5, 0.2, 5};
  const TransferMatrix t = build_transfer_matrix(chain);
  const ExactLaw law = exact_law(chain.to_params());
  for (int d = 0; d <= 2; ++d) {
    double want = 0.0;
    for (std::int64_t r = 0; r < law.n_states(); ++r) {
      const MagnetizationVector m = law.magnetization_at(r);
      want += law.prob(r) * m[0] * m[d];
    }
    CHECK(two_point(t, d) == doctest::Approx(want).epsilon(1e-11));
  }

  // long ring: log C(d) is linear in d with slope log(lambda2/lambda1)
  const TransferMatrix big = build_transfer_matrix({2, 0.8, 0.25, 128});
  std::vector<double> xs, ys;
  for (int d = 1; d <= 8; ++d) {
    xs.push_back(d);
    ys.push_back(std::log(two_point(big, d)));
  }
  const LinearFit fit = linear_fit(xs, ys);
  CHECK(fit.r_squared > 0.999);
  const ChainStats stats = total_magnetization_stats({2, 0.8, 0.25, 128});
  CHECK(fit.slope ==
        doctest::Approx(std::log(std::abs(stats.lambda2) / stats.lambda1)).epsilon(1e-6));
}

TEST_CASE("total magnetization: zero mean, bounded variance, positive gap") {
  for (const auto& [beta, alpha] :
       std::vector<std::pair<double, double>>{{0.5, 0.2}, {0.8, 0.25}, {1.2, 0.3}}) {
    std::vector<double> v;
    for (int s : {8, 16, 32, 64, 128}) {
      const ChainStats stats = total_magnetization_stats({4, beta, alpha, s});
      CHECK(std::abs(stats.mean_total) < 1e-14);
      CHECK(stats.spectral_gap > 0.0);
      CHECK(stats.correlation_length > 0.0);
      v.push_back(stats.variance_per_block);
    }
    // converges to a finite limit: increments shrink geometrically, the last
    // doubling is already converged, and the total spread stays bounded
    for (std::size_t i = 2; i < v.size(); ++i)
      CHECK(std::abs(v[i] - v[i - 1]) < 0.5 * std::abs(v[i - 1] - v[i - 2]) + 1e-12);
    CHECK(std::abs(v.back() - v[v.size() - 2]) < 1e-9);
    CHECK(v.back() <= v.front() * 1.10);
  }
}

TEST_CASE("free-boundary partition function against brute force") {
  for (const auto& [b, s] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {2, 1}}) {
    const ChainSpec chain{b, 0.6, 0.2, s};
    const TransferMatrix t = build_transfer_matrix(chain);
    CHECK(log_partition_free(t) ==
          doctest::Approx(free_chain_log_z_brute(chain)).epsilon(1e-11));
  }
}

TEST_CASE("a-priori weights: standard normalizes, printed variant does not") {
  for (int b : {2, 3, 4, 8}) {
    double sum_std = 0.0, sum_printed = 0.0;
    for (double lw : apriori_log_weights(b)) sum_std += std::exp(lw);
    for (double lw : apriori_log_weights_printed(b)) sum_printed += std::exp(lw);
    CHECK(sum_std == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sum_printed != doctest::Approx(1.0).epsilon(1e-6));
  }
  // they agree only at block size 1
  const auto std1 = apriori_log_weights(1);
  const auto printed1 = apriori_log_weights_printed(1);
  CHECK(std1[0] == doctest::Approx(printed1[0]));
  CHECK(std1[1] == doctest::Approx(printed1[1]));
}

TEST_CASE("masked traces: event probabilities from the transfer matrix") {
  const ChainSpec chain{4, 0.5, 0.2, 4};
  const TransferMatrix t = build_transfer_matrix(chain);
  const ExactLaw law = exact_law(chain.to_params());

  const double eps = 0.3;
  double want_in = 0.0, want_agree = 0.0;
  for (std::int64_t r = 0; r < law.n_states(); ++r) {
    const MagnetizationVector m = law.magnetization_at(r);
    bool all_in = true, agree = true;
    for (std::size_t k = 0; k < m.size(); ++k) {
      all_in = all_in && std::abs(m[k]) <= eps;
      agree = agree && m[k] * m[(k + 1) % m.size()] >= 0.0;
    }
    if (all_in) want_in += law.prob(r);
    if (agree) want_agree += law.prob(r);
  }
  CHECK(prob_all_blocks(t, [&](double m) { return std::abs(m) <= eps; }) ==
        doctest::Approx(want_in).epsilon(1e-11));
  CHECK(prob_no_sign_change(t) == doctest::Approx(want_agree).epsilon(1e-11));
}

TEST_CASE("chain CSV dump shape") {
  const TransferMatrix t = build_transfer_matrix({2, 0.5, 0.2, 8});
  std::ostringstream os;
  dump_chain_csv(t, 4, os);
  const std::string text = os.str();
  CHECK(text.find("value,marginal") == 0);
  CHECK(text.find("distance,two_point") != std::string::npos);
}
