#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include "arlog/error.hpp"
#include "arlog/parallel.hpp"
#include "arlog/process.hpp"

namespace arlog::sim {
namespace {

constexpr double kMu = -(std::numbers::ln2 + std::numbers::egamma) / 2.0;

struct MeanVar {
  double mean;
  double var;
};

MeanVar mean_var(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, ss / n};
}

// Two-sample Kolmogorov-Smirnov distance.
double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

TEST(Rng, SameSeedSameStream) {
  RngState a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs |= x != c.next_u64();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, ChildStreamsDistinct) {
  std::vector<std::uint64_t> firsts;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    firsts.push_back(mix_seed(7, i));
    EXPECT_EQ(RngState::child(7, i).stream(), i + 1);
  }
  std::sort(firsts.begin(), firsts.end());
  EXPECT_EQ(std::adjacent_find(firsts.begin(), firsts.end()), firsts.end());
}

TEST(Noise, RademacherSupport) {
  RngState rng(1);
  int plus = 0;
  for (int i = 0; i < 100000; ++i) {
    const double e = draw_noise(rng, NoiseKind::kRademacher);
    ASSERT_TRUE(e == 1.0 || e == -1.0);
    plus += e > 0;
  }
  EXPECT_NEAR(plus / 1e5, 0.5, 4 * 0.5 / std::sqrt(1e5));
}

TEST(Noise, UniformMoments) {
  RngState rng(2);
  std::vector<double> xs(1'000'000);
  for (auto& x : xs) {
    x = draw_noise(rng, NoiseKind::kUniformSym);
    ASSERT_GT(x, -std::numbers::sqrt3);
    ASSERT_LT(x, std::numbers::sqrt3);
  }
  const auto mv = mean_var(xs);
  EXPECT_NEAR(mv.mean, 0.0, 4e-3);
  EXPECT_NEAR(mv.var, 1.0, 1e-2);
}

TEST(Noise, GaussianMoments) {
  RngState rng(3);
  std::vector<double> xs(1'000'000);
  for (auto& x : xs) x = draw_noise(rng, NoiseKind::kGaussian);
  const auto mv = mean_var(xs);
  EXPECT_NEAR(mv.mean, 0.0, 4e-3);
  EXPECT_NEAR(mv.var, 1.0, 1e-2);
}

TEST(Noise, ParseNames) {
  EXPECT_EQ(parse_noise_kind("uniform"), NoiseKind::kUniformSym);
  EXPECT_EQ(to_string(NoiseKind::kRademacher), "rademacher");
  EXPECT_THROW(parse_noise_kind("cauchy"), DomainError);
}

TEST(ModelSpec, Bounds) {
  EXPECT_THROW(ModelSpec::stationary_ar1(1.0), DomainError);
  EXPECT_THROW(ModelSpec::stationary_ar1(-1.2), DomainError);
  EXPECT_THROW(ModelSpec::nonstationary_ar1(0.9), DomainError);
  EXPECT_THROW(ModelSpec::nonstationary_ar1(-1.0), DomainError);
  EXPECT_THROW(ModelSpec::random_sign(1.0), DomainError);
  EXPECT_THROW(ModelSpec::ar_m({}), DomainError);
  EXPECT_THROW(ModelSpec::ar_m(std::vector<double>(33, 0.1)), DomainError);
  EXPECT_THROW(ModelSpec::ar_m({1.0}, 0.0), DomainError);
  EXPECT_THROW(ModelSpec::ar_m({std::nan("")}), DomainError);
  EXPECT_NO_THROW(ModelSpec::ar_m(std::vector<double>(32, 0.1)));
  EXPECT_EQ(ModelSpec::nonstationary_ar1(-2.0).kind(), ModelKind::kNonstationaryAr1);
  EXPECT_EQ(parse_model_kind("wright-trefethen"), ModelKind::kWrightTrefethen);
  EXPECT_EQ(ModelSpec::viswanath().name(), "viswanath");
  EXPECT_THROW(parse_model_kind("arma"), DomainError);
}

TEST(LogScaledState, RenormalizePreservesValue) {
  const double init[] = {3.0e12, -7.5, 0.0};
  LogScaledState st(init);
  EXPECT_EQ(st.true_value(0), 3.0e12);
  EXPECT_EQ(st.true_value(1), -7.5);
  EXPECT_EQ(st.true_value(2), 0.0);
  EXPECT_GE(std::abs(st.component(0)), 0.5);
  EXPECT_LT(std::abs(st.component(0)), 1.0);
  EXPECT_NEAR(st.ln_abs(0), std::log(3.0e12), 1e-14);
  EXPECT_EQ(st.inverse_scale(), std::ldexp(1.0, -static_cast<int>(st.binary_exponent())));
  EXPECT_EQ(st.ln_abs(2), -std::numeric_limits<double>::infinity());
}

TEST(LogScaledState, StaysInWindow) {
  LogScaledState st(1);
  st.push(1.0);
  EXPECT_FALSE(st.renormalize());
  for (int i = 0; i < 200; ++i) {
    st.push(st.component(0) * 1.0e3);
    st.renormalize();
    EXPECT_LE(std::abs(st.component(0)), LogScaledState::kUpper);
    EXPECT_GE(std::abs(st.component(0)), LogScaledState::kLower);
  }
  EXPECT_NEAR(st.ln_abs(0), 200 * std::log(1.0e3), 1e-9);
}

TEST(Simulate, RandomSignAllPlusClosedForm) {
  for (double rho : {1.1, 1.5, -2.0, 3.0}) {
    for (std::int64_t n : {1, 5, 40, 500}) {
      SimOptions opt;
      opt.forced_signs.assign(static_cast<std::size_t>(n), 1);
      RngState rng(0);
      const auto r = simulate_ln_abs(ModelSpec::random_sign(rho), n, rng, opt);
      // sqrt(rho^2-1) (rho^n - 1) / (rho - 1), in logs.
      const double nl = static_cast<double>(n) * std::log(std::abs(rho));
      const double rho_n_sign = (rho < 0 && n % 2 == 1) ? -1.0 : 1.0;
      double expected;
      if (nl < 600) {
        expected = 0.5 * std::log(rho * rho - 1.0) +
                   std::log(std::abs((std::pow(rho, static_cast<double>(n)) - 1.0) / (rho - 1.0)));
      } else {
        expected = 0.5 * std::log(rho * rho - 1.0) + nl +
                   std::log(std::abs((rho_n_sign - std::exp(-nl)) / (rho - 1.0)));
      }
      EXPECT_NEAR(r.ln_abs_final, expected, 1e-11 * std::max(1.0, std::abs(expected)))
          << "rho=" << rho << " n=" << n;
    }
  }
}

TEST(Simulate, ViswanathBruteForce) {
  constexpr int n = 10;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    SimOptions opt;
    std::vector<int> signs;
    for (int i = 0; i < n - 1; ++i) signs.push_back((mask >> i) & 1u ? 1 : -1);
    opt.forced_signs = signs;
    opt.retain_series = true;
    RngState rng(0);
    const auto r = simulate_ln_abs(ModelSpec::viswanath(), n, rng, opt);

    std::int64_t prev = 1, cur = 1;
    ASSERT_EQ(r.series.size(), static_cast<std::size_t>(n));
    for (int t = 2; t <= n; ++t) {
      const std::int64_t next = cur + signs[t - 2] * prev;
      prev = cur;
      cur = next;
      const auto& p = r.series[static_cast<std::size_t>(t - 1)];
      ASSERT_EQ(p.t, t);
      ASSERT_EQ(p.sign, (cur > 0) - (cur < 0));
      if (cur != 0) ASSERT_DOUBLE_EQ(p.ln_abs_x, std::log(std::abs(static_cast<double>(cur))));
    }
    ASSERT_EQ(r.log_of_zero, cur == 0);
    if (cur != 0) EXPECT_DOUBLE_EQ(r.ln_abs_final, std::log(std::abs(static_cast<double>(cur))));
  }
}

TEST(Simulate, ViswanathMatchesIntegerRecursionAt64) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RngState draw(seed);
    std::vector<int> signs;
    for (int i = 0; i < 63; ++i) signs.push_back((draw.next_u64() >> 63) ? 1 : -1);
    SimOptions opt;
    opt.forced_signs = signs;
    RngState rng(0);
    const auto r = simulate_ln_abs(ModelSpec::viswanath(), 64, rng, opt);
    std::int64_t prev = 1, cur = 1;
    for (int t = 2; t <= 64; ++t) {
      const std::int64_t next = cur + signs[t - 2] * prev;
      prev = cur;
      cur = next;
    }
    ASSERT_EQ(r.log_of_zero, cur == 0);
    if (cur != 0) {
      EXPECT_EQ(r.sign_final, cur > 0 ? 1 : -1);
      EXPECT_NEAR(r.ln_abs_final, std::log(std::abs(static_cast<double>(cur))), 1e-13);
    }
  }
}

TEST(Simulate, LogOfZeroReported) {
  SimOptions opt;
  opt.forced_signs = {-1};
  RngState rng(0);
  const auto r = simulate_ln_abs(ModelSpec::viswanath(), 2, rng, opt);
  EXPECT_TRUE(r.log_of_zero);
  EXPECT_EQ(r.sign_final, 0);
  EXPECT_TRUE(std::isnan(r.ln_abs_final));
  opt.forced_signs = {};
  opt.forced_signs.push_back(1);
  EXPECT_THROW(simulate_ln_abs(ModelSpec::viswanath(), 5, rng, opt), DomainError);
}

TEST(Simulate, RenormalizationIsExact) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::int64_t n : {1, 10, 25, 40}) {
      SimOptions plain;
      plain.renormalize = false;
      RngState a(seed), b(seed);
      const auto with = simulate_ln_abs(ModelSpec::nonstationary_ar1(1.1), n, a);
      const auto without = simulate_ln_abs(ModelSpec::nonstationary_ar1(1.1), n, b, plain);
      EXPECT_NEAR(with.ln_abs_final, without.ln_abs_final, 1e-10);
    }
  }
}

TEST(Simulate, ArMReducesToAr1) {
  const double rho = 1.5;
  RngState a(9), b(9);
  const auto x = simulate_ln_abs(ModelSpec::nonstationary_ar1(rho), 3000, a);
  const auto y = simulate_ln_abs(ModelSpec::ar_m({rho}, std::sqrt(rho * rho - 1.0)), 3000, b);
  EXPECT_EQ(x.ln_abs_final, y.ln_abs_final);
  EXPECT_EQ(x.sign_final, y.sign_final);
}

TEST(Simulate, NonstationaryGrowthRate) {
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngState rng(seed);
    const auto r = simulate_ln_abs(ModelSpec::nonstationary_ar1(1.5), 10000, rng);
    inside += std::abs(r.ln_abs_final / 1e4 - std::log(1.5)) < 0.02;
  }
  EXPECT_GE(inside, 99);
}

TEST(Simulate, NoOverflowOnLongPaths) {
  RngState rng(5);
  const auto r = simulate_ln_abs(ModelSpec::nonstationary_ar1(10.0), 100000, rng);
  EXPECT_TRUE(std::isfinite(r.ln_abs_final));
  EXPECT_NEAR(r.ln_abs_final / 1e5, std::log(10.0), 1e-3);
}

TEST(Simulate, SeriesRetention) {
  SimOptions opt;
  opt.retain_series = true;
  opt.accumulate_log_sum = true;
  RngState rng(11);
  const auto r = simulate_ln_abs(ModelSpec::stationary_ar1(0.3), 500, rng, opt);
  ASSERT_EQ(r.series.size(), 500u);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.series.size(); ++i) {
    EXPECT_EQ(r.series[i].t, static_cast<std::int64_t>(i + 1));
    sum += r.series[i].ln_abs_x;
  }
  EXPECT_DOUBLE_EQ(r.log_sum, sum);
  EXPECT_EQ(r.series.back().ln_abs_x, r.ln_abs_final);

  opt.retain_series = true;
  RngState rng2(1);
  const auto v = simulate_ln_abs(ModelSpec::viswanath(), 4, rng2, opt);
  ASSERT_EQ(v.series.size(), 4u);
  EXPECT_EQ(v.series[0].ln_abs_x, 0.0);
  EXPECT_EQ(v.series[0].t, 1);
}

TEST(Simulate, StationaryMarginalMean) {
  SimOptions opt;
  opt.accumulate_log_sum = true;
  RngState rng(2024);
  const double n = 1e6;
  const auto r = simulate_ln_abs(ModelSpec::stationary_ar1(0.5), 1'000'000, rng, opt);
  EXPECT_EQ(r.zero_steps, 0);
  EXPECT_NEAR(r.log_sum / n, kMu, 4 * 1.26199222 / std::sqrt(n));
}

TEST(Simulate, UniformNoiseMarginalMean) {
  SimOptions opt;
  opt.accumulate_log_sum = true;
  RngState rng(2025);
  const double n = 1e6;
  const auto r = simulate_ln_abs(ModelSpec::stationary_ar1(0.0, NoiseKind::kUniformSym), 1'000'000, rng, opt);
  const double mean = r.log_sum / n;
  EXPECT_NEAR(mean, std::log(3.0) / 2.0 - 1.0, 4.0 / std::sqrt(n));
  // Var ln|U| = 1 for uniform noise, so the standard error is 1/sqrt(n).
  EXPECT_GT(std::abs(mean - std::log(0.2)) * std::sqrt(n), 100.0);
}

TEST(Simulate, ViswanathConstant) {
  RngState rng(77);
  const auto r = simulate_ln_abs(ModelSpec::viswanath(), 1'000'000, rng);
  EXPECT_NEAR(r.ln_abs_final / 1e6, std::log(1.13198824), 0.005);
}

TEST(Simulate, WrightTrefethenConstant) {
  RngState rng(78);
  const auto r = simulate_ln_abs(ModelSpec::wright_trefethen(), 1'000'000, rng);
  EXPECT_NEAR(r.ln_abs_final / 1e6, std::log(1.057473553704), 0.005);
}

TEST(SampleFinal, ShortcutMatchesRecurrence) {
  const auto model = ModelSpec::nonstationary_ar1(1.5);
  const auto rec = sample_final_values(model, 30, 100000, 1, SamplingMethod::kRecurrence);
  const auto exact = sample_final_values(model, 30, 100000, 2, SamplingMethod::kExact);
  ASSERT_EQ(rec.ln_abs.size(), 100000u);
  ASSERT_EQ(exact.ln_abs.size(), 100000u);
  const double d = ks_distance(rec.ln_abs, exact.ln_abs);
  // 1% two-sample critical value: 1.628 * sqrt((n+m)/(n m)).
  EXPECT_LT(d, 1.628 * std::sqrt(2.0 / 1e5));
}

TEST(SampleFinal, VarianceAndMean) {
  const auto r = sample_final_values(ModelSpec::nonstationary_ar1(1.1), 10, 1'000'000, 3);
  std::vector<double> xs(r.ln_abs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = r.signs[i] * std::exp(r.ln_abs[i]);
  const auto mv = mean_var(xs);
  const double target = std::pow(1.1, 20) - 1.0;
  EXPECT_NEAR(mv.var / target, 1.0, 0.01);
  EXPECT_NEAR(mv.mean, 0.0, 4.0 * std::sqrt(mv.var / xs.size()));
}

TEST(SampleFinal, ThreadCountInvariant) {
  const auto model = ModelSpec::wright_trefethen();
  const auto a = sample_final_values(model, 2000, 257, 99, SamplingMethod::kRecurrence, 1);
  const auto b = sample_final_values(model, 2000, 257, 99, SamplingMethod::kRecurrence, 4);
  const auto c = sample_final_values(model, 2000, 257, 99, SamplingMethod::kRecurrence, 1);
  EXPECT_EQ(a.ln_abs, b.ln_abs);
  EXPECT_EQ(a.ln_abs, c.ln_abs);
  EXPECT_EQ(a.signs, b.signs);
}

TEST(SampleFinal, CountsZeros) {
  // Viswanath hits zero at step 2 on a '-' draw; n = 2 makes that the final value.
  const auto r = sample_final_values(ModelSpec::viswanath(), 2, 1000, 4);
  EXPECT_GT(r.log_of_zero, 400);
  EXPECT_LT(r.log_of_zero, 600);
  EXPECT_EQ(r.ln_abs.size() + static_cast<std::size_t>(r.log_of_zero), 1000u);
  EXPECT_THROW(sample_final_values(ModelSpec::viswanath(), 2, 0, 4), DomainError);
  EXPECT_THROW(sample_final_values(ModelSpec::viswanath(), 2, 10, 4, SamplingMethod::kExact),
               DomainError);
}

TEST(Parallel, PairwiseSumOrderFixed) {
  std::vector<double> xs(1001);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 1.0 / static_cast<double>(i + 1);
  EXPECT_NEAR(pairwise_sum(xs), std::accumulate(xs.begin(), xs.end(), 0.0), 1e-12);
  EXPECT_EQ(pairwise_sum({}), 0.0);
}

TEST(Parallel, PropagatesExceptions) {
  EXPECT_THROW(parallel_for_index(100, 3,
                                  [](std::int64_t i) {
                                    if (i == 57) throw DomainError("boom");
                                  }),
               DomainError);
}

}  // namespace
}  // namespace arlog::sim
