#include "arlog/process.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "arlog/error.hpp"
#include "arlog/parallel.hpp"

namespace arlog::sim {
namespace {

constexpr std::string_view kModelNames[] = {
    "stationary-ar1", "nonstationary-ar1", "ar-m", "random-sign", "viswanath", "wright-trefethen",
};

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

// Collects the per-step observations requested by SimOptions.
class Observer {
 public:
  Observer(const SimOptions& options, PathResult& result, std::int64_t n)
      : options_(options), result_(result) {
    if (options_.retain_series) result_.series.reserve(static_cast<std::size_t>(n));
  }

  bool active() const { return options_.retain_series || options_.accumulate_log_sum; }

  void observe(std::int64_t t, double ln_abs, int sign) {
    if (options_.retain_series) result_.series.push_back({t, ln_abs, sign});
    if (options_.accumulate_log_sum) {
      if (sign == 0) {
        ++result_.zero_steps;
      } else {
        result_.log_sum += ln_abs;
      }
    }
  }

 private:
  const SimOptions& options_;
  PathResult& result_;
};

int sign_of(double x) { return (x > 0) - (x < 0); }

double ln_abs_of(double x) {
  return x == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(x));
}

void finish(PathResult& result, const LogScaledState& state) {
  const double c = state.component(0);
  result.sign_final = sign_of(c);
  result.log_of_zero = c == 0.0;
  result.ln_abs_final = result.log_of_zero ? std::numeric_limits<double>::quiet_NaN()
                                           : state.ln_abs(0);
}

class SignSource {
 public:
  SignSource(RngState& rng, const std::vector<int>& forced, std::int64_t needed)
      : rng_(rng), forced_(forced) {
    if (!forced_.empty() && static_cast<std::int64_t>(forced_.size()) < needed) {
      throw DomainError("forced sign sequence is shorter than the path");
    }
  }
  double next() {
    if (!forced_.empty()) return forced_[index_++] >= 0 ? 1.0 : -1.0;
    return (rng_.next_u64() >> 63) != 0 ? 1.0 : -1.0;
  }

 private:
  RngState& rng_;
  const std::vector<int>& forced_;
  std::size_t index_ = 0;
};

PathResult run_stationary(const StationaryAr1& m, std::int64_t n, RngState& rng,
                          const SimOptions& options) {
  PathResult result;
  Observer obs(options, result, n);
  const double s = std::sqrt(1.0 - m.rho * m.rho);
  double x;
  if (m.noise == NoiseKind::kGaussian) {
    x = rng.normal();
  } else {
    x = 0.0;
    for (std::int64_t i = 0; i <= options.burn_in; ++i) x = m.rho * x + s * draw_noise(rng, m.noise);
  }
  if (obs.active()) obs.observe(1, ln_abs_of(x), sign_of(x));
  for (std::int64_t t = 2; t <= n; ++t) {
    x = m.rho * x + s * draw_noise(rng, m.noise);
    if (obs.active()) obs.observe(t, ln_abs_of(x), sign_of(x));
  }
  result.sign_final = sign_of(x);
  result.log_of_zero = x == 0.0;
  result.ln_abs_final = result.log_of_zero ? std::numeric_limits<double>::quiet_NaN()
                                           : std::log(std::abs(x));
  return result;
}

// Shared driver for the recurrences kept in log-scaled form. `step` maps the
// current state to the next scaled value.
template <class Step>
PathResult run_scaled(LogScaledState state, std::int64_t first_t, std::int64_t n,
                      const SimOptions& options, Step&& step) {
  PathResult result;
  Observer obs(options, result, n);
  if (obs.active()) {
    for (std::int64_t t = 1; t < first_t; ++t) {
      const auto lag = static_cast<std::size_t>(first_t - 1 - t);
      obs.observe(t, state.ln_abs(lag), sign_of(state.component(lag)));
    }
  }
  for (std::int64_t t = first_t; t <= n; ++t) {
    state.push(step(state));
    if (options.renormalize) state.renormalize();
    if (obs.active()) obs.observe(t, state.ln_abs(0), sign_of(state.component(0)));
  }
  finish(result, state);
  return result;
}

}  // namespace

ModelKind parse_model_kind(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kModelNames); ++i) {
    if (kModelNames[i] == name) return static_cast<ModelKind>(i);
  }
  throw DomainError("unknown model: " + std::string(name));
}

std::string_view to_string(ModelKind kind) { return kModelNames[static_cast<std::size_t>(kind)]; }

ModelSpec ModelSpec::stationary_ar1(double rho, NoiseKind noise) {
  require_finite(rho, "rho");
  if (std::abs(rho) >= 1.0) throw DomainError("rho out of range");
  return ModelSpec(StationaryAr1{rho, noise});
}

ModelSpec ModelSpec::nonstationary_ar1(double rho) {
  require_finite(rho, "rho");
  if (std::abs(rho) <= 1.0) throw DomainError("rho out of range");
  return ModelSpec(NonstationaryAr1{rho});
}

ModelSpec ModelSpec::ar_m(std::vector<double> coeffs, double scale, NoiseKind noise) {
  if (coeffs.empty() || coeffs.size() > kMaxOrder) throw DomainError("order must be in 1..32");
  for (double a : coeffs) require_finite(a, "coefficient");
  require_finite(scale, "scale");
  if (scale <= 0.0) throw DomainError("scale must be positive");
  return ModelSpec(ArM{std::move(coeffs), scale, noise});
}

ModelSpec ModelSpec::random_sign(double rho) {
  require_finite(rho, "rho");
  if (std::abs(rho) <= 1.0) throw DomainError("rho out of range");
  return ModelSpec(RandomSign{rho});
}

ModelSpec ModelSpec::viswanath() { return ModelSpec(Viswanath{}); }
ModelSpec ModelSpec::wright_trefethen() { return ModelSpec(WrightTrefethen{}); }

LogScaledState::LogScaledState(std::size_t order) : order_(order) {
  if (order == 0 || order > kMaxOrder) throw DomainError("state order must be in 1..32");
}

LogScaledState::LogScaledState(std::span<const double> newest_first)
    : LogScaledState(newest_first.size()) {
  std::copy(newest_first.begin(), newest_first.end(), values_.begin());
  renormalize();
}

double LogScaledState::log_scale() const {
  return static_cast<double>(exponent_) * std::numbers::ln2;
}

void LogScaledState::push(double scaled_value) {
  for (std::size_t i = order_ - 1; i > 0; --i) values_[i] = values_[i - 1];
  values_[0] = scaled_value;
}

bool LogScaledState::renormalize() {
  double peak = 0.0;
  for (std::size_t i = 0; i < order_; ++i) peak = std::max(peak, std::abs(values_[i]));
  if (peak == 0.0 || (peak >= kLower && peak <= kUpper)) return false;
  int e = 0;
  std::frexp(peak, &e);
  for (std::size_t i = 0; i < order_; ++i) values_[i] = std::ldexp(values_[i], -e);
  exponent_ += e;
  inverse_scale_ = std::ldexp(1.0, static_cast<int>(std::clamp<std::int64_t>(-exponent_, -2000, 1000)));
  return true;
}

double LogScaledState::ln_abs(std::size_t lag) const {
  const double c = values_[lag];
  if (c == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(c)) + log_scale();
}

double LogScaledState::true_value(std::size_t lag) const {
  return std::ldexp(values_[lag], static_cast<int>(std::clamp<std::int64_t>(exponent_, -4000, 4000)));
}

PathResult simulate_ln_abs(const ModelSpec& model, std::int64_t n, RngState& rng,
                           const SimOptions& options) {
  if (n < 1) throw DomainError("n must be at least 1");
  switch (model.kind()) {
    case ModelKind::kStationaryAr1:
      return run_stationary(model.as<StationaryAr1>(), n, rng, options);

    case ModelKind::kNonstationaryAr1: {
      const double rho = model.as<NonstationaryAr1>().rho;
      const double s = std::sqrt(rho * rho - 1.0);
      return run_scaled(LogScaledState(1), 1, n, options, [&](const LogScaledState& st) {
        return rho * st.component(0) + s * rng.normal() * st.inverse_scale();
      });
    }

    case ModelKind::kArM: {
      const auto& m = model.as<ArM>();
      const std::size_t order = m.coeffs.size();
      return run_scaled(LogScaledState(order), 1, n, options, [&](const LogScaledState& st) {
        double acc = 0.0;
        for (std::size_t i = 0; i < order; ++i) acc += m.coeffs[i] * st.component(i);
        return acc + m.scale * draw_noise(rng, m.noise) * st.inverse_scale();
      });
    }

    case ModelKind::kRandomSign: {
      const double rho = model.as<RandomSign>().rho;
      const double s = std::sqrt(rho * rho - 1.0);
      SignSource signs(rng, options.forced_signs, n);
      return run_scaled(LogScaledState(1), 1, n, options, [&](const LogScaledState& st) {
        return rho * st.component(0) + signs.next() * s * st.inverse_scale();
      });
    }

    case ModelKind::kViswanath: {
      SignSource signs(rng, options.forced_signs, n - 1);
      const double init[] = {1.0, 1.0};
      return run_scaled(LogScaledState(init), 2, n, options, [&](const LogScaledState& st) {
        return st.component(0) + signs.next() * st.component(1);
      });
    }

    case ModelKind::kWrightTrefethen: {
      const double init[] = {1.0, 1.0};
      return run_scaled(LogScaledState(init), 2, n, options, [&](const LogScaledState& st) {
        return st.component(0) + rng.normal() * st.component(1);
      });
    }
  }
  throw DomainError("unknown model");
}

FinalValues sample_final_values(const ModelSpec& model, std::int64_t n, std::int64_t reps,
                                std::uint64_t seed, SamplingMethod method, int threads) {
  if (reps < 1) throw DomainError("reps must be at least 1");
  if (n < 1) throw DomainError("n must be at least 1");
  if (method == SamplingMethod::kExact && model.kind() != ModelKind::kNonstationaryAr1) {
    throw DomainError("exact sampling is only available for nonstationary-ar1");
  }
  const auto count = static_cast<std::size_t>(reps);
  std::vector<double> ln_abs(count);
  std::vector<int> signs(count);

  double half_log_var = 0.0;
  if (method == SamplingMethod::kExact) {
    // 0.5 * ln(rho^{2n} - 1) without overflow.
    const double two_n_log = 2.0 * static_cast<double>(n) * std::log(std::abs(model.as<NonstationaryAr1>().rho));
    half_log_var = 0.5 * (two_n_log + std::log(-std::expm1(-two_n_log)));
  }

  parallel_for_index(reps, threads, [&](std::int64_t i) {
    RngState rng = RngState::child(seed, static_cast<std::uint64_t>(i));
    const auto k = static_cast<std::size_t>(i);
    if (method == SamplingMethod::kExact) {
      const double z = rng.normal();
      ln_abs[k] = half_log_var + std::log(std::abs(z));
      signs[k] = sign_of(z);
    } else {
      const PathResult r = simulate_ln_abs(model, n, rng);
      ln_abs[k] = r.ln_abs_final;
      signs[k] = r.sign_final;
    }
  });

  FinalValues out;
  out.ln_abs.reserve(count);
  out.signs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (signs[k] == 0) {
      ++out.log_of_zero;
      continue;
    }
    out.ln_abs.push_back(ln_abs[k]);
    out.signs.push_back(signs[k]);
  }
  return out;
}

}  // namespace arlog::sim
