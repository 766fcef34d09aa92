#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "arlog/rng.hpp"

namespace arlog::sim {

struct StationaryAr1 {
  double rho;
  NoiseKind noise;
};
struct NonstationaryAr1 {
  double rho;
};
struct ArM {
  std::vector<double> coeffs;  // a_1 .. a_m
  double scale;                // b
  NoiseKind noise;
};
struct RandomSign {
  double rho;
};
struct Viswanath {};
struct WrightTrefethen {};

enum class ModelKind {
  kStationaryAr1,
  kNonstationaryAr1,
  kArM,
  kRandomSign,
  kViswanath,
  kWrightTrefethen,
};

ModelKind parse_model_kind(std::string_view name);
std::string_view to_string(ModelKind kind);

class ModelSpec {
 public:
  using Variant =
      std::variant<StationaryAr1, NonstationaryAr1, ArM, RandomSign, Viswanath, WrightTrefethen>;
  static constexpr std::size_t kMaxOrder = 32;

  static ModelSpec stationary_ar1(double rho, NoiseKind noise = NoiseKind::kGaussian);
  static ModelSpec nonstationary_ar1(double rho);
  static ModelSpec ar_m(std::vector<double> coeffs, double scale = 1.0,
                        NoiseKind noise = NoiseKind::kGaussian);
  static ModelSpec random_sign(double rho);
  static ModelSpec viswanath();
  static ModelSpec wright_trefethen();

  ModelKind kind() const { return static_cast<ModelKind>(v_.index()); }
  std::string_view name() const { return to_string(kind()); }
  const Variant& variant() const { return v_; }

  template <class T>
  const T& as() const { return std::get<T>(v_); }

 private:
  explicit ModelSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// State vector (newest first) stored as components * 2^E. Between calls to
// renormalize() the largest component stays within [2^-30, 2^30]; right
// after a rescale it lies in [1/2, 1).
class LogScaledState {
 public:
  static constexpr std::size_t kMaxOrder = ModelSpec::kMaxOrder;
  static constexpr double kUpper = 0x1.0p30;
  static constexpr double kLower = 0x1.0p-30;

  explicit LogScaledState(std::size_t order);
  LogScaledState(std::span<const double> newest_first);

  std::size_t order() const { return order_; }
  double component(std::size_t lag) const { return values_[lag]; }
  std::span<const double> components() const { return {values_.data(), order_}; }
  std::int64_t binary_exponent() const { return exponent_; }
  double log_scale() const;
  // 2^-E, used to bring fresh noise into the scaled frame. May underflow to 0.
  double inverse_scale() const { return inverse_scale_; }

  void push(double scaled_value);
  // Rescales by an exact power of two when the largest component leaves
  // [kLower, kUpper]. Returns true when a rescale happened.
  bool renormalize();

  // ln|x_{newest - lag}|, -inf for an exact zero.
  double ln_abs(std::size_t lag = 0) const;
  // Materialized value; only meaningful while it fits in a double.
  double true_value(std::size_t lag = 0) const;

 private:
  std::array<double, kMaxOrder> values_{};
  std::size_t order_;
  std::int64_t exponent_ = 0;
  double inverse_scale_ = 1.0;
};

struct SimOptions {
  bool retain_series = false;
  bool accumulate_log_sum = false;  // sum of ln|X_t| over t = 1..n
  bool renormalize = true;
  std::int64_t burn_in = 10'000;    // stationary AR(1) with non-gaussian noise
  std::vector<int> forced_signs;    // test hook for random_sign and viswanath
};

struct PathPoint {
  std::int64_t t;
  double ln_abs_x;
  int sign;
};

struct PathResult {
  double ln_abs_final = std::numeric_limits<double>::quiet_NaN();
  int sign_final = 0;
  bool log_of_zero = false;
  double log_sum = 0.0;
  std::int64_t zero_steps = 0;  // steps with X_t == 0 skipped by log_sum
  std::vector<PathPoint> series;
};

// Runs the recurrence to step n and returns ln|X_n| without ever
// materializing X_n. For stationary AR(1) with gaussian noise X_1 ~ N(0,1);
// AR(m) and the explosive AR(1)/random-sign models start from zeros;
// Viswanath and Wright-Trefethen start from X_0 = X_1 = 1.
PathResult simulate_ln_abs(const ModelSpec& model, std::int64_t n, RngState& rng,
                           const SimOptions& options = {});

enum class SamplingMethod { kRecurrence, kExact };

struct FinalValues {
  std::vector<double> ln_abs;  // one entry per nonzero replicate, in replicate order
  std::vector<int> signs;
  std::int64_t log_of_zero = 0;
};

// Replicate i uses RngState::child(seed, i), so output does not depend on
// the thread count. kExact is only available for nonstationary AR(1).
FinalValues sample_final_values(const ModelSpec& model, std::int64_t n, std::int64_t reps,
                                std::uint64_t seed,
                                SamplingMethod method = SamplingMethod::kRecurrence,
                                int threads = 1);

}  // namespace arlog::sim
