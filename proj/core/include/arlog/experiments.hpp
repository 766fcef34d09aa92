#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "arlog/process.hpp"
#include "arlog/report.hpp"

namespace arlog::analysis {

struct RunControl {
  std::uint64_t seed = 0;
  int threads = 1;
};

// sqrt(n) (mean ln|X_t| - mu) per stationary path, compared to xi_rho.
struct CltConfig {
  std::string rho = "0.5";
  std::int64_t n = 10'000;
  std::int64_t reps = 2000;
  double std_tolerance = 0.05;  // relative
  double alpha = 0.01;
};
ExperimentReport clt_experiment(const CltConfig& config, const RunControl& run = {});

// Standardized ln|X_n| of explosive paths against the residual law. Only the
// nonstationary AR(1) model gets verdicts; ar-m and random-sign runs are
// exploratory (empirically standardized, no pass/fail).
struct ResidualConfig {
  sim::ModelSpec model = sim::ModelSpec::nonstationary_ar1(1.1);
  std::int64_t n = 50;
  std::int64_t reps = 100'000;
  double alpha = 0.01;
  double skewness_tolerance = 0.05;
};
ExperimentReport residual_experiment(const ResidualConfig& config, const RunControl& run = {});

// (1/n) ln|X_n| across replicates against the growth-rate target.
// Non-explosive models throw DomainError quoting the spectral radius.
struct LyapunovConfig {
  sim::ModelSpec model = sim::ModelSpec::nonstationary_ar1(1.5);
  std::int64_t n = 10'000;
  std::int64_t reps = 100;
  std::optional<double> tolerance;  // default depends on the model
};
ExperimentReport lyapunov_experiment(const LyapunovConfig& config, const RunControl& run = {});

struct RegionConfig {
  int grid = 41;
  double lo = -2.0;
  double hi = 2.0;
  double band = 1e-6;
};
ExperimentReport ar2_region_experiment(const RegionConfig& config);

// Long-run mean of ln|X_t| for a stationary AR(1). Gaussian noise is checked
// against -(ln 2 + gamma)/2, uniform noise at rho = 0 against ln(3)/2 - 1.
struct MarginalConfig {
  std::string rho = "0";
  sim::NoiseKind noise = sim::NoiseKind::kUniformSym;
  std::int64_t n = 1'000'000;
  std::int64_t reps = 1;
  std::optional<double> tolerance;
};
ExperimentReport marginal_experiment(const MarginalConfig& config, const RunControl& run = {});

}  // namespace arlog::analysis
