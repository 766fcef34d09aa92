#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace arlog::sim {

// Seeded random stream. Replicate i of an experiment with seed s draws from
// RngState::child(s, i); distinct indices give distinct engine seeds.
// Output is bit-identical for identical (seed, stream) within one build.
class RngState {
 public:
  explicit RngState(std::uint64_t seed, std::uint64_t stream = 0);
  static RngState child(std::uint64_t seed, std::uint64_t index) { return RngState(seed, index + 1); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on the open interval (0, 1).
  double uniform_open();
  // Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Seed of the engine behind (seed, stream).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

enum class NoiseKind { kGaussian, kUniformSym, kRademacher };

NoiseKind parse_noise_kind(std::string_view name);
std::string_view to_string(NoiseKind kind);

// Unit-variance, mean-zero noise: N(0,1), U(-sqrt3, sqrt3), or +-1.
double draw_noise(RngState& rng, NoiseKind kind);

}  // namespace arlog::sim
