#include "arlog/rng.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "arlog/error.hpp"

namespace arlog::sim {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream));
}

RngState::RngState(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(mix_seed(seed, stream)) {}

double RngState::uniform_open() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngState::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform_open() - 1.0;
    v = 2.0 * uniform_open() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "gaussian") return NoiseKind::kGaussian;
  if (name == "uniform") return NoiseKind::kUniformSym;
  if (name == "rademacher") return NoiseKind::kRademacher;
  throw DomainError("unknown noise kind: " + std::string(name));
}

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kGaussian: return "gaussian";
    case NoiseKind::kUniformSym: return "uniform";
    case NoiseKind::kRademacher: return "rademacher";
  }
  return "unknown";
}

double draw_noise(RngState& rng, NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kGaussian: return rng.normal();
    case NoiseKind::kUniformSym: return std::numbers::sqrt3 * (2.0 * rng.uniform_open() - 1.0);
    case NoiseKind::kRademacher: return (rng.next_u64() >> 63) != 0 ? 1.0 : -1.0;
  }
  return 0.0;
}

}  // namespace arlog::sim
