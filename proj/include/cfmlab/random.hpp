#pragma once
#include <cstdint>
#include <random>

namespace cfmlab {

// SplitMix64 finalizer, used to derive independent engine seeds from
// (master_seed, stream tags).
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) noexcept {
  return mix_seed(mix_seed(mix_seed(master) ^ a) ^ b);
}

// All random inputs consumed by one simulation step. Every step draws the
// full set whether or not it is used, so the same path index sees the same
// draws in every parameter cell.
struct StepDraws {
  double z;          // Brownian increment, standard normal
  double u_arrival;  // uniform [0,1)
  double raw_size;   // noise-trade size, standard normal
  double u_rational; // uniform [0,1)
};

class PathRng {
public:
  PathRng(std::uint64_t master_seed, std::uint64_t path_index)
    : engine_(derive_seed(master_seed, path_index)) {}

  StepDraws next() {
    StepDraws d{};
    d.z = normal_(engine_);
    d.u_arrival = uniform_(engine_);
    d.raw_size = normal_(engine_);
    d.u_rational = uniform_(engine_);
    return d;
  }

  double normal() { return normal_(engine_); }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

} // namespace cfmlab
