#pragma once

// Deterministic pulse-stream simulation. The generator is xoshiro256**
// seeded through splitmix64, and normal deviates come from an explicit
// Box-Muller transform, so ledger output is byte-identical for a given
// seed on every platform.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>

#include "biovi/ledger.hpp"
#include "biovi/neuromatrix.hpp"

namespace biovi {

class InvalidParams : public Error {
 public:
  using Error::Error;
};

namespace rng {

// splitmix64 (Steele, Lea, Flood 2014); expands one 64-bit seed into
// the four xoshiro words.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman, Vigna 2018).
class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_{};
};

// Box-Muller, both deviates used, cached between calls.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : gen_(seed) {}

  double next(double mu, double sigma) {
    if (has_spare_) {
      has_spare_ = false;
      return mu + sigma * spare_;
    }
    double u1;
    do {
      u1 = gen_.uniform();
    } while (u1 == 0.0);
    const double u2 = gen_.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return mu + sigma * r * std::cos(a);
  }

 private:
  Xoshiro256StarStar gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rng

struct SimulationResult {
  Ledger ledger;
  LedgerSummary summary;
  // Best product combination by yield efficiency: grades ordered from
  // highest to lowest percentage share (grade 1 is the 100% baseline).
  std::array<int, 3> yield_ranking{1, 2, 3};
};

inline SimulationResult simulate_stream(std::size_t n, std::uint64_t seed,
                                        const std::array<GaussianParams, 3>& params,
                                        const ClassThresholds& thresholds) {
  if (n == 0) throw InvalidParams("simulation needs n > 0 pulses");
  rng::NormalSource normals(seed);
  SimulationResult out{};
  for (std::size_t i = 1; i <= n; ++i) {
    PulseRecord r;
    r.dir = i;
    // Draw order is grade 3, 2, 1 to match the ledger column order.
    r.in3 = normals.next(params[2].mu, params[2].sigma);
    r.in2 = normals.next(params[1].mu, params[1].sigma);
    r.in1 = normals.next(params[0].mu, params[0].sigma);
    FireTriple f = fire_check({r.in1, r.in2, r.in3}, thresholds);
    r.out1 = f.g1;
    r.out2 = f.g2;
    r.out3 = f.g3;
    out.ledger.append(r);
  }
  out.summary = summarize(out.ledger, thresholds);
  const double shares[3] = {100.0, out.summary.yields.y2, out.summary.yields.y3};
  std::array<int, 3> rank{1, 2, 3};
  // Stable three-element sort by descending share.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2 - i; ++j)
      if (shares[rank[j] - 1] < shares[rank[j + 1] - 1]) std::swap(rank[j], rank[j + 1]);
  out.yield_ranking = rank;
  return out;
}

}  // namespace biovi
