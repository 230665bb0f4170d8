#pragma once

// Seeded random draws for the verification suites. Every suite gets its own
// stream derived from (seed, suite name), so running a subset of suites
// reproduces exactly the draws of the full run. Doubles are built from raw
// 64-bit output rather than <random> distributions, whose algorithms are
// implementation-defined.

#include <cstdint>
#include <random>
#include <string_view>

#include "skron/elliptic.hpp"
#include "skron/super_kronecker.hpp"

namespace skron {

/// 64-bit FNV-1a.
std::uint64_t stable_hash(std::string_view text);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream for_suite(std::uint64_t seed, std::string_view suite);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in the square [-r, r] x [-r, r].
  cplx complex_box(double r) { return {uniform(-r, r), uniform(-r, r)}; }
  /// complex_box(r) with rejection of magnitudes below min_abs.
  cplx complex_away_from_zero(double r, double min_abs);

 private:
  std::mt19937_64 engine_;
};

/// Re tau in [-1/2, 1/2], Im tau in [0.8, 2.0].
cplx random_tau(RandomStream& rng);

/// u + v tau with u, v uniform in [0, 1).
cplx random_cell_point(RandomStream& rng, cplx tau);

/// Components uniform in [-1,1]^2 with |A1| >= 0.3 (no constraint imposed).
AnsatzCoefficients random_coefficients(RandomStream& rng);

/// Random A with A5 := A2 A4 / A1.
AnsatzCoefficients random_fay_compatible(RandomStream& rng);

/// Random A with |A1 A5 - A2 A4| >= 0.1.
AnsatzCoefficients random_fay_incompatible(RandomStream& rng);

/// Random (k, kappa) with |kappa| >= 0.3.
HeatParams random_heat_params(RandomStream& rng);

}  // namespace skron
