#include "skron/sampling.hpp"

namespace skron {

std::uint64_t stable_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char ch : text) {
    h ^= static_cast<std::uint8_t>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

RandomStream RandomStream::for_suite(std::uint64_t seed, std::string_view suite) {
  // splitmix64 finalizer over the combined key
  std::uint64_t x = seed ^ stable_hash(suite);
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return RandomStream(x);
}

cplx RandomStream::complex_away_from_zero(double r, double min_abs) {
  for (;;) {
    const cplx c = complex_box(r);
    if (std::abs(c) >= min_abs) return c;
  }
}

cplx random_tau(RandomStream& rng) {
  const double re = rng.uniform(-0.5, 0.5);
  const double im = rng.uniform(0.8, 2.0);
  return {re, im};
}

cplx random_cell_point(RandomStream& rng, cplx tau) {
  const double u = rng.uniform();
  const double v = rng.uniform();
  return u + v * tau;
}

AnsatzCoefficients random_coefficients(RandomStream& rng) {
  AnsatzCoefficients a;
  a.a1 = rng.complex_away_from_zero(1.0, 0.3);
  a.a2 = rng.complex_box(1.0);
  a.a3 = rng.complex_box(1.0);
  a.a4 = rng.complex_box(1.0);
  a.a5 = rng.complex_box(1.0);
  return a;
}

AnsatzCoefficients random_fay_compatible(RandomStream& rng) {
  AnsatzCoefficients a = random_coefficients(rng);
  a.a5 = a.a2 * a.a4 / a.a1;
  return a;
}

AnsatzCoefficients random_fay_incompatible(RandomStream& rng) {
  for (;;) {
    const AnsatzCoefficients a = random_coefficients(rng);
    if (std::abs(a.a1 * a.a5 - a.a2 * a.a4) >= 0.1) return a;
  }
}

HeatParams random_heat_params(RandomStream& rng) {
  HeatParams p;
  p.k = rng.complex_box(1.0);
  p.kappa = rng.complex_away_from_zero(1.0, 0.3);
  return p;
}

}  // namespace skron
