#pragma once

// Hand-rolled generators and comparison helpers shared by the unit tests.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>

#include "skron/elliptic.hpp"
#include "skron/grassmann.hpp"
#include "skron/super_kronecker.hpp"

namespace skron::test {

/// splitmix64 stream; independent of the library's sampling code.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double real(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  cplx complex(double r = 1.0) { return {real(-r, r), real(-r, r)}; }
  cplx complex_away(double r, double min_abs) {
    for (;;) {
      const cplx c = complex(r);
      if (std::abs(c) >= min_abs) return c;
    }
  }

  cplx tau() { return {real(-0.5, 0.5), real(0.8, 2.0)}; }

  /// Point of the fundamental cell kept at least `margin` from the lattice.
  cplx cell_point(cplx tau, double margin = 0.05) {
    for (;;) {
      const cplx p = unit() + unit() * tau;
      if (lattice_distance(tau, p) > margin) return p;
    }
  }

  /// Scalar element with random coefficients on a random subset of monomials.
  ScalarElement element(int max_terms = 6) {
    ScalarElement e;
    const int k = integer(1, max_terms);
    for (int i = 0; i < k; ++i)
      e += ScalarElement::monomial(Monomial(static_cast<std::uint8_t>(next() % 64)), complex());
    return e;
  }

  /// Homogeneous element of the given degree.
  ScalarElement homogeneous(int degree, int max_terms = 4) {
    ScalarElement e;
    const int k = integer(1, max_terms);
    for (int i = 0; i < k; ++i) {
      std::uint8_t mask = 0;
      while (std::popcount(static_cast<unsigned>(mask)) != degree)
        mask = static_cast<std::uint8_t>(next() % 64);
      e += ScalarElement::monomial(Monomial(mask), complex());
    }
    return e;
  }

  AnsatzCoefficients coefficients() {
    return {complex_away(1.0, 0.3), complex(), complex(), complex(), complex()};
  }

 private:
  std::uint64_t state_;
};

inline double rel(cplx a, cplx b) {
  const double s = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / s;
}

template <class C>
double distance(const GrassmannElement<C>& a, const GrassmannElement<C>& b) {
  return (a - b).max_magnitude();
}

}  // namespace skron::test
