#pragma once

// Truncated multivariate Taylor polynomials in three increments
// (dh, dz, dtau). Coefficients are stored as Taylor coefficients, i.e.
// c[i][j][k] multiplies dh^i dz^j dtau^k; the partial derivative is
// c[i][j][k] * i! * j! * k!.

#include <array>
#include <complex>
#include <cstddef>

namespace skron {

using cplx = std::complex<double>;

class Jet3 {
 public:
  static constexpr int kMaxH = 4;
  static constexpr int kMaxZ = 2;
  static constexpr int kMaxT = 1;
  static constexpr std::size_t kSize =
      static_cast<std::size_t>((kMaxH + 1) * (kMaxZ + 1) * (kMaxT + 1));

  Jet3() { c_.fill(cplx{0.0, 0.0}); }
  explicit Jet3(cplx constant) : Jet3() { c_[0] = constant; }

  cplx& at(int i, int j, int k) { return c_[index(i, j, k)]; }
  const cplx& at(int i, int j, int k) const { return c_[index(i, j, k)]; }

  cplx constant() const { return c_[0]; }

  Jet3& operator+=(const Jet3& o) {
    for (std::size_t n = 0; n < kSize; ++n) c_[n] += o.c_[n];
    return *this;
  }
  Jet3& operator-=(const Jet3& o) {
    for (std::size_t n = 0; n < kSize; ++n) c_[n] -= o.c_[n];
    return *this;
  }
  Jet3& operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
  friend Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }
  friend Jet3 operator*(Jet3 a, cplx s) { return a *= s; }
  friend Jet3 operator*(cplx s, Jet3 a) { return a *= s; }

  friend Jet3 operator*(const Jet3& a, const Jet3& b) {
    Jet3 r;
    for (int i1 = 0; i1 <= kMaxH; ++i1)
      for (int j1 = 0; j1 <= kMaxZ; ++j1)
        for (int k1 = 0; k1 <= kMaxT; ++k1) {
          const cplx av = a.at(i1, j1, k1);
          if (av == cplx{}) continue;
          for (int i2 = 0; i2 <= kMaxH - i1; ++i2)
            for (int j2 = 0; j2 <= kMaxZ - j1; ++j2)
              for (int k2 = 0; k2 <= kMaxT - k1; ++k2)
                r.at(i1 + i2, j1 + j2, k1 + k2) += av * b.at(i2, j2, k2);
        }
    return r;
  }

  /// Multiplicative inverse; the constant term must be nonzero. The
  /// non-constant part is nilpotent in the truncated algebra, so the
  /// geometric series terminates after kMaxH + kMaxZ + kMaxT terms.
  Jet3 reciprocal() const {
    const cplx c0 = c_[0];
    Jet3 u = *this;
    u.c_[0] = 0.0;
    u *= -1.0 / c0;
    Jet3 sum(1.0);
    Jet3 power(1.0);
    for (int n = 0; n < kMaxH + kMaxZ + kMaxT; ++n) {
      power = power * u;
      sum += power;
    }
    return sum * (1.0 / c0);
  }

 private:
  static constexpr std::size_t index(int i, int j, int k) {
    return static_cast<std::size_t>((i * (kMaxZ + 1) + j) * (kMaxT + 1) + k);
  }

  std::array<cplx, kSize> c_;
};

}  // namespace skron
