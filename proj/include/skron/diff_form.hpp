#pragma once

// A linear combination of mixed partials of the Kronecker function,
//   sum_{m,n,t} c[m][n][t] d_h^m d_z^n d_tau^t phi(h, z),
// used as a coefficient ring for Grassmann elements so that differential
// operators act symbolically before evaluation at a point.

#include <array>
#include <complex>

#include "skron/elliptic.hpp"
#include "skron/grassmann.hpp"

namespace skron {

class DiffForm {
 public:
  static constexpr int kM = DerivOrder::kMaxM;
  static constexpr int kN = DerivOrder::kMaxN;
  static constexpr int kT = DerivOrder::kMaxT;

  DiffForm() { c_.fill(cplx{}); }
  /// coefficient * d^o phi
  DiffForm(DerivOrder o, cplx coefficient) : DiffForm() {
    if (!o.valid()) throw DerivativeOrderExceeded("DiffForm: unsupported order");
    c_[index(o.m, o.n, o.t)] = coefficient;
  }

  cplx at(int m, int n, int t) const { return c_[index(m, n, t)]; }

  DiffForm& operator+=(const DiffForm& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  DiffForm operator-() const {
    DiffForm r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend DiffForm operator*(cplx s, DiffForm f) {
    for (auto& v : f.c_) v *= s;
    return f;
  }
  friend bool operator==(const DiffForm&, const DiffForm&) = default;

  double magnitude() const {
    double best = 0.0;
    for (const auto& v : c_) best = std::max(best, std::abs(v));
    return best;
  }

  /// Applies d_h^dm d_z^dn d_tau^dt; throws if an order leaves the jet.
  DiffForm differentiate(int dm, int dn, int dt) const {
    DiffForm r;
    for (int m = 0; m <= kM; ++m)
      for (int n = 0; n <= kN; ++n)
        for (int t = 0; t <= kT; ++t) {
          const cplx v = at(m, n, t);
          if (v == cplx{}) continue;
          if (!DerivOrder{m + dm, n + dn, t + dt}.valid())
            throw DerivativeOrderExceeded("DiffForm: derivative leaves the supported jet");
          r.c_[index(m + dm, n + dn, t + dt)] += v;
        }
    return r;
  }

  cplx evaluate(const KroneckerJet& jet) const {
    cplx acc{};
    for (int m = 0; m <= kM; ++m)
      for (int n = 0; n <= kN; ++n)
        for (int t = 0; t <= kT; ++t) {
          const cplx v = at(m, n, t);
          if (v != cplx{}) acc += v * jet.d(m, n, t);
        }
    return acc;
  }

 private:
  static constexpr std::size_t index(int m, int n, int t) {
    return static_cast<std::size_t>((m * (kN + 1) + n) * (kT + 1) + t);
  }
  std::array<cplx, static_cast<std::size_t>((kM + 1) * (kN + 1) * (kT + 1))> c_;
};

template <>
struct RingTraits<DiffForm> {
  static double magnitude(const DiffForm& c) { return c.magnitude(); }
  static std::size_t dim(const DiffForm&) { return 0; }
  static DiffForm zero(std::size_t) { return DiffForm{}; }
};

inline DiffForm ring_mul(const cplx& a, const DiffForm& b) { return a * b; }

using FormElement = GrassmannElement<DiffForm>;

/// Applies d_h^dm d_z^dn d_tau^dt to every coefficient.
inline FormElement differentiate(const FormElement& e, int dm, int dn, int dt) {
  FormElement out;
  for (const auto& [m, c] : e.terms()) out.accumulate(m, c.differentiate(dm, dn, dt));
  out.prune();
  return out;
}

/// Evaluates every coefficient against a Kronecker jet.
inline ScalarElement evaluate(const FormElement& e, const KroneckerJet& jet) {
  ScalarElement out;
  for (const auto& [m, c] : e.terms()) out.accumulate(m, c.evaluate(jet));
  out.prune();
  return out;
}

}  // namespace skron
