#pragma once

// Odd Jacobi theta function, the Kronecker elliptic function and the
// Weierstrass p-function on the lattice Z + tau Z.
//
//   theta(z) = sum_k exp(pi i tau (k+1/2)^2 + 2 pi i (z+1/2)(k+1/2))
//   phi(h, z) = theta'(0) theta(h + z) / (theta(h) theta(z))
//
// Arguments are reduced into the fundamental cell before the series is
// summed; quasi-periodicity factors (including their tau dependence) are
// multiplied back in jet form so that tau-derivatives stay exact.

#include <array>
#include <vector>

#include "skron/errors.hpp"
#include "skron/jet.hpp"

namespace skron {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};
inline constexpr cplx kTwoPiI{0.0, 2.0 * kPi};

/// Evaluation environment shared by every special function.
class EllipticContext {
 public:
  static constexpr int kDefaultCutoff = 20;
  static constexpr double kDefaultTol = 1e-9;
  static constexpr double kDefaultPoleMargin = 1e-3;

  /// Throws std::invalid_argument unless Im tau > 0, cutoff >= 1,
  /// tol > 0 and pole_margin > 0.
  explicit EllipticContext(cplx tau, int cutoff = kDefaultCutoff,
                           double tol = kDefaultTol,
                           double pole_margin = kDefaultPoleMargin);

  cplx tau() const { return tau_; }
  int cutoff() const { return cutoff_; }
  double tol() const { return tol_; }
  double pole_margin() const { return pole_margin_; }

  /// theta'(0) and its tau-derivative.
  cplx theta_prime_zero() const { return theta_prime_zero_[0]; }
  cplx theta_prime_zero_dtau() const { return theta_prime_zero_[1]; }

  /// Constant c(tau) in p(z) = -(log theta)''(z) + c(tau).
  cplx wp_constant() const { return wp_constant_; }

 private:
  cplx tau_;
  int cutoff_;
  double tol_;
  double pole_margin_;
  std::array<cplx, 2> theta_prime_zero_{};
  cplx wp_constant_{};
};

struct DerivOrder {
  int m = 0;  ///< order in the first argument (h)
  int n = 0;  ///< order in the second argument (z)
  int t = 0;  ///< order in tau, 0 or 1

  static constexpr int kMaxM = Jet3::kMaxH;
  static constexpr int kMaxN = Jet3::kMaxZ;
  static constexpr int kMaxT = Jet3::kMaxT;

  bool valid() const {
    return m >= 0 && n >= 0 && t >= 0 && m <= kMaxM && n <= kMaxN &&
           t <= kMaxT;
  }
  friend bool operator==(const DerivOrder&, const DerivOrder&) = default;
};

/// Euclidean distance from x to the nearest point of Z + tau Z.
double lattice_distance(cplx tau, cplx x);

/// Throws PoleProximity naming `what` if x is within pole_margin of the
/// lattice.
void require_regular(const EllipticContext& ctx, cplx x, const char* what);

/// Taylor coefficients of theta(x + e; tau + t) in e up to `order`, each with
/// its first tau-derivative: result[j] = {coef of e^j, coef of e^j t}.
std::vector<std::array<cplx, 2>> theta_taylor(const EllipticContext& ctx,
                                              cplx x, int order);

/// d^n_z/dz^n d^n_tau/dtau^n theta(z; tau); n_z <= 6, n_tau <= 1.
cplx theta(const EllipticContext& ctx, cplx z, int n_z = 0, int n_tau = 0);

/// All mixed partials of phi(h, z; tau) up to DerivOrder limits at one point.
class KroneckerJet {
 public:
  KroneckerJet(const EllipticContext& ctx, cplx h, cplx z);

  /// d_h^m d_z^n d_tau^t phi at the expansion point.
  cplx d(int m, int n = 0, int t = 0) const;
  cplx d(DerivOrder o) const { return d(o.m, o.n, o.t); }
  cplx value() const { return jet_.constant(); }

  const Jet3& jet() const { return jet_; }

 private:
  Jet3 jet_;
};

/// Mixed partial of the Kronecker function.
cplx kronecker(const EllipticContext& ctx, cplx h, cplx z,
               DerivOrder order = {});

/// p(z), p'(z) or p''(z) for d = 0, 1, 2.
cplx weierstrass(const EllipticContext& ctx, cplx z, int d = 0);

struct ScalarResidual {
  cplx value;
  double scale;  ///< largest magnitude among the summands
  double relative() const { return scale > 0.0 ? std::abs(value) / scale : std::abs(value); }
};

/// phi(h1,z12)phi(h2,z23) + phi(-h2,z31)phi(h1-h2,z12)
///   + phi(h2-h1,z23)phi(-h1,z31)
ScalarResidual fay_residual(const EllipticContext& ctx, cplx h1, cplx h2,
                            cplx z1, cplx z2, cplx z3);

/// 2 pi i d_tau phi - d_z d_h phi, the tau-derivative taken from the
/// tau-differentiated theta series.
ScalarResidual heat_residual(const EllipticContext& ctx, cplx h, cplx z);

}  // namespace skron
