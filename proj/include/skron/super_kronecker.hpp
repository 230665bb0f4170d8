#pragma once

// The five-coefficient odd super-Kronecker ansatz
//
//   Phi(h, z1, z2 | mu, zeta1, zeta2 | A) =
//       A1 (zeta1 - zeta2) phi + A2 omega d_h phi + A3 zeta1 zeta2 omega d_tau phi
//     + A4 zeta1 zeta2 mu d_h phi + A5/2 (zeta1 + zeta2) mu omega d_h^2 phi
//
// with phi = phi(h, z1 - z2), and the identities it is tested against:
// the super Fay identity, the super heat equation with parameters (k, kappa),
// and quasi-periodicity under super-translations of the curve.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "skron/diff_form.hpp"
#include "skron/elliptic.hpp"
#include "skron/grassmann.hpp"

namespace skron {

struct AnsatzCoefficients {
  cplx a1{1.0};
  cplx a2{1.0};
  cplx a3{kTwoPiI};
  cplx a4{1.0};
  cplx a5{1.0};

  static AnsatzCoefficients canonical() { return {1.0, 1.0, kTwoPiI, 1.0, 1.0}; }
  static AnsatzCoefficients truncated() { return {1.0, 1.0, kTwoPiI, 0.0, 0.0}; }

  AnsatzCoefficients scaled(cplx s) const {
    return {s * a1, s * a2, s * a3, s * a4, s * a5};
  }

  /// A1 A5 = A2 A4, up to a relative tolerance.
  bool fay_compatible(double rel_tol = 1e-12) const;
  /// A1 = A2 = A4 = A5 and A3 = 2 pi i A1.
  bool boundary_compatible(double rel_tol = 1e-12) const;
  /// Truncated family: A4 = A5 = 0.
  bool mu_free() const { return a4 == cplx{} && a5 == cplx{}; }

  friend bool operator==(const AnsatzCoefficients&, const AnsatzCoefficients&) = default;
};

struct HeatParams {
  cplx k{1.0};
  cplx kappa{1.0};

  /// kappa A2 = A1, kappa A3 = 2 pi i A1, A4 = k A1, kappa A5 = k A1.
  bool compatible(const AnsatzCoefficients& a, double rel_tol = 1e-12) const;

  /// The unique A with the given A1 solving the compatibility conditions;
  /// kappa must be nonzero.
  AnsatzCoefficients solve(cplx a1) const;
};

/// A point of the super elliptic curve: even body z, even nilpotent
/// correction z_soul, and odd coordinate zeta.
struct SuperArgument {
  cplx z{};
  ScalarElement z_soul{};
  ScalarElement zeta{};

  /// Plain point with generator g as its odd coordinate.
  static SuperArgument plain(cplx z, Generator g) {
    return {z, ScalarElement{}, ScalarElement::generator(g)};
  }
};

/// Grassmann-valued residual with the magnitude scale it is compared to.
struct GrassmannResidual {
  ScalarElement value;
  double scale = 0.0;
  /// Largest term magnitude contributing to each monomial; filled only by
  /// residuals that are sums of separately evaluated terms.
  std::map<Monomial, double> monomial_scale{};

  double relative() const {
    const double m = value.max_magnitude();
    return scale > 0.0 ? m / scale : m;
  }
  /// max over monomials of |coefficient| / monomial_scale.
  double monomial_relative() const;
};

/// The ansatz with symbolic derivative coefficients; zeta_a/zeta_b are the
/// odd coordinates of the two points and mu is any odd element.
FormElement ansatz_form(const AnsatzCoefficients& a, const ScalarElement& zeta_a,
                        const ScalarElement& zeta_b, const ScalarElement& mu);

/// Evaluates a form at phi(h, z + soul); the soul is expanded as a
/// terminating Taylor series.
ScalarElement evaluate_form(const EllipticContext& ctx, const FormElement& form,
                            cplx h, cplx z, const ScalarElement& soul = ScalarElement{});

ScalarElement super_phi(const EllipticContext& ctx, const AnsatzCoefficients& a,
                        cplx h, const ScalarElement& mu, const SuperArgument& p1,
                        const SuperArgument& p2);

/// Phi12^{h1|mu1} Phi23^{h2|mu2} + Phi31^{-h2|-mu2} Phi12^{h1-h2|mu1-mu2}
///   + Phi23^{h2-h1|mu2-mu1} Phi31^{-h1|-mu1}, points bound to zeta1..zeta3.
GrassmannResidual super_fay_residual(const EllipticContext& ctx,
                                     const AnsatzCoefficients& a, cplx h1, cplx h2,
                                     const ScalarElement& mu1,
                                     const ScalarElement& mu2, cplx z1, cplx z2,
                                     cplx z3);

/// (kappa d_omega + 2 pi i (zeta1 + zeta2) d_tau) Phi
///   - (d_zeta1 + zeta1 d_z1 - (k/2) mu d_h) d_h Phi
GrassmannResidual super_heat_residual(const EllipticContext& ctx,
                                      const AnsatzCoefficients& a,
                                      const HeatParams& params, cplx h,
                                      Generator mu_gen, cplx z1, cplx z2,
                                      Generator zeta1 = Generator::zeta1,
                                      Generator zeta2 = Generator::zeta2);

/// Residuals of the three quasi-periodicity relations. The unit-shift
/// relation is reported for each point separately.
struct BoundaryResiduals {
  GrassmannResidual unit_z1;
  GrassmannResidual unit_z2;
  GrassmannResidual tau_z1;  ///< z1 -> z1 + tau + 2 pi i zeta1 omega, zeta1 -> zeta1 + 2 pi i omega
  GrassmannResidual tau_z2;  ///< same for the second point

  double max_relative() const;
};

BoundaryResiduals super_boundary_residuals(const EllipticContext& ctx,
                                           const AnsatzCoefficients& a, cplx h,
                                           Generator mu_gen, cplx z1, cplx z2);

// ---------------------------------------------------------------------------
// Coefficient-space scan.

enum class ScanFamily { Random, FayProjected, HeatFamily, BoundaryFamily };

std::string to_string(ScanFamily f);

struct ScanSample {
  std::size_t index = 0;
  ScanFamily family = ScanFamily::Random;
  AnsatzCoefficients coeffs;
  HeatParams heat;
  cplx tau{};
  double fay_relative = 0.0;
  double heat_relative = 0.0;
  double boundary_relative = 0.0;
  bool fay_holds = false;
  bool heat_holds = false;
  bool boundary_holds = false;
};

struct ScanTally {
  ScanFamily family;
  std::size_t samples = 0;
  std::size_t fay_holds = 0;
  std::size_t heat_holds = 0;
  std::size_t boundary_holds = 0;
};

struct ScanReport {
  std::uint64_t seed = 0;
  std::size_t resampled_poles = 0;
  std::vector<ScanSample> samples;  ///< ordered by index
  std::vector<ScanTally> tallies;   ///< one per family, enum order
};

/// Samples coefficient space in four families (cycled by sample index) and
/// records which identities hold at ctx.tol(). ctx supplies tau, the
/// series cutoff, tolerance and pole margin.
ScanReport constraint_scan(const EllipticContext& ctx, std::size_t n_samples,
                           std::uint64_t seed);

}  // namespace skron
