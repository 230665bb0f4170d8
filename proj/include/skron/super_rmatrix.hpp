#pragma once

// Super basis functions Phi_a with the free constant B, the odd super
// R-matrix and classical r-matrix built from them, and residuals of the
// super Yang-Baxter type identities.
//
// The odd coordinate of tensor slot k is always the generator zeta_k.
// Operators act on the nslots-fold tensor product (default 3) so products of
// pair operators are plain graded products of matrix-valued elements.

#include "skron/belavin.hpp"
#include "skron/super_kronecker.hpp"

namespace skron {

struct SuperBasisParams {
  AnsatzCoefficients a = AnsatzCoefficients::canonical();
  cplx b{kTwoPiI};

  /// The index shift a2 -> a2 + N leaves the functions invariant iff B = A3.
  bool shift_invariant(double rel_tol = 1e-12) const;
};

/// [A1 (zeta_i - zeta_j) + A2 omega d_h + A3 zeta_i zeta_j omega d_tau
///   + A4 zeta_i zeta_j mu d_h + A5/2 (zeta_i + zeta_j) mu omega d_h^2] varphi_a
///   + B (a2/N) zeta_i zeta_j omega d_h varphi_a,
/// evaluated at (h + Omega_a, z_i - z_j); d_tau is the partial derivative at
/// fixed first argument.
ScalarElement super_basis_phi(const EllipticContext& ctx, int n,
                              const SuperBasisParams& params, BasisIndex a, cplx h,
                              const ScalarElement& mu, int i, int j, cplx zi, cplx zj);

/// Phi_{(a1, a2 + N)} - Phi_{(a1, a2)} (or the a1 shift when shift_a1 is
/// set), with Omega recomputed from the shifted index.
ScalarElement shift_residual(const EllipticContext& ctx, int n,
                             const SuperBasisParams& params, BasisIndex a, cplx h,
                             const ScalarElement& mu, int i, int j, cplx zi, cplx zj,
                             bool shift_a1 = false);

/// sum_a T_a (slot i) (x) T_{-a} (slot j) Phi_a(..., B = A3).
MatrixElement super_R(const EllipticContext& ctx, int n, const AnsatzCoefficients& a,
                      cplx h, const ScalarElement& mu, int i, int j, cplx zi, cplx zj,
                      int nslots = 3);

/// Residual of a graded operator identity with the scale it is compared to.
struct SuperResidual {
  MatrixElement value;
  double scale = 0.0;
  double norm() const { return value.max_magnitude(); }
  double relative() const {
    const double m = norm();
    return scale > 0.0 ? m / scale : m;
  }
};

/// R12^{h1|mu1} R23^{h2|mu2} + R31^{-h2|-mu2} R12^{h1-h2|mu1-mu2}
///   + R23^{h2-h1|mu2-mu1} R31^{-h1|-mu1}
SuperResidual super_aybe_residual(const EllipticContext& ctx, int n,
                                  const AnsatzCoefficients& a, cplx h1, cplx h2,
                                  const ScalarElement& mu1, const ScalarElement& mu2,
                                  cplx z1, cplx z2, cplx z3);

/// R_ij^{h|mu}(z_i, z_j) - R_ji^{-h|-mu}(z_j, z_i).
SuperResidual super_symmetry_residual(const EllipticContext& ctx, int n,
                                      const AnsatzCoefficients& a, cplx h,
                                      const ScalarElement& mu, int i, int j, cplx zi,
                                      cplx zj, int nslots = 3);

/// A1 A2 (zeta_i - zeta_j) omega N^3 wp'(N h)
///   + A1 A5 zeta_i zeta_j mu omega N^4 wp''(N h).
ScalarElement super_unitarity_factor(const EllipticContext& ctx, int n,
                                     const AnsatzCoefficients& a, cplx h,
                                     const ScalarElement& mu, int i, int j);

/// R_ij^{h|mu} R_ji^{h|mu} - super_unitarity_factor * Id. Throws
/// ConstraintViolated unless A1 A5 = A2 A4.
SuperResidual super_unitarity_residual(const EllipticContext& ctx, int n,
                                       const AnsatzCoefficients& a, cplx h,
                                       Generator mu_gen, cplx zi, cplx zj, int i = 1,
                                       int j = 2, int nslots = 3);

struct ModifiedQybe {
  /// R12 R13 R23 - R23 R13 R12 - 2 F_23 R13^{2h|2mu}, F as in
  /// super_unitarity_factor for slots (2, 3).
  SuperResidual first;
  /// R12 R13 R23 + R23 R13 R12 + 2 R23 R12^{2h|2mu} R23.
  SuperResidual second;
};

/// Both modified quantum Yang-Baxter residuals; throws ConstraintViolated
/// unless A1 A5 = A2 A4.
ModifiedQybe modified_qybe_residuals(const EllipticContext& ctx, int n,
                                     const AnsatzCoefficients& a, cplx h,
                                     Generator mu_gen, cplx z1, cplx z2, cplx z3);

/// sum over a != 0 of T_a (slot i) (x) T_{-a} (slot j) Phi_a^{Omega_a|0}(B = A3).
/// Requires A4 = A5 = 0 (ConstraintViolated otherwise).
MatrixElement super_classical_r(const EllipticContext& ctx, int n,
                                const AnsatzCoefficients& a, int i, int j, cplx zi,
                                cplx zj, int nslots = 3);

/// [r12, r13]_+ + [r12, r23]_+ + [r13, r23]_+ with [x, y]_+ = x y + y x.
SuperResidual super_cybe_residual(const EllipticContext& ctx, int n,
                                  const AnsatzCoefficients& a, cplx z1, cplx z2,
                                  cplx z3);

}  // namespace skron
