#pragma once

// Residues at z = 0 by the trapezoid rule on a small circle,
//   (1 / 2 pi i) \oint f(z) dz = mean_k f(r e^{i t_k}) r e^{i t_k}.
// The rule converges geometrically for functions meromorphic in a disk
// larger than the contour.

#include "skron/super_rmatrix.hpp"

namespace skron {

struct ContourParams {
  double radius = 0.05;
  int points = 64;
};

/// Residue of phi(h, z) at z = 0 (analytically 1).
cplx kronecker_residue(const EllipticContext& ctx, cplx h, ContourParams c = {});

/// Residue of the ansatz at z1 = z2 (analytically A1 (zeta1 - zeta2)).
ScalarElement super_phi_residue(const EllipticContext& ctx, const AnsatzCoefficients& a,
                                cplx h, const ScalarElement& mu, cplx z2,
                                ContourParams c = {});

/// Residue of the N^2 operator R_12^{h|mu} at z1 = z2 (analytically
/// (zeta1 - zeta2) A1 N P_12).
MatrixElement super_R_residue(const EllipticContext& ctx, int n,
                              const AnsatzCoefficients& a, cplx h,
                              const ScalarElement& mu, cplx z2, ContourParams c = {});

}  // namespace skron
