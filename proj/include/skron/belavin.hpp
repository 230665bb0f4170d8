#pragma once

// Clock-shift basis of Mat(N), the N^2 basis functions
//   varphi_a(h + Omega_a, z) = exp(2 pi i a2 z / N) phi(h + Omega_a, z),
// the Baxter-Belavin R-matrix and classical r-matrix, tensor-slot embedding,
// and residuals of the associated Yang-Baxter type identities.

#include <vector>

#include "skron/elliptic.hpp"
#include "skron/grassmann.hpp"

namespace skron {

/// Index a = (a1, a2) in Z_N x Z_N, kept unreduced.
struct BasisIndex {
  int a1 = 0;
  int a2 = 0;

  BasisIndex reduced(int n) const;
  /// Omega_a = (a1 + a2 tau) / N from the unreduced values.
  cplx omega(int n, cplx tau) const;
  bool is_zero_mod(int n) const;

  friend BasisIndex operator+(BasisIndex a, BasisIndex b) { return {a.a1 + b.a1, a.a2 + b.a2}; }
  friend BasisIndex operator-(BasisIndex a, BasisIndex b) { return {a.a1 - b.a1, a.a2 - b.a2}; }
  friend BasisIndex operator-(BasisIndex a) { return {-a.a1, -a.a2}; }
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

/// All N^2 reduced indices, a1 major.
std::vector<BasisIndex> all_indices(int n);

/// Q = diag(exp(2 pi i k / N)), k = 1..N.
Matrix clock_matrix(int n);
/// Lambda_{k,l} = 1 iff l = k + 1 mod N.
Matrix shift_matrix(int n);

/// T_a = exp(pi i a1 a2 / N) Q^a1 Lambda^a2 (negative powers allowed).
Matrix t_matrix(int n, BasisIndex a);

/// kappa_{a,b} = exp(pi i (b1 a2 - b2 a1) / N).
cplx structure_constant(int n, BasisIndex a, BasisIndex b);

/// Kronecker product over `nslots` tensor factors of size n, with `a` in
/// slot i, `b` in slot j (1-based, i != j) and identities elsewhere.
Matrix embed_pair(const Matrix& a, const Matrix& b, int n, int i, int j, int nslots);

/// Permutation operator exchanging slots i and j of an nslots-fold product.
Matrix permutation(int n, int i, int j, int nslots);

/// d_h^d_h (d/dtau)^total_tau of varphi_a(h + Omega_a, z), where d/dtau is
/// the total derivative including the dependence of Omega_a on tau.
cplx varphi(const EllipticContext& ctx, int n, BasisIndex a, cplx h, cplx z,
            int d_h = 0, int total_tau = 0);

/// sum_a T_a (slot i) (x) T_{-a} (slot j) varphi_a(h + Omega_a, z). The
/// default slots give the N^2 operator R_12.
Matrix quantum_R(const EllipticContext& ctx, int n, cplx h, cplx z, int i = 1,
                 int j = 2, int nslots = 2);

/// sum over a != 0 of T_a (slot i) (x) T_{-a} (slot j) varphi_a(Omega_a, z).
Matrix classical_r(const EllipticContext& ctx, int n, cplx z, int i = 1, int j = 2,
                   int nslots = 2);

/// Max-abs entry.
double max_norm(const Matrix& m);

struct OperatorResidual {
  Matrix value;
  double scale = 0.0;
  double norm() const { return max_norm(value); }
  double relative() const {
    const double m = norm();
    return scale > 0.0 ? m / scale : m;
  }
};

/// R12^{h1}(z12) R23^{h2}(z23) + R31^{-h2}(z31) R12^{h1-h2}(z12)
///   + R23^{h2-h1}(z23) R31^{-h1}(z31)
OperatorResidual aybe_residual(const EllipticContext& ctx, int n, cplx h1, cplx h2,
                               cplx z1, cplx z2, cplx z3);

/// R12 R13 R23 - R23 R13 R12 at equal h.
OperatorResidual qybe_residual(const EllipticContext& ctx, int n, cplx h, cplx z1,
                               cplx z2, cplx z3);

/// [r12, r13] + [r12, r23] + [r13, r23].
OperatorResidual cybe_residual(const EllipticContext& ctx, int n, cplx z1, cplx z2,
                               cplx z3);

/// f(h, z) = N^2 (wp(N h) - wp(z)).
cplx unitarity_factor(const EllipticContext& ctx, int n, cplx h, cplx z);

/// R12^h(z) R21^h(-z) - f(h, z) Id.
OperatorResidual unitarity_residual(const EllipticContext& ctx, int n, cplx h, cplx z);

/// R23^h R13^h R12^h - R23^h R12^{2h} R23^h - f(h, z23) R13^{2h}.
OperatorResidual cubic_identity_residual(const EllipticContext& ctx, int n, cplx h,
                                         cplx z1, cplx z2, cplx z3);

/// Components of an N^2 operator in the basis T_a (x) T_b:
/// c_{a,b} = tr((T_a (x) T_b)^{-1} X) / N^2, indexed [a][b] over all_indices(n).
std::vector<std::vector<cplx>> pair_components(int n, const Matrix& x);

}  // namespace skron
