#include "skron/super_rmatrix.hpp"

#include <algorithm>
#include <string>

#include "skron/errors.hpp"

namespace skron {
namespace {

ScalarElement gen(Generator g) { return ScalarElement::generator(g); }

ScalarElement zeta(int slot) {
  if (slot < 1 || slot > 3) throw std::invalid_argument("slot must be 1, 2 or 3");
  return gen(zeta_for_slot(slot));
}

std::size_t tensor_dim(int n, int nslots) {
  std::size_t d = 1;
  for (int s = 0; s < nslots; ++s) d *= static_cast<std::size_t>(n);
  return d;
}

void require_fay_compatible(const AnsatzCoefficients& a, const char* what) {
  if (!a.fay_compatible(1e-12))
    throw ConstraintViolated(std::string(what) + " requires A1 A5 = A2 A4");
}

/// Sum over indices of (T_a in slot i, T_{-a} in slot j) times a scalar element.
template <class F>
MatrixElement assemble(int n, int i, int j, int nslots, bool skip_zero, F&& coefficient) {
  MatrixElement out(tensor_dim(n, nslots));
  for (const BasisIndex idx : all_indices(n)) {
    if (skip_zero && idx == BasisIndex{}) continue;
    ScalarElement c;
    try {
      c = coefficient(idx);
    } catch (const PoleProximity& e) {
      throw PoleProximity(std::string(e.what()) + " (basis index (" +
                          std::to_string(idx.a1) + "," + std::to_string(idx.a2) + "))");
    }
    const Matrix e = embed_pair(t_matrix(n, idx), t_matrix(n, -idx), n, i, j, nslots);
    for (const auto& [m, v] : c.terms()) out.accumulate(m, v * e);
  }
  out.prune();
  return out;
}

MatrixElement identity_times(const ScalarElement& s, std::size_t dim) {
  const Matrix id = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  MatrixElement out(dim);
  for (const auto& [m, v] : s.terms()) out.accumulate(m, v * id);
  out.prune();
  return out;
}

double max_of(std::initializer_list<const MatrixElement*> xs) {
  double best = 0.0;
  for (const auto* x : xs) best = std::max(best, x->max_magnitude());
  return best;
}

}  // namespace

bool SuperBasisParams::shift_invariant(double rel_tol) const {
  return std::abs(b - a.a3) <= rel_tol * std::max({1.0, std::abs(b), std::abs(a.a3)});
}

ScalarElement super_basis_phi(const EllipticContext& ctx, int n,
                              const SuperBasisParams& params, BasisIndex a, cplx h,
                              const ScalarElement& mu, int i, int j, cplx zi, cplx zj) {
  if (n < 1) throw std::invalid_argument("matrix size N must be >= 1");
  const ScalarElement zeta_i = zeta(i);
  const ScalarElement zeta_j = zeta(j);
  const cplx z = zi - zj;
  const double frac = static_cast<double>(a.a2) / n;
  const KroneckerJet jet(ctx, h + a.omega(n, ctx.tau()), z);

  ScalarElement out = evaluate(ansatz_form(params.a, zeta_i, zeta_j, mu), jet);
  out += gscale(params.b * frac * jet.d(1, 0, 0), zeta_i * zeta_j * gen(Generator::omega));
  return gscale(std::exp(kTwoPiI * frac * z), out);
}

ScalarElement shift_residual(const EllipticContext& ctx, int n,
                             const SuperBasisParams& params, BasisIndex a, cplx h,
                             const ScalarElement& mu, int i, int j, cplx zi, cplx zj,
                             bool shift_a1) {
  const BasisIndex shifted = shift_a1 ? BasisIndex{a.a1 + n, a.a2} : BasisIndex{a.a1, a.a2 + n};
  return super_basis_phi(ctx, n, params, shifted, h, mu, i, j, zi, zj) -
         super_basis_phi(ctx, n, params, a, h, mu, i, j, zi, zj);
}

MatrixElement super_R(const EllipticContext& ctx, int n, const AnsatzCoefficients& a,
                      cplx h, const ScalarElement& mu, int i, int j, cplx zi, cplx zj,
                      int nslots) {
  const SuperBasisParams params{a, a.a3};
  return assemble(n, i, j, nslots, false, [&](BasisIndex idx) {
    return super_basis_phi(ctx, n, params, idx, h, mu, i, j, zi, zj);
  });
}

SuperResidual super_aybe_residual(const EllipticContext& ctx, int n,
                                  const AnsatzCoefficients& a, cplx h1, cplx h2,
                                  const ScalarElement& mu1, const ScalarElement& mu2,
                                  cplx z1, cplx z2, cplx z3) {
  const cplx z[] = {{}, z1, z2, z3};
  auto R = [&](cplx h, const ScalarElement& mu, int p, int q) {
    return super_R(ctx, n, a, h, mu, p, q, z[p], z[q]);
  };
  const MatrixElement t1 = R(h1, mu1, 1, 2) * R(h2, mu2, 2, 3);
  const MatrixElement t2 = R(-h2, -mu2, 3, 1) * R(h1 - h2, mu1 - mu2, 1, 2);
  const MatrixElement t3 = R(h2 - h1, mu2 - mu1, 2, 3) * R(-h1, -mu1, 3, 1);
  return {t1 + t2 + t3, max_of({&t1, &t2, &t3})};
}

SuperResidual super_symmetry_residual(const EllipticContext& ctx, int n,
                                      const AnsatzCoefficients& a, cplx h,
                                      const ScalarElement& mu, int i, int j, cplx zi,
                                      cplx zj, int nslots) {
  const MatrixElement lhs = super_R(ctx, n, a, h, mu, i, j, zi, zj, nslots);
  const MatrixElement rhs = super_R(ctx, n, a, -h, -mu, j, i, zj, zi, nslots);
  return {lhs - rhs, max_of({&lhs, &rhs})};
}

ScalarElement super_unitarity_factor(const EllipticContext& ctx, int n,
                                     const AnsatzCoefficients& a, cplx h,
                                     const ScalarElement& mu, int i, int j) {
  const double dn = n;
  const ScalarElement omega = gen(Generator::omega);
  const ScalarElement zi = zeta(i);
  const ScalarElement zj = zeta(j);
  const cplx wp1 = weierstrass(ctx, dn * h, 1);
  const cplx wp2 = weierstrass(ctx, dn * h, 2);
  return gscale(a.a1 * a.a2 * dn * dn * dn * wp1, (zi - zj) * omega) +
         gscale(a.a1 * a.a5 * dn * dn * dn * dn * wp2, zi * zj * mu * omega);
}

SuperResidual super_unitarity_residual(const EllipticContext& ctx, int n,
                                       const AnsatzCoefficients& a, cplx h,
                                       Generator mu_gen, cplx zi, cplx zj, int i, int j,
                                       int nslots) {
  require_fay_compatible(a, "super unitarity");
  const ScalarElement mu = gen(mu_gen);
  const MatrixElement prod = super_R(ctx, n, a, h, mu, i, j, zi, zj, nslots) *
                             super_R(ctx, n, a, h, mu, j, i, zj, zi, nslots);
  const MatrixElement rhs =
      identity_times(super_unitarity_factor(ctx, n, a, h, mu, i, j), tensor_dim(n, nslots));
  return {prod - rhs, max_of({&prod, &rhs})};
}

ModifiedQybe modified_qybe_residuals(const EllipticContext& ctx, int n,
                                     const AnsatzCoefficients& a, cplx h,
                                     Generator mu_gen, cplx z1, cplx z2, cplx z3) {
  require_fay_compatible(a, "modified quantum Yang-Baxter relations");
  const ScalarElement mu = gen(mu_gen);
  const ScalarElement mu2 = gscale(cplx{2.0}, mu);
  const MatrixElement r12 = super_R(ctx, n, a, h, mu, 1, 2, z1, z2);
  const MatrixElement r13 = super_R(ctx, n, a, h, mu, 1, 3, z1, z3);
  const MatrixElement r23 = super_R(ctx, n, a, h, mu, 2, 3, z2, z3);
  const MatrixElement r13_2 = super_R(ctx, n, a, 2.0 * h, mu2, 1, 3, z1, z3);
  const MatrixElement r12_2 = super_R(ctx, n, a, 2.0 * h, mu2, 1, 2, z1, z2);

  const MatrixElement lhs = r12 * r13 * r23;
  const MatrixElement rev = r23 * r13 * r12;
  const MatrixElement linear =
      gscale(cplx{2.0}, super_unitarity_factor(ctx, n, a, h, mu, 2, 3) * r13_2);
  const MatrixElement cubic = gscale(cplx{2.0}, r23 * r12_2 * r23);

  ModifiedQybe out;
  out.first = {lhs - rev - linear, max_of({&lhs, &rev, &linear})};
  out.second = {lhs + rev + cubic, max_of({&lhs, &rev, &cubic})};
  return out;
}

MatrixElement super_classical_r(const EllipticContext& ctx, int n,
                                const AnsatzCoefficients& a, int i, int j, cplx zi,
                                cplx zj, int nslots) {
  if (!a.mu_free())
    throw ConstraintViolated("super classical r-matrix requires A4 = A5 = 0");
  const SuperBasisParams params{a, a.a3};
  const ScalarElement no_mu;
  return assemble(n, i, j, nslots, true, [&](BasisIndex idx) {
    return super_basis_phi(ctx, n, params, idx, 0.0, no_mu, i, j, zi, zj);
  });
}

SuperResidual super_cybe_residual(const EllipticContext& ctx, int n,
                                  const AnsatzCoefficients& a, cplx z1, cplx z2,
                                  cplx z3) {
  const MatrixElement r12 = super_classical_r(ctx, n, a, 1, 2, z1, z2);
  const MatrixElement r13 = super_classical_r(ctx, n, a, 1, 3, z1, z3);
  const MatrixElement r23 = super_classical_r(ctx, n, a, 2, 3, z2, z3);
  const MatrixElement p[] = {r12 * r13, r13 * r12, r12 * r23,
                             r23 * r12, r13 * r23, r23 * r13};
  MatrixElement sum(tensor_dim(n, 3));
  double scale = 0.0;
  for (const auto& x : p) {
    sum += x;
    scale = std::max(scale, x.max_magnitude());
  }
  return {sum, scale};
}

}  // namespace skron
