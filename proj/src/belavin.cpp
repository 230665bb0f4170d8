#include "skron/belavin.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "skron/errors.hpp"

namespace skron {
namespace {

int mod(int a, int n) {
  const int r = a % n;
  return r < 0 ? r + n : r;
}

void require_size(int n) {
  if (n < 1) throw std::invalid_argument("matrix size N must be >= 1");
}

void require_slots(int i, int j, int nslots) {
  if (nslots < 2 || i < 1 || j < 1 || i > nslots || j > nslots || i == j)
    throw std::invalid_argument("invalid tensor slot pair");
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

std::string index_text(BasisIndex a) {
  return "(" + std::to_string(a.a1) + "," + std::to_string(a.a2) + ")";
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace

BasisIndex BasisIndex::reduced(int n) const {
  require_size(n);
  return {mod(a1, n), mod(a2, n)};
}

cplx BasisIndex::omega(int n, cplx tau) const {
  require_size(n);
  return (static_cast<double>(a1) + static_cast<double>(a2) * tau) / static_cast<double>(n);
}

bool BasisIndex::is_zero_mod(int n) const { return reduced(n) == BasisIndex{}; }

std::vector<BasisIndex> all_indices(int n) {
  require_size(n);
  std::vector<BasisIndex> out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (int a1 = 0; a1 < n; ++a1)
    for (int a2 = 0; a2 < n; ++a2) out.push_back({a1, a2});
  return out;
}

Matrix clock_matrix(int n) { return t_matrix(n, {1, 0}); }

Matrix shift_matrix(int n) { return t_matrix(n, {0, 1}); }

Matrix t_matrix(int n, BasisIndex a) {
  require_size(n);
  const double dn = n;
  const cplx pref = std::exp(kI * kPi * static_cast<double>(a.a1 * a.a2) / dn);
  Matrix t = Matrix::Zero(n, n);
  // (Q^a1 Lambda^a2)_{k,l} = exp(2 pi i k a1 / N) [l = k + a2 mod N], k = 1..N
  for (int r = 0; r < n; ++r) {
    const double k = r + 1;
    const int c = mod(r + a.a2, n);
    t(r, c) = pref * std::exp(kTwoPiI * k * static_cast<double>(a.a1) / dn);
  }
  return t;
}

cplx structure_constant(int n, BasisIndex a, BasisIndex b) {
  require_size(n);
  return std::exp(kI * kPi * static_cast<double>(b.a1 * a.a2 - b.a2 * a.a1) /
                  static_cast<double>(n));
}

Matrix embed_pair(const Matrix& a, const Matrix& b, int n, int i, int j, int nslots) {
  require_size(n);
  require_slots(i, j, nslots);
  if (a.rows() != n || b.rows() != n)
    throw std::invalid_argument("embed_pair: factor size mismatch");
  const Matrix id = Matrix::Identity(n, n);
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 1; s <= nslots; ++s) out = kron(out, s == i ? a : s == j ? b : id);
  return out;
}

Matrix permutation(int n, int i, int j, int nslots) {
  require_size(n);
  require_slots(i, j, nslots);
  Eigen::Index dim = 1;
  for (int s = 0; s < nslots; ++s) dim *= n;
  Matrix p = Matrix::Zero(dim, dim);
  std::vector<int> digits(static_cast<std::size_t>(nslots));
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index rest = col;
    for (int s = nslots - 1; s >= 0; --s) {
      digits[static_cast<std::size_t>(s)] = static_cast<int>(rest % n);
      rest /= n;
    }
    std::swap(digits[static_cast<std::size_t>(i - 1)], digits[static_cast<std::size_t>(j - 1)]);
    Eigen::Index row = 0;
    for (int d : digits) row = row * n + d;
    p(row, col) = 1.0;
  }
  return p;
}

cplx varphi(const EllipticContext& ctx, int n, BasisIndex a, cplx h, cplx z, int d_h,
            int total_tau) {
  require_size(n);
  if (d_h < 0 || total_tau < 0 || total_tau > 1 ||
      d_h + total_tau > DerivOrder::kMaxM)
    throw DerivativeOrderExceeded("varphi: derivative order outside the supported jet");
  const double frac = static_cast<double>(a.a2) / n;
  const KroneckerJet jet(ctx, h + a.omega(n, ctx.tau()), z);
  const cplx core = total_tau == 0 ? jet.d(d_h, 0, 0)
                                   : jet.d(d_h, 0, 1) + frac * jet.d(d_h + 1, 0, 0);
  return std::exp(kTwoPiI * frac * z) * core;
}

Matrix quantum_R(const EllipticContext& ctx, int n, cplx h, cplx z, int i, int j,
                 int nslots) {
  require_size(n);
  Matrix r;
  for (const BasisIndex a : all_indices(n)) {
    cplx f;
    try {
      f = varphi(ctx, n, a, h, z);
    } catch (const PoleProximity& e) {
      throw PoleProximity(std::string(e.what()) + " (basis index " + index_text(a) + ")");
    }
    Matrix term = f * embed_pair(t_matrix(n, a), t_matrix(n, -a), n, i, j, nslots);
    if (r.size() == 0) r = std::move(term);
    else r += term;
  }
  return r;
}

Matrix classical_r(const EllipticContext& ctx, int n, cplx z, int i, int j, int nslots) {
  require_size(n);
  require_slots(i, j, nslots);
  Eigen::Index dim = 1;
  for (int s = 0; s < nslots; ++s) dim *= n;
  Matrix r = Matrix::Zero(dim, dim);
  for (const BasisIndex a : all_indices(n)) {
    if (a == BasisIndex{}) continue;
    cplx f;
    try {
      f = varphi(ctx, n, a, 0.0, z);
    } catch (const PoleProximity& e) {
      throw PoleProximity(std::string(e.what()) + " (basis index " + index_text(a) + ")");
    }
    r += f * embed_pair(t_matrix(n, a), t_matrix(n, -a), n, i, j, nslots);
  }
  return r;
}

double max_norm(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

OperatorResidual aybe_residual(const EllipticContext& ctx, int n, cplx h1, cplx h2,
                               cplx z1, cplx z2, cplx z3) {
  auto R = [&](cplx h, int a, int b, cplx za, cplx zb) {
    return quantum_R(ctx, n, h, za - zb, a, b, 3);
  };
  const Matrix t1 = R(h1, 1, 2, z1, z2) * R(h2, 2, 3, z2, z3);
  const Matrix t2 = R(-h2, 3, 1, z3, z1) * R(h1 - h2, 1, 2, z1, z2);
  const Matrix t3 = R(h2 - h1, 2, 3, z2, z3) * R(-h1, 3, 1, z3, z1);
  return {t1 + t2 + t3, std::max({max_norm(t1), max_norm(t2), max_norm(t3)})};
}

OperatorResidual qybe_residual(const EllipticContext& ctx, int n, cplx h, cplx z1,
                               cplx z2, cplx z3) {
  const Matrix r12 = quantum_R(ctx, n, h, z1 - z2, 1, 2, 3);
  const Matrix r13 = quantum_R(ctx, n, h, z1 - z3, 1, 3, 3);
  const Matrix r23 = quantum_R(ctx, n, h, z2 - z3, 2, 3, 3);
  const Matrix lhs = r12 * r13 * r23;
  const Matrix rhs = r23 * r13 * r12;
  return {lhs - rhs, std::max(max_norm(lhs), max_norm(rhs))};
}

OperatorResidual cybe_residual(const EllipticContext& ctx, int n, cplx z1, cplx z2,
                               cplx z3) {
  const Matrix r12 = classical_r(ctx, n, z1 - z2, 1, 2, 3);
  const Matrix r13 = classical_r(ctx, n, z1 - z3, 1, 3, 3);
  const Matrix r23 = classical_r(ctx, n, z2 - z3, 2, 3, 3);
  const Matrix c1 = commutator(r12, r13);
  const Matrix c2 = commutator(r12, r23);
  const Matrix c3 = commutator(r13, r23);
  // Each commutator is compared with the products it is built from.
  const double scale = std::max({max_norm(r12 * r13), max_norm(r12 * r23),
                                 max_norm(r13 * r23), max_norm(r13 * r12),
                                 max_norm(r23 * r12), max_norm(r23 * r13)});
  return {c1 + c2 + c3, scale};
}

cplx unitarity_factor(const EllipticContext& ctx, int n, cplx h, cplx z) {
  const double dn = n;
  return dn * dn * (weierstrass(ctx, dn * h) - weierstrass(ctx, z));
}

OperatorResidual unitarity_residual(const EllipticContext& ctx, int n, cplx h, cplx z) {
  const Matrix prod = quantum_R(ctx, n, h, z, 1, 2, 2) * quantum_R(ctx, n, h, -z, 2, 1, 2);
  const cplx f = unitarity_factor(ctx, n, h, z);
  const Matrix id = Matrix::Identity(prod.rows(), prod.cols());
  return {prod - f * id, std::max(max_norm(prod), std::abs(f))};
}

OperatorResidual cubic_identity_residual(const EllipticContext& ctx, int n, cplx h,
                                         cplx z1, cplx z2, cplx z3) {
  const Matrix r23 = quantum_R(ctx, n, h, z2 - z3, 2, 3, 3);
  const Matrix r13 = quantum_R(ctx, n, h, z1 - z3, 1, 3, 3);
  const Matrix r12 = quantum_R(ctx, n, h, z1 - z2, 1, 2, 3);
  const Matrix r12_2h = quantum_R(ctx, n, 2.0 * h, z1 - z2, 1, 2, 3);
  const Matrix r13_2h = quantum_R(ctx, n, 2.0 * h, z1 - z3, 1, 3, 3);
  const Matrix t1 = r23 * r13 * r12;
  const Matrix t2 = r23 * r12_2h * r23;
  const Matrix t3 = unitarity_factor(ctx, n, h, z2 - z3) * r13_2h;
  return {t1 - t2 - t3, std::max({max_norm(t1), max_norm(t2), max_norm(t3)})};
}

std::vector<std::vector<cplx>> pair_components(int n, const Matrix& x) {
  require_size(n);
  if (x.rows() != n * n || x.cols() != n * n)
    throw std::invalid_argument("pair_components: operator must be N^2 x N^2");
  const auto idx = all_indices(n);
  const double norm = static_cast<double>(n) * n;
  std::vector<std::vector<cplx>> out(idx.size(), std::vector<cplx>(idx.size()));
  for (std::size_t p = 0; p < idx.size(); ++p) {
    const Matrix ta_inv = t_matrix(n, idx[p]).adjoint();
    for (std::size_t q = 0; q < idx.size(); ++q) {
      const Matrix tb_inv = t_matrix(n, idx[q]).adjoint();
      out[p][q] = (kron(ta_inv, tb_inv) * x).trace() / norm;
    }
  }
  return out;
}

}  // namespace skron
