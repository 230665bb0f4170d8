#include "skron/elliptic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace skron {
namespace {

// Splits x = x_r + m + n tau with x_r in the fundamental cell.
struct Reduced {
  cplx x;
  long m;
  long n;
};

Reduced reduce(cplx tau, cplx x) {
  const double n = std::round(x.imag() / tau.imag());
  const cplx y = x - n * tau;
  const double m = std::round(y.real());
  return {y - m, static_cast<long>(m), static_cast<long>(n)};
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::string describe(cplx x) {
  std::ostringstream os;
  os.precision(17);
  os << x.real() << (x.imag() < 0 ? "" : "+") << x.imag() << "i";
  return os.str();
}

}  // namespace

EllipticContext::EllipticContext(cplx tau, int cutoff, double tol,
                                 double pole_margin)
    : tau_(tau), cutoff_(cutoff), tol_(tol), pole_margin_(pole_margin) {
  if (!(tau.imag() > 0.0))
    throw std::invalid_argument("EllipticContext: Im tau must be positive");
  if (cutoff < 1) throw std::invalid_argument("EllipticContext: cutoff < 1");
  if (!(tol > 0.0)) throw std::invalid_argument("EllipticContext: tol <= 0");
  if (!(pole_margin > 0.0))
    throw std::invalid_argument("EllipticContext: pole_margin <= 0");

  const auto t0 = theta_taylor(*this, cplx{0.0, 0.0}, 3);
  theta_prime_zero_ = t0[1];
  // -(log theta)'' = 1/z^2 - theta'''(0)/(3 theta'(0)) + O(z^2) near 0.
  const cplx theta3 = 6.0 * t0[3][0];
  wp_constant_ = theta3 / (3.0 * t0[1][0]);
}

double lattice_distance(cplx tau, cplx x) {
  const Reduced r = reduce(tau, x);
  double best = std::abs(r.x);
  for (int p = -1; p <= 1; ++p)
    for (int q = -1; q <= 1; ++q)
      best = std::min(best, std::abs(r.x - (static_cast<double>(p) +
                                            static_cast<double>(q) * tau)));
  return best;
}

void require_regular(const EllipticContext& ctx, cplx x, const char* what) {
  if (lattice_distance(ctx.tau(), x) <= ctx.pole_margin())
    throw PoleProximity(std::string(what) + " = " + describe(x) +
                        " is within pole_margin of the period lattice");
}

std::vector<std::array<cplx, 2>> theta_taylor(const EllipticContext& ctx,
                                              cplx x, int order) {
  if (order < 0) throw std::invalid_argument("theta_taylor: negative order");
  const cplx tau = ctx.tau();
  const Reduced r = reduce(tau, x);
  const int base_order = order + 1;

  std::vector<std::array<cplx, 2>> base(static_cast<std::size_t>(base_order) + 1,
                                        {cplx{}, cplx{}});
  double abs_sum = 0.0;
  const int cutoff = ctx.cutoff();
  for (int k = -cutoff; k < cutoff; ++k) {
    const double q = k + 0.5;
    const cplx term =
        std::exp(kI * kPi * tau * (q * q) + kTwoPiI * (r.x + 0.5) * q);
    abs_sum += std::abs(term);
    const cplx step = kTwoPiI * q;
    const cplx tau_weight = kI * kPi * (q * q);
    cplx w = term;
    for (int j = 0; j <= base_order; ++j) {
      base[static_cast<std::size_t>(j)][0] += w;
      base[static_cast<std::size_t>(j)][1] += w * tau_weight;
      w *= step / static_cast<double>(j + 1);
    }
  }

  // First omitted half-integer on either side, weighted by the largest
  // derivative factor in use.
  for (const double q : {cutoff + 0.5, -(cutoff + 0.5)}) {
    const double tail = std::abs(
        std::exp(kI * kPi * tau * (q * q) + kTwoPiI * (r.x + 0.5) * q));
    const double weight =
        std::pow(1.0 + 2.0 * kPi * std::abs(q), base_order) * (1.0 + kPi * q * q);
    if (tail * weight > ctx.tol() * abs_sum)
      throw TailTooLarge("theta series: cutoff " + std::to_string(cutoff) +
                         " too small at x = " + describe(x));
  }

  // x fixed while tau varies: x_r drifts by -n dtau.
  std::vector<std::array<cplx, 2>> shifted(static_cast<std::size_t>(order) + 1);
  for (int j = 0; j <= order; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    shifted[uj][0] = base[uj][0];
    shifted[uj][1] = base[uj][1] - static_cast<double>(r.n) * (j + 1) * base[uj + 1][0];
  }

  // (-1)^(m+n) exp(-pi i n^2 tau - 2 pi i n (x_r + e)) (1 + pi i n^2 dtau)
  const double n = static_cast<double>(r.n);
  const double sign = ((r.m + r.n) % 2 == 0) ? 1.0 : -1.0;
  const cplx c0 = sign * std::exp(-kI * kPi * (n * n) * tau - kTwoPiI * n * r.x);
  std::vector<std::array<cplx, 2>> factor(static_cast<std::size_t>(order) + 1);
  cplx w = c0;
  for (int j = 0; j <= order; ++j) {
    factor[static_cast<std::size_t>(j)] = {w, w * kI * kPi * (n * n)};
    w *= -kTwoPiI * n / static_cast<double>(j + 1);
  }

  std::vector<std::array<cplx, 2>> out(static_cast<std::size_t>(order) + 1,
                                       {cplx{}, cplx{}});
  for (int a = 0; a <= order; ++a)
    for (int b = 0; a + b <= order; ++b) {
      const auto& f = factor[static_cast<std::size_t>(a)];
      const auto& s = shifted[static_cast<std::size_t>(b)];
      auto& o = out[static_cast<std::size_t>(a + b)];
      o[0] += f[0] * s[0];
      o[1] += f[0] * s[1] + f[1] * s[0];
    }
  return out;
}

cplx theta(const EllipticContext& ctx, cplx z, int n_z, int n_tau) {
  if (n_z < 0 || n_z > 6 || n_tau < 0 || n_tau > 1)
    throw DerivativeOrderExceeded("theta: supported orders are n_z <= 6, n_tau <= 1");
  const auto t = theta_taylor(ctx, z, n_z);
  return t[static_cast<std::size_t>(n_z)][static_cast<std::size_t>(n_tau)] *
         factorial(n_z);
}

KroneckerJet::KroneckerJet(const EllipticContext& ctx, cplx h, cplx z) {
  require_regular(ctx, h, "h");
  require_regular(ctx, z, "z");
  require_regular(ctx, h + z, "h+z");

  constexpr int H = Jet3::kMaxH;
  constexpr int Z = Jet3::kMaxZ;
  const auto sum = theta_taylor(ctx, h + z, H + Z);
  const auto th = theta_taylor(ctx, h, H);
  const auto tz = theta_taylor(ctx, z, Z);

  // theta(h+z + dh + dz): coefficient of dh^a dz^b is c_{a+b} binom(a+b, a).
  Jet3 num;
  for (int a = 0; a <= H; ++a)
    for (int b = 0; b <= Z; ++b) {
      const double binom = factorial(a + b) / (factorial(a) * factorial(b));
      for (int t = 0; t <= Jet3::kMaxT; ++t)
        num.at(a, b, t) = sum[static_cast<std::size_t>(a + b)][static_cast<std::size_t>(t)] * binom;
    }
  Jet3 den_h;
  for (int a = 0; a <= H; ++a)
    for (int t = 0; t <= Jet3::kMaxT; ++t)
      den_h.at(a, 0, t) = th[static_cast<std::size_t>(a)][static_cast<std::size_t>(t)];
  Jet3 den_z;
  for (int b = 0; b <= Z; ++b)
    for (int t = 0; t <= Jet3::kMaxT; ++t)
      den_z.at(0, b, t) = tz[static_cast<std::size_t>(b)][static_cast<std::size_t>(t)];
  Jet3 lead(ctx.theta_prime_zero());
  lead.at(0, 0, 1) = ctx.theta_prime_zero_dtau();

  jet_ = lead * num * den_h.reciprocal() * den_z.reciprocal();
}

cplx KroneckerJet::d(int m, int n, int t) const {
  if (!DerivOrder{m, n, t}.valid())
    throw DerivativeOrderExceeded("kronecker: derivative order (" +
                                  std::to_string(m) + "," + std::to_string(n) +
                                  "," + std::to_string(t) +
                                  ") exceeds the supported jet depth");
  return jet_.at(m, n, t) * factorial(m) * factorial(n);
}

cplx kronecker(const EllipticContext& ctx, cplx h, cplx z, DerivOrder order) {
  if (!order.valid())
    throw DerivativeOrderExceeded("kronecker: unsupported derivative order");
  return KroneckerJet(ctx, h, z).d(order);
}

cplx weierstrass(const EllipticContext& ctx, cplx z, int d) {
  if (d < 0 || d > 2)
    throw std::invalid_argument("weierstrass: derivative order must be 0, 1 or 2");
  require_regular(ctx, z, "z");
  const Reduced r = reduce(ctx.tau(), z);
  const int order = d + 2;
  const auto t = theta_taylor(ctx, r.x, order);

  // Series of theta'/theta around r.x up to e^(d+1).
  std::vector<cplx> num(static_cast<std::size_t>(order));
  for (int j = 0; j < order; ++j)
    num[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j + 1)][0] * static_cast<double>(j + 1);
  std::vector<cplx> q(static_cast<std::size_t>(order));
  for (int k = 0; k < order; ++k) {
    cplx acc = num[static_cast<std::size_t>(k)];
    for (int i = 0; i < k; ++i)
      acc -= q[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(k - i)][0];
    q[static_cast<std::size_t>(k)] = acc / t[0][0];
  }
  // (log theta)^(d+2) = (d+1)! [e^(d+1)] (theta'/theta)
  const cplx log_deriv = q[static_cast<std::size_t>(d + 1)] * factorial(d + 1);
  return d == 0 ? -log_deriv + ctx.wp_constant() : -log_deriv;
}

ScalarResidual fay_residual(const EllipticContext& ctx, cplx h1, cplx h2,
                            cplx z1, cplx z2, cplx z3) {
  const cplx z12 = z1 - z2;
  const cplx z23 = z2 - z3;
  const cplx z31 = z3 - z1;
  const cplx t1 = kronecker(ctx, h1, z12) * kronecker(ctx, h2, z23);
  const cplx t2 = kronecker(ctx, -h2, z31) * kronecker(ctx, h1 - h2, z12);
  const cplx t3 = kronecker(ctx, h2 - h1, z23) * kronecker(ctx, -h1, z31);
  return {t1 + t2 + t3,
          std::max({std::abs(t1), std::abs(t2), std::abs(t3)})};
}

ScalarResidual heat_residual(const EllipticContext& ctx, cplx h, cplx z) {
  const KroneckerJet jet(ctx, h, z);
  const cplx lhs = kTwoPiI * jet.d(0, 0, 1);
  const cplx rhs = jet.d(1, 1, 0);
  return {lhs - rhs, std::max(std::abs(lhs), std::abs(rhs))};
}

}  // namespace skron
