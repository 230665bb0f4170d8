#include <doctest.h>

#include "skron/elliptic.hpp"
#include "support.hpp"

using namespace skron;
using skron::test::Gen;
using skron::test::rel;

namespace {

const cplx kTau{0.1, 1.2};

// Central difference of f with step s.
template <class F>
cplx central(F&& f, cplx x, cplx s) {
  return (f(x + s) - f(x - s)) / (2.0 * s);
}

}  // namespace

TEST_CASE("context rejects invalid parameters") {
  CHECK_THROWS_AS(EllipticContext(cplx{0.0, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(EllipticContext(cplx{0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(EllipticContext(kTau, 0), std::invalid_argument);
  CHECK_THROWS_AS(EllipticContext(kTau, 20, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(EllipticContext(kTau, 20, 1e-9, 0.0), std::invalid_argument);
  CHECK_NOTHROW((void)EllipticContext(kTau));
}

TEST_CASE("theta vanishes at the origin and is odd") {
  const EllipticContext ctx(kTau);
  CHECK(std::abs(theta(ctx, 0.0)) < 1e-15);
  Gen g(1);
  for (int i = 0; i < 50; ++i) {
    const cplx z = g.complex(2.0);
    CHECK(std::abs(theta(ctx, -z) + theta(ctx, z)) <= 1e-13 * std::abs(theta(ctx, z)) + 1e-15);
  }
}

TEST_CASE("theta tau derivative equals z second derivative over 4 pi i") {
  const EllipticContext ctx(kTau);
  Gen g(2);
  for (int i = 0; i < 50; ++i) {
    const cplx z = g.complex(1.0);
    CHECK(rel(theta(ctx, z, 0, 1), theta(ctx, z, 2, 0) / (2.0 * kTwoPiI)) < 1e-12);
  }
}

TEST_CASE("theta derivatives match finite differences") {
  const EllipticContext ctx(kTau);
  Gen g(3);
  for (int i = 0; i < 20; ++i) {
    const cplx z = g.complex(0.5);
    for (int n = 0; n < 6; ++n) {
      auto f = [&](cplx x) { return theta(ctx, x, n, 0); };
      CHECK(rel(theta(ctx, z, n + 1, 0), central(f, z, 1e-5)) < 1e-7);
    }
    auto ft = [&](cplx t) { return theta(EllipticContext(t), z); };
    CHECK(rel(theta(ctx, z, 0, 1), central(ft, kTau, 1e-6)) < 1e-6);
  }
}

TEST_CASE("theta signals a truncated series") {
  // theta'(0) is already summed when the context is built.
  CHECK_THROWS_AS((void)EllipticContext(cplx{0.0, 0.05}, 1), TailTooLarge);
}

TEST_CASE("kronecker precondition and pole errors") {
  const EllipticContext ctx(kTau);
  CHECK_THROWS_AS(kronecker(ctx, 0.0, 0.3), PoleProximity);
  CHECK_THROWS_AS(kronecker(ctx, 0.3, 0.0), PoleProximity);
  CHECK_THROWS_AS(kronecker(ctx, 0.3, 1.0), PoleProximity);
  CHECK_THROWS_AS(kronecker(ctx, 0.3, kTau + 1e-4), PoleProximity);
  CHECK_THROWS_AS(kronecker(ctx, 0.3, -0.3), PoleProximity);
  CHECK_THROWS_AS(kronecker(ctx, 0.3, 0.2, DerivOrder{5, 0, 0}), DerivativeOrderExceeded);
  CHECK_THROWS_AS(kronecker(ctx, 0.3, 0.2, DerivOrder{0, 0, 2}), DerivativeOrderExceeded);
}

TEST_CASE("kronecker quasi-periodicity, skew-symmetry and exchange symmetry") {
  Gen g(4);
  for (int i = 0; i < 100; ++i) {
    const EllipticContext ctx(g.tau());
    const cplx tau = ctx.tau();
    const cplx h = g.cell_point(tau);
    const cplx z = g.cell_point(tau);
    if (lattice_distance(tau, h + z) < 0.05) continue;
    const cplx f = kronecker(ctx, h, z);
    CHECK(rel(kronecker(ctx, h, z + 1.0), f) < 1e-12);
    CHECK(rel(kronecker(ctx, h, z + tau), std::exp(-kTwoPiI * h) * f) < 1e-11);
    CHECK(rel(kronecker(ctx, h + tau, z), std::exp(-kTwoPiI * z) * f) < 1e-11);
    CHECK(rel(kronecker(ctx, -h, -z), -f) < 1e-12);
    CHECK(rel(kronecker(ctx, z, h), f) < 1e-12);
  }
}

TEST_CASE("kronecker residue along a ray") {
  const EllipticContext ctx(kTau, 20, 1e-9, 1e-12);
  const cplx h{0.31, 0.47};
  const cplx dir = std::polar(1.0, 0.7);
  CHECK(std::abs(1e-7 * dir * kronecker(ctx, h, 1e-7 * dir) - 1.0) < 1e-6);
}

TEST_CASE("kronecker mixed partials match finite differences") {
  Gen g(5);
  const double step = 1e-5;
  for (int i = 0; i < 20; ++i) {
    const EllipticContext ctx(g.tau());
    const cplx tau = ctx.tau();
    const cplx h = g.cell_point(tau, 0.15);
    const cplx z = g.cell_point(tau, 0.15);
    if (lattice_distance(tau, h + z) < 0.15) continue;
    for (int m = 0; m <= DerivOrder::kMaxM; ++m)
      for (int n = 0; n <= DerivOrder::kMaxN; ++n)
        for (int t = 0; t <= DerivOrder::kMaxT; ++t) {
          const DerivOrder o{m, n, t};
          if (m < DerivOrder::kMaxM) {
            auto f = [&](cplx x) { return kronecker(ctx, x, z, o); };
            CHECK(rel(kronecker(ctx, h, z, {m + 1, n, t}), central(f, h, step)) < 1e-5);
          }
          if (n < DerivOrder::kMaxN) {
            auto f = [&](cplx x) { return kronecker(ctx, h, x, o); };
            CHECK(rel(kronecker(ctx, h, z, {m, n + 1, t}), central(f, z, step)) < 1e-5);
          }
          if (t == 0) {
            auto f = [&](cplx x) { return kronecker(EllipticContext(x), h, z, o); };
            CHECK(rel(kronecker(ctx, h, z, {m, n, 1}), central(f, tau, 1e-6)) < 1e-5);
          }
        }
  }
}

TEST_CASE("weierstrass: parity, Laurent behaviour, half-period zero") {
  Gen g(6);
  for (int i = 0; i < 30; ++i) {
    const EllipticContext ctx(g.tau());
    const cplx z = g.cell_point(ctx.tau());
    CHECK(rel(weierstrass(ctx, -z), weierstrass(ctx, z)) < 1e-12);
    CHECK(rel(weierstrass(ctx, -z, 1), -weierstrass(ctx, z, 1)) < 1e-12);
    auto f = [&](cplx x) { return weierstrass(ctx, x); };
    CHECK(rel(weierstrass(ctx, z, 1), central(f, z, 1e-5)) < 1e-6);
    auto f1 = [&](cplx x) { return weierstrass(ctx, x, 1); };
    CHECK(rel(weierstrass(ctx, z, 2), central(f1, z, 1e-5)) < 1e-6);

    const EllipticContext near(ctx.tau(), 20, 1e-9, 1e-6);
    const cplx w = 1e-3 * std::polar(1.0, g.real(0.0, 6.28));
    CHECK(std::abs(weierstrass(near, w) - 1.0 / (w * w)) < 1e-4);
    const cplx tau = ctx.tau();
    for (const cplx half : {cplx{0.5}, 0.5 * tau, 0.5 * (1.0 + tau)})
      CHECK(std::abs(weierstrass(ctx, half, 1)) < 1e-9 * std::abs(weierstrass(ctx, half, 2)));
  }
  const EllipticContext ctx(kTau);
  CHECK_THROWS_AS(weierstrass(ctx, 0.0), PoleProximity);
}

TEST_CASE("phi(h, z) phi(h, -z) = wp(h) - wp(z)") {
  Gen g(7);
  for (int i = 0; i < 100; ++i) {
    const EllipticContext ctx(g.tau());
    const cplx tau = ctx.tau();
    const cplx h = g.cell_point(tau);
    const cplx z = g.cell_point(tau);
    if (lattice_distance(tau, h + z) < 0.05 || lattice_distance(tau, h - z) < 0.05) continue;
    const cplx lhs = kronecker(ctx, h, z) * kronecker(ctx, h, -z);
    const cplx rhs = weierstrass(ctx, h) - weierstrass(ctx, z);
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::max({std::abs(lhs), std::abs(weierstrass(ctx, h)),
                                                  std::abs(weierstrass(ctx, z))}));
  }
}

TEST_CASE("fay residual vanishes; its h1 derivative too") {
  Gen g(8);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const EllipticContext ctx(g.tau());
    const cplx tau = ctx.tau();
    const cplx h1 = g.cell_point(tau), h2 = g.cell_point(tau);
    const cplx z1 = g.cell_point(tau), z2 = g.cell_point(tau), z3 = g.cell_point(tau);
    try {
      CHECK(fay_residual(ctx, h1, h2, z1, z2, z3).relative() < 1e-9);
      const cplx z12 = z1 - z2, z23 = z2 - z3, z31 = z3 - z1;
      auto k = [&](cplx a, cplx b, int m) { return kronecker(ctx, a, b, {m, 0, 0}); };
      const cplx t1 = k(h1, z12, 1) * k(h2, z23, 0);
      const cplx t2 = k(-h2, z31, 0) * k(h1 - h2, z12, 1);
      const cplx t3 = -k(h2 - h1, z23, 1) * k(-h1, z31, 0) - k(h2 - h1, z23, 0) * k(-h1, z31, 1);
      CHECK(std::abs(t1 + t2 + t3) < 1e-9 * std::max({std::abs(t1), std::abs(t2), std::abs(t3)}));
      ++checked;
    } catch (const PoleProximity&) {
    }
  }
  CHECK(checked > 90);
  const EllipticContext ctx(kTau);
  CHECK_THROWS_AS(fay_residual(ctx, 0.3, 0.3, 0.1, 0.5, 0.7), PoleProximity);
}

TEST_CASE("heat residual vanishes and is 1-periodic in z") {
  Gen g(9);
  for (int i = 0; i < 100; ++i) {
    const EllipticContext ctx(g.tau());
    const cplx tau = ctx.tau();
    const cplx h = g.cell_point(tau), z = g.cell_point(tau);
    if (lattice_distance(tau, h + z) < 0.05) continue;
    const auto r = heat_residual(ctx, h, z);
    CHECK(r.relative() < 1e-9);
    CHECK(std::abs(heat_residual(ctx, h, z + 1.0).value - r.value) < 1e-9 * r.scale);
  }
}
