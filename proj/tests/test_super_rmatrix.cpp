#include <doctest.h>

#include "skron/residue.hpp"
#include "skron/super_rmatrix.hpp"
#include "support.hpp"

using namespace skron;
using skron::test::distance;
using skron::test::Gen;
using skron::test::rel;

namespace {

ScalarElement gen(Generator g) { return ScalarElement::generator(g); }

const Generator Z1 = Generator::zeta1;
const Generator Z2 = Generator::zeta2;
const Generator M1 = Generator::mu1;
const Generator M2 = Generator::mu2;
const Generator W = Generator::omega;

struct Sample {
  EllipticContext ctx;
  cplx h1, h2, z1, z2, z3;
};

template <class F>
int on_samples(Gen& g, int count, F&& body) {
  int done = 0;
  for (int i = 0; i < count; ++i) {
    const EllipticContext ctx(g.tau());
    const cplx tau = ctx.tau();
    const Sample s{ctx, g.cell_point(tau), g.cell_point(tau), g.cell_point(tau),
                   g.cell_point(tau), g.cell_point(tau)};
    try {
      body(s);
      ++done;
    } catch (const PoleProximity&) {
    }
  }
  return done;
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

// Largest deviation of any coefficient of x from a multiple of the identity.
double off_identity(const MatrixElement& x) {
  double worst = 0.0;
  for (const auto& [m, c] : x.terms()) {
    const cplx d = c.trace() / static_cast<double>(c.rows());
    worst = std::max(worst, max_norm(c - d * identity(static_cast<int>(c.rows()))));
  }
  return worst;
}

AnsatzCoefficients fay_compatible(Gen& g) {
  AnsatzCoefficients a = g.coefficients();
  a.a5 = a.a2 * a.a4 / a.a1;
  return a;
}

}  // namespace

TEST_CASE("super basis functions: trivial index and tilde form") {
  Gen g(51);
  on_samples(g, 10, [&](const Sample& s) {
    const AnsatzCoefficients a = g.coefficients();
    const SuperBasisParams p{a, g.complex()};
    const ScalarElement mu = gen(M1);
    const ScalarElement base =
        super_phi(s.ctx, a, s.h1, mu, SuperArgument::plain(s.z1, Z1), SuperArgument::plain(s.z2, Z2));
    CHECK(distance(super_basis_phi(s.ctx, 3, p, {0, 0}, s.h1, mu, 1, 2, s.z1, s.z2), base) <
          1e-14 * base.max_magnitude());

    // Canonical A, B = 2 pi i: the zeta1 zeta2 omega coefficient is 2 pi i times the
    // total tau derivative of varphi_a.
    const SuperBasisParams c{AnsatzCoefficients::canonical(), kTwoPiI};
    const int n = 3;
    const cplx z = s.z1 - s.z2;
    for (const auto idx : all_indices(n)) {
      const ScalarElement f = super_basis_phi(s.ctx, n, c, idx, s.h1, mu, 1, 2, s.z1, s.z2);
      CHECK(rel(gcoeff(f, Monomial{Z1}), varphi(s.ctx, n, idx, s.h1, z)) < 1e-13);
      CHECK(rel(gcoeff(f, Monomial{W}), varphi(s.ctx, n, idx, s.h1, z, 1)) < 1e-13);
      CHECK(rel(gcoeff(f, Monomial{Z1, Z2, W}), kTwoPiI * varphi(s.ctx, n, idx, s.h1, z, 0, 1)) <
            1e-12);
      CHECK(rel(gcoeff(f, Monomial{Z1, Z2, M1}), varphi(s.ctx, n, idx, s.h1, z, 1)) < 1e-13);
    }
  });
}

TEST_CASE("indexed super Fay identity holds for any B") {
  Gen g(52);
  const int n = 2;
  on_samples(g, 5, [&](const Sample& s) {
    const SuperBasisParams p{fay_compatible(g), g.complex()};
    const ScalarElement mu1 = gen(M1), mu2 = gen(M2);
    auto phi = [&](BasisIndex a, cplx h, const ScalarElement& mu, int i, int j, cplx zi, cplx zj) {
      return super_basis_phi(s.ctx, n, p, a, h, mu, i, j, zi, zj);
    };
    for (const auto a : all_indices(n))
      for (const auto b : all_indices(n)) {
        const ScalarElement t1 = phi(a, s.h1, mu1, 1, 2, s.z1, s.z2) * phi(b, s.h2, mu2, 2, 3, s.z2, s.z3);
        const ScalarElement t2 =
            phi(-b, -s.h2, -mu2, 3, 1, s.z3, s.z1) * phi(a - b, s.h1 - s.h2, mu1 - mu2, 1, 2, s.z1, s.z2);
        const ScalarElement t3 =
            phi(b - a, s.h2 - s.h1, mu2 - mu1, 2, 3, s.z2, s.z3) * phi(-a, -s.h1, -mu1, 3, 1, s.z3, s.z1);
        const double scale = std::max({t1.max_magnitude(), t2.max_magnitude(), t3.max_magnitude()});
        CHECK((t1 + t2 + t3).max_magnitude() < 1e-9 * scale);
      }
  });
}

TEST_CASE("shift residual: zero iff B = A3, supported on zeta_i zeta_j omega") {
  Gen g(53);
  on_samples(g, 10, [&](const Sample& s) {
    const AnsatzCoefficients a = g.coefficients();
    const ScalarElement mu = gen(M1);
    for (int n : {2, 3})
      for (const auto idx : all_indices(n)) {
        const SuperBasisParams good{a, a.a3};
        const double mag =
            super_basis_phi(s.ctx, n, good, idx, s.h1, mu, 1, 2, s.z1, s.z2).max_magnitude();
        CHECK(shift_residual(s.ctx, n, good, idx, s.h1, mu, 1, 2, s.z1, s.z2).max_magnitude() <
              1e-10 * mag);

        const cplx b = a.a3 + g.complex_away(1.0, 0.3);
        const SuperBasisParams bad{a, b};
        const ScalarElement r = shift_residual(s.ctx, n, bad, idx, s.h1, mu, 1, 2, s.z1, s.z2);
        const Monomial target{Z1, Z2, W};
        const cplx expected = (b - a.a3) * varphi(s.ctx, n, idx, s.h1, s.z1 - s.z2, 1);
        CHECK(rel(gcoeff(r, target), expected) < 1e-10);
        for (const auto& [m, c] : r.terms())
          if (m != target) CHECK(std::abs(c) < 1e-10 * std::abs(expected));
        CHECK(shift_residual(s.ctx, n, bad, idx, s.h1, mu, 1, 2, s.z1, s.z2, true).max_magnitude() <
              1e-10 * mag);
      }
  });
  CHECK(SuperBasisParams{}.shift_invariant());
  CHECK_FALSE((SuperBasisParams{AnsatzCoefficients::canonical(), 1.0}).shift_invariant());
}

TEST_CASE("super R: components, parity and N = 1") {
  Gen g(54);
  on_samples(g, 10, [&](const Sample& s) {
    const AnsatzCoefficients a = g.coefficients();
    const ScalarElement mu = gen(M1);
    const ScalarElement f =
        super_phi(s.ctx, a, s.h1, mu, SuperArgument::plain(s.z1, Z1), SuperArgument::plain(s.z2, Z2));
    const MatrixElement r1 = super_R(s.ctx, 1, a, s.h1, mu, 1, 2, s.z1, s.z2, 2);
    for (unsigned m = 0; m < 64; ++m) {
      const Monomial mono(static_cast<std::uint8_t>(m));
      CHECK(std::abs(r1.coeff(mono)(0, 0) - f.coeff(mono)) < 1e-13 * f.max_magnitude());
    }
    for (int n : {2, 3}) {
      const MatrixElement r = super_R(s.ctx, n, a, s.h1, mu, 1, 2, s.z1, s.z2, 2);
      const Matrix q = a.a1 * quantum_R(s.ctx, n, s.h1, s.z1 - s.z2);
      CHECK(max_norm(r.coeff(Monomial{Z1}) - q) < 1e-13 * max_norm(q));
      CHECK(parity(r) == Parity::Odd);
      for (const auto& [m, c] : r.terms()) CHECK((m.degree() == 1 || m.degree() == 3));
    }
  });
}

TEST_CASE("super AYBE: N = 1, both directions") {
  Gen g(55);
  const ScalarElement mu1 = gen(M1), mu2 = gen(M2);
  on_samples(g, 4, [&](const Sample& s) {
    const AnsatzCoefficients a = fay_compatible(g);
    const auto one = super_aybe_residual(s.ctx, 1, a, s.h1, s.h2, mu1, mu2, s.z1, s.z2, s.z3);
    const auto scalar = super_fay_residual(s.ctx, a, s.h1, s.h2, mu1, mu2, s.z1, s.z2, s.z3);
    for (const auto& [m, c] : scalar.value.terms())
      CHECK(std::abs(one.value.coeff(m)(0, 0) - c) < 1e-9 * scalar.scale);
    for (int n : {2, 3}) {
      CHECK(super_aybe_residual(s.ctx, n, a, s.h1, s.h2, mu1, mu2, s.z1, s.z2, s.z3).relative() <
            1e-9);
      AnsatzCoefficients off = g.coefficients();
      while (std::abs(off.a1 * off.a5 - off.a2 * off.a4) < 0.1) off = g.coefficients();
      CHECK(super_aybe_residual(s.ctx, n, off, s.h1, s.h2, mu1, mu2, s.z1, s.z2, s.z3).relative() >
            1e-3);
    }
  });
}

TEST_CASE("super symmetry and unitarity") {
  Gen g(56);
  const ScalarElement mu = gen(M1);
  on_samples(g, 6, [&](const Sample& s) {
    for (const AnsatzCoefficients& a :
         {AnsatzCoefficients::canonical(), AnsatzCoefficients::truncated(), fay_compatible(g)})
      for (int n : {2, 3}) {
        require_regular(s.ctx, static_cast<double>(n) * s.h1, "N h");
        CHECK(super_symmetry_residual(s.ctx, n, a, s.h1, mu, 1, 2, s.z1, s.z2).relative() < 1e-9);
        CHECK(super_unitarity_residual(s.ctx, n, a, s.h1, M1, s.z1, s.z2).relative() < 1e-9);

        const MatrixElement r12 = super_R(s.ctx, n, a, s.h1, mu, 1, 2, s.z1, s.z2, 2);
        const MatrixElement r21 = super_R(s.ctx, n, a, s.h1, mu, 2, 1, s.z2, s.z1, 2);
        const MatrixElement p = r12 * r21;
        const MatrixElement q = r21 * r12;
        // Odd operators: the two orders anticommute.
        CHECK((p + q).max_magnitude() < 1e-9 * p.max_magnitude());
        // Shape: multiples of the identity on {zeta1 omega}, {zeta2 omega}, {zeta1 zeta2 mu omega}.
        CHECK(off_identity(p) < 1e-9 * p.max_magnitude());
        for (const auto& [m, c] : p.terms()) {
          const bool allowed = m == Monomial{Z1, W} || m == Monomial{Z2, W} ||
                               m == Monomial{Z1, Z2, M1, W};
          CHECK(allowed);
        }
        if (a.mu_free())
          CHECK(super_unitarity_factor(s.ctx, n, a, s.h1, mu, 1, 2)
                    .coeff(Monomial{Z1, Z2, M1, W}) == cplx{});
      }
  });
  const EllipticContext ctx(cplx{0.1, 1.2});
  CHECK_THROWS_AS(super_unitarity_residual(ctx, 2, {1.0, 1.0, kTwoPiI, 1.0, 2.0}, 0.3, M1, 0.1, 0.6),
                  ConstraintViolated);
}

TEST_CASE("modified quantum Yang-Baxter relations") {
  Gen g(57);
  on_samples(g, 4, [&](const Sample& s) {
    require_regular(s.ctx, 2.0 * s.h1, "2h");
    for (int n : {1, 2, 3}) {
      require_regular(s.ctx, static_cast<double>(n) * s.h1, "N h");
      const auto r =
          modified_qybe_residuals(s.ctx, n, AnsatzCoefficients::canonical(), s.h1, M1, s.z1, s.z2, s.z3);
      CHECK(r.first.relative() < 1e-9);
      CHECK(r.second.relative() < 1e-9);
      const auto t =
          modified_qybe_residuals(s.ctx, n, AnsatzCoefficients::truncated(), s.h1, M1, s.z1, s.z2, s.z3);
      CHECK(t.first.relative() < 1e-9);
    }
  });
  const EllipticContext ctx(cplx{0.1, 1.2});
  CHECK_THROWS_AS(modified_qybe_residuals(ctx, 2, {1.0, 1.0, kTwoPiI, 1.0, 2.0}, 0.3, M1, 0.1, 0.5, 0.8),
                  ConstraintViolated);
}

TEST_CASE("super CYBE") {
  Gen g(58);
  const AnsatzCoefficients a = AnsatzCoefficients::truncated();
  on_samples(g, 6, [&](const Sample& s) {
    CHECK(super_classical_r(s.ctx, 1, a, 1, 2, s.z1, s.z2).is_zero());
    for (int n : {2, 3}) {
      const auto r = super_cybe_residual(s.ctx, n, a, s.z1, s.z2, s.z3);
      CHECK(r.relative() < 1e-9);
      // Cyclically relabelled points.
      CHECK(super_cybe_residual(s.ctx, n, a, s.z2, s.z3, s.z1).relative() < 1e-9);
    }
  });
  const EllipticContext ctx(cplx{0.1, 1.2});
  CHECK_THROWS_AS(super_classical_r(ctx, 2, AnsatzCoefficients::canonical(), 1, 2, 0.1, 0.4),
                  ConstraintViolated);
}

TEST_CASE("residues") {
  Gen g(59);
  for (int i = 0; i < 10; ++i) {
    const EllipticContext ctx(g.tau());
    const cplx tau = ctx.tau();
    const AnsatzCoefficients a = g.coefficients();
    const ScalarElement expected = gscale(a.a1, gen(Z1) - gen(Z2));
    const cplx h1 = (g.real(0.25, 0.75) + g.real(0.25, 0.75) * tau);
    CHECK(std::abs(kronecker_residue(ctx, h1) - 1.0) < 1e-6);
    CHECK(distance(super_phi_residue(ctx, a, h1, gen(M1), g.cell_point(tau)), expected) < 1e-6);
    for (int n : {2, 3}) {
      const cplx h = h1 / static_cast<double>(n);
      const Matrix p = static_cast<double>(n) * permutation(n, 1, 2, 2);
      MatrixElement target(static_cast<std::size_t>(n * n));
      for (const auto& [m, c] : expected.terms()) target.accumulate(m, c * p);
      CHECK(distance(super_R_residue(ctx, n, a, h, gen(M1), g.cell_point(tau)), target) < 1e-6);
    }
  }
}
