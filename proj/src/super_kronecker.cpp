#include "skron/super_kronecker.hpp"

#include <algorithm>
#include <stdexcept>

#include "skron/sampling.hpp"

namespace skron {
namespace {

bool close(cplx a, cplx b, double rel_tol) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= rel_tol * scale;
}

ScalarElement gen(Generator g) { return ScalarElement::generator(g); }

FormElement form_term(const ScalarElement& grassmann, DerivOrder order, cplx coef) {
  return gmul(grassmann, FormElement::constant(DiffForm(order, coef)));
}

void require_odd_linear(const ScalarElement& mu, const char* what) {
  for (const auto& [m, c] : mu.terms())
    if (m.degree() != 1)
      throw std::invalid_argument(std::string(what) +
                                  " must be a linear combination of generators");
}

}  // namespace

bool AnsatzCoefficients::fay_compatible(double rel_tol) const {
  return close(a1 * a5, a2 * a4, rel_tol);
}

bool AnsatzCoefficients::boundary_compatible(double rel_tol) const {
  return close(a1, a2, rel_tol) && close(a1, a4, rel_tol) &&
         close(a1, a5, rel_tol) && close(a3, kTwoPiI * a1, rel_tol);
}

bool HeatParams::compatible(const AnsatzCoefficients& a, double rel_tol) const {
  return close(kappa * a.a2, a.a1, rel_tol) &&
         close(kappa * a.a3, kTwoPiI * a.a1, rel_tol) &&
         close(a.a4, k * a.a1, rel_tol) && close(kappa * a.a5, k * a.a1, rel_tol);
}

AnsatzCoefficients HeatParams::solve(cplx a1) const {
  if (kappa == cplx{}) throw std::invalid_argument("HeatParams::solve: kappa = 0");
  return {a1, a1 / kappa, kTwoPiI * a1 / kappa, k * a1, k * a1 / kappa};
}

FormElement ansatz_form(const AnsatzCoefficients& a, const ScalarElement& zeta_a,
                        const ScalarElement& zeta_b, const ScalarElement& mu) {
  const ScalarElement omega = gen(Generator::omega);
  const ScalarElement zz = zeta_a * zeta_b;
  FormElement form = form_term(zeta_a - zeta_b, {0, 0, 0}, a.a1);
  form += form_term(omega, {1, 0, 0}, a.a2);
  form += form_term(zz * omega, {0, 0, 1}, a.a3);
  form += form_term(zz * mu, {1, 0, 0}, a.a4);
  form += form_term((zeta_a + zeta_b) * mu * omega, {2, 0, 0}, 0.5 * a.a5);
  return form;
}

ScalarElement evaluate_form(const EllipticContext& ctx, const FormElement& form,
                            cplx h, cplx z, const ScalarElement& soul) {
  for (const auto& [m, c] : soul.terms())
    if (m.degree() == 0 || m.degree() % 2 != 0)
      throw std::invalid_argument("evaluate_form: soul must be even and nilpotent");

  const KroneckerJet jet(ctx, h, z);
  ScalarElement out = evaluate(form, jet);
  ScalarElement power = ScalarElement::constant(1.0);
  for (int j = 1; !soul.is_zero(); ++j) {
    power = gscale(cplx{1.0 / j}, power * soul);
    if (power.is_zero()) break;
    out += power * evaluate(differentiate(form, 0, j, 0), jet);
  }
  return out;
}

ScalarElement super_phi(const EllipticContext& ctx, const AnsatzCoefficients& a,
                        cplx h, const ScalarElement& mu, const SuperArgument& p1,
                        const SuperArgument& p2) {
  require_odd_linear(mu, "mu");
  require_odd_linear(p1.zeta, "zeta");
  require_odd_linear(p2.zeta, "zeta");
  const FormElement form = ansatz_form(a, p1.zeta, p2.zeta, mu);
  return evaluate_form(ctx, form, h, p1.z - p2.z, p1.z_soul - p2.z_soul);
}

GrassmannResidual super_fay_residual(const EllipticContext& ctx,
                                     const AnsatzCoefficients& a, cplx h1, cplx h2,
                                     const ScalarElement& mu1,
                                     const ScalarElement& mu2, cplx z1, cplx z2,
                                     cplx z3) {
  const auto p1 = SuperArgument::plain(z1, Generator::zeta1);
  const auto p2 = SuperArgument::plain(z2, Generator::zeta2);
  const auto p3 = SuperArgument::plain(z3, Generator::zeta3);

  const ScalarElement t1 =
      super_phi(ctx, a, h1, mu1, p1, p2) * super_phi(ctx, a, h2, mu2, p2, p3);
  const ScalarElement t2 = super_phi(ctx, a, -h2, -mu2, p3, p1) *
                           super_phi(ctx, a, h1 - h2, mu1 - mu2, p1, p2);
  const ScalarElement t3 = super_phi(ctx, a, h2 - h1, mu2 - mu1, p2, p3) *
                           super_phi(ctx, a, -h1, -mu1, p3, p1);
  return {t1 + t2 + t3,
          std::max({t1.max_magnitude(), t2.max_magnitude(), t3.max_magnitude()})};
}

GrassmannResidual super_heat_residual(const EllipticContext& ctx,
                                      const AnsatzCoefficients& a,
                                      const HeatParams& params, cplx h,
                                      Generator mu_gen, cplx z1, cplx z2,
                                      Generator zeta1, Generator zeta2) {
  const ScalarElement z_1 = gen(zeta1);
  const ScalarElement z_2 = gen(zeta2);
  const ScalarElement mu = gen(mu_gen);
  const FormElement phi = ansatz_form(a, z_1, z_2, mu);
  const FormElement dh_phi = differentiate(phi, 1, 0, 0);

  // Constant Grassmann prefactors are applied before differentiating so
  // that terms they annihilate never reach the jet limits.
  const FormElement terms[] = {
      gscale(params.kappa, gderiv(phi, Generator::omega)),
      differentiate(gscale(kTwoPiI, z_1 + z_2) * phi, 0, 0, 1),
      -gderiv(dh_phi, zeta1),
      -differentiate(z_1 * dh_phi, 0, 1, 0),
      differentiate(gscale(0.5 * params.k, mu) * dh_phi, 1, 0, 0),
  };

  const KroneckerJet jet(ctx, h, z1 - z2);
  GrassmannResidual out;
  for (const auto& t : terms) {
    const ScalarElement v = evaluate(t, jet);
    out.scale = std::max(out.scale, v.max_magnitude());
    for (const auto& [m, c] : v.terms()) {
      double& s = out.monomial_scale[m];
      s = std::max(s, std::abs(c));
    }
    out.value += v;
  }
  return out;
}

double GrassmannResidual::monomial_relative() const {
  double best = 0.0;
  for (const auto& [m, c] : value.terms()) {
    const auto it = monomial_scale.find(m);
    const double s = it == monomial_scale.end() ? 0.0 : it->second;
    best = std::max(best, s > 0.0 ? std::abs(c) / s : std::abs(c));
  }
  return best;
}

double BoundaryResiduals::max_relative() const {
  return std::max({unit_z1.relative(), unit_z2.relative(), tau_z1.relative(),
                   tau_z2.relative()});
}

BoundaryResiduals super_boundary_residuals(const EllipticContext& ctx,
                                           const AnsatzCoefficients& a, cplx h,
                                           Generator mu_gen, cplx z1, cplx z2) {
  const ScalarElement mu = gen(mu_gen);
  const ScalarElement omega = gen(Generator::omega);
  const ScalarElement zeta1 = gen(Generator::zeta1);
  const ScalarElement zeta2 = gen(Generator::zeta2);
  const auto p1 = SuperArgument::plain(z1, Generator::zeta1);
  const auto p2 = SuperArgument::plain(z2, Generator::zeta2);
  const ScalarElement base = super_phi(ctx, a, h, mu, p1, p2);

  auto residual = [&](const ScalarElement& lhs, const ScalarElement& rhs) {
    return GrassmannResidual{lhs - rhs,
                             std::max(lhs.max_magnitude(), rhs.max_magnitude())};
  };

  BoundaryResiduals out;
  out.unit_z1 = residual(
      super_phi(ctx, a, h, mu, SuperArgument::plain(z1 + 1.0, Generator::zeta1), p2),
      base);
  out.unit_z2 = residual(
      super_phi(ctx, a, h, mu, p1, SuperArgument::plain(z2 + 1.0, Generator::zeta2)),
      base);

  // The factors carry mu with the sign that makes the canonical ansatz
  // quasi-periodic: exp(-2 pi i (h - mu zeta1 - pi i mu omega)) and
  // exp(2 pi i (h - mu zeta2 - pi i mu omega)).
  const cplx tau = ctx.tau();
  const SuperArgument p1_shift{z1 + tau, gscale(kTwoPiI, zeta1 * omega),
                               zeta1 + gscale(kTwoPiI, omega)};
  const ScalarElement factor1 =
      gexp(ScalarElement::constant(-kTwoPiI * h) +
           gscale(kTwoPiI, mu * zeta1) + gscale(kTwoPiI * kI * kPi, mu * omega));
  out.tau_z1 = residual(super_phi(ctx, a, h, mu, p1_shift, p2), factor1 * base);

  const SuperArgument p2_shift{z2 + tau, gscale(kTwoPiI, zeta2 * omega),
                               zeta2 + gscale(kTwoPiI, omega)};
  const ScalarElement factor2 =
      gexp(ScalarElement::constant(kTwoPiI * h) - gscale(kTwoPiI, mu * zeta2) -
           gscale(kTwoPiI * kI * kPi, mu * omega));
  out.tau_z2 = residual(super_phi(ctx, a, h, mu, p1, p2_shift), factor2 * base);
  return out;
}

std::string to_string(ScanFamily f) {
  switch (f) {
    case ScanFamily::Random: return "random";
    case ScanFamily::FayProjected: return "fay-projected";
    case ScanFamily::HeatFamily: return "heat-family";
    case ScanFamily::BoundaryFamily: return "boundary-family";
  }
  return "unknown";
}

ScanReport constraint_scan(const EllipticContext& ctx, std::size_t n_samples,
                           std::uint64_t seed) {
  if (n_samples == 0) throw std::invalid_argument("constraint_scan: n_samples must be >= 1");
  constexpr ScanFamily kFamilies[] = {ScanFamily::Random, ScanFamily::FayProjected,
                                      ScanFamily::HeatFamily,
                                      ScanFamily::BoundaryFamily};
  RandomStream rng = RandomStream::for_suite(seed, "scan");
  const cplx tau = ctx.tau();
  const ScalarElement mu1 = gen(Generator::mu1);
  const ScalarElement mu2 = gen(Generator::mu2);

  ScanReport report;
  report.seed = seed;
  for (ScanFamily f : kFamilies) report.tallies.push_back({f});

  for (std::size_t i = 0; i < n_samples; ++i) {
    ScanSample s;
    s.index = i;
    s.family = kFamilies[i % 4];
    s.tau = tau;
    s.heat = random_heat_params(rng);
    switch (s.family) {
      case ScanFamily::Random:
        s.coeffs = random_fay_incompatible(rng);
        break;
      case ScanFamily::FayProjected:
        s.coeffs = random_fay_compatible(rng);
        break;
      case ScanFamily::HeatFamily:
        s.coeffs = s.heat.solve(rng.complex_away_from_zero(1.0, 0.3));
        break;
      case ScanFamily::BoundaryFamily:
        s.heat = HeatParams{1.0, 1.0};
        s.coeffs = AnsatzCoefficients::canonical().scaled(rng.complex_away_from_zero(1.0, 0.3));
        break;
    }

    for (;;) {
      const cplx h1 = random_cell_point(rng, tau);
      const cplx h2 = random_cell_point(rng, tau);
      const cplx z1 = random_cell_point(rng, tau);
      const cplx z2 = random_cell_point(rng, tau);
      const cplx z3 = random_cell_point(rng, tau);
      try {
        s.fay_relative =
            super_fay_residual(ctx, s.coeffs, h1, h2, mu1, mu2, z1, z2, z3).relative();
        s.heat_relative =
            super_heat_residual(ctx, s.coeffs, s.heat, h1, Generator::mu1, z1, z2).relative();
        s.boundary_relative =
            super_boundary_residuals(ctx, s.coeffs, h1, Generator::mu1, z1, z2).max_relative();
        break;
      } catch (const PoleProximity&) {
        ++report.resampled_poles;
      }
    }
    s.fay_holds = s.fay_relative < ctx.tol();
    s.heat_holds = s.heat_relative < ctx.tol();
    s.boundary_holds = s.boundary_relative < ctx.tol();

    ScanTally& t = report.tallies[i % 4];
    ++t.samples;
    t.fay_holds += s.fay_holds ? 1 : 0;
    t.heat_holds += s.heat_holds ? 1 : 0;
    t.boundary_holds += s.boundary_holds ? 1 : 0;
    report.samples.push_back(s);
  }
  return report;
}

}  // namespace skron
