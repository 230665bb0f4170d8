#include "skron/verifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "skron/belavin.hpp"
#include "skron/errors.hpp"
#include "skron/residue.hpp"
#include "skron/sampling.hpp"
#include "skron/super_rmatrix.hpp"

namespace skron {
namespace {

constexpr double kFalsifyThreshold = 1e-3;
constexpr double kBasisThreshold = 1e-12;
constexpr double kResidueThreshold = 1e-6;
constexpr int kMaxAttempts = 1000;

using json = nlohmann::json;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError("invalid " + std::string(what) + ": '" + t + "'");
  return v;
}

template <class Int>
Int parse_integer(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  Int v{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError("invalid " + std::string(what) + ": '" + t + "'");
  return v;
}

json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

cplx complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json coeffs_json(const AnsatzCoefficients& a) {
  return json::array({complex_json(a.a1), complex_json(a.a2), complex_json(a.a3),
                      complex_json(a.a4), complex_json(a.a5)});
}

AnsatzCoefficients coeffs_from_json(const json& j) {
  return {complex_from_json(j.at(0)), complex_from_json(j.at(1)), complex_from_json(j.at(2)),
          complex_from_json(j.at(3)), complex_from_json(j.at(4))};
}

json heat_json(const HeatParams& h) {
  return json{{"k", complex_json(h.k)}, {"kappa", complex_json(h.kappa)}};
}

// ---------------------------------------------------------------------------
// Sampling machinery.

/// Running extrema of a residual over samples.
struct Tally {
  std::size_t samples = 0;
  std::size_t resampled = 0;
  double max_residual = 0.0;
  double min_residual = std::numeric_limits<double>::infinity();
  double scale = 0.0;

  void add(double residual, double s) {
    ++samples;
    if (!(residual <= max_residual)) {  // also catches NaN
      max_residual = residual;
      scale = s;
    }
    min_residual = std::min(min_residual, residual);
  }
};

struct Measurement {
  double residual;
  double scale;
};

class Suite {
 public:
  Suite(const RunConfig& config, std::string name)
      : config_(config), name_(std::move(name)),
        rng_(RandomStream::for_suite(config.seed, name_)) {
    if (config.tau) ctx_.emplace(*config.tau, config.cutoff, config.tol, config.pole_margin);
  }

  RandomStream& rng() { return rng_; }
  const RunConfig& config() const { return config_; }
  const std::string& name() const { return name_; }

  EllipticContext context() {
    if (ctx_) return *ctx_;
    return EllipticContext(random_tau(rng_), config_.cutoff, config_.tol, config_.pole_margin);
  }

  /// Draws `count` samples of `body`, redrawing on pole proximity.
  void sample(Tally& tally, std::size_t count,
              const std::function<Measurement(const EllipticContext&)>& body) {
    for (std::size_t i = 0; i < count; ++i) {
      for (int attempt = 0;; ++attempt) {
        if (attempt == kMaxAttempts)
          throw PoleProximity("no regular sample found after " + std::to_string(kMaxAttempts) +
                              " draws");
        const EllipticContext ctx = context();
        try {
          const Measurement m = body(ctx);
          tally.add(m.residual, m.scale);
          break;
        } catch (const PoleProximity&) {
          ++tally.resampled;
        }
      }
    }
  }

  SuiteRecord record(json params, const Tally& t, double threshold, bool absolute,
                     bool falsification) const {
    SuiteRecord r;
    r.suite = name_;
    params["tau"] = config_.tau ? complex_json(*config_.tau) : json("random");
    r.params = std::move(params);
    r.samples = t.samples;
    r.resampled = t.resampled;
    r.max_residual = t.max_residual;
    r.min_residual = t.samples ? t.min_residual : 0.0;
    r.scale = t.scale;
    r.threshold = threshold;
    r.absolute = absolute;
    r.falsification = falsification;
    r.pass = t.samples > 0 && (falsification ? r.min_residual > threshold
                                             : r.max_residual < threshold);
    return r;
  }

  cplx point(cplx tau) { return random_cell_point(rng_, tau); }

 private:
  const RunConfig& config_;
  std::string name_;
  RandomStream rng_;
  std::optional<EllipticContext> ctx_;
};

ScalarElement gen(Generator g) { return ScalarElement::generator(g); }

json with_n(json params, int n) {
  params["n"] = n;
  return params;
}

// ---------------------------------------------------------------------------
// Suites. Each returns one record, or one per matrix size.

using Records = std::vector<SuiteRecord>;

Records suite_fay(Suite& s) {
  Tally t;
  s.sample(t, s.config().samples, [&](const EllipticContext& ctx) {
    const cplx tau = ctx.tau();
    const auto r = fay_residual(ctx, s.point(tau), s.point(tau), s.point(tau), s.point(tau),
                                s.point(tau));
    return Measurement{r.relative(), r.scale};
  });
  return {s.record(json::object(), t, s.config().tol, false, false)};
}

Records suite_heat(Suite& s) {
  Tally t;
  s.sample(t, s.config().samples, [&](const EllipticContext& ctx) {
    const auto r = heat_residual(ctx, s.point(ctx.tau()), s.point(ctx.tau()));
    return Measurement{r.relative(), r.scale};
  });
  return {s.record(json::object(), t, s.config().tol, false, false)};
}

Records suite_boundary(Suite& s) {
  const AnsatzCoefficients& a = s.config().coeffs;
  Tally t;
  s.sample(t, s.config().samples, [&](const EllipticContext& ctx) {
    const cplx tau = ctx.tau();
    const cplx h = s.point(tau);
    const cplx z1 = s.point(tau);
    const cplx z2 = s.point(tau);
    const cplx f = kronecker(ctx, h, z1);
    const cplx f1 = kronecker(ctx, h, z1 + 1.0);
    const cplx ft = kronecker(ctx, h, z1 + tau);
    const cplx expected = std::exp(-kTwoPiI * h) * f;
    const double scalar =
        std::max(std::abs(f1 - f) / std::max(std::abs(f1), std::abs(f)),
                 std::abs(ft - expected) / std::max(std::abs(ft), std::abs(expected)));
    const auto sup = super_boundary_residuals(ctx, a, h, Generator::mu1, z1, z2);
    return Measurement{std::max(scalar, sup.max_relative()), std::abs(ft)};
  });
  return {s.record(json{{"coefficients", coeffs_json(a)}}, t, s.config().tol, false, false)};
}

Records suite_super_fay(Suite& s, bool falsify) {
  const AnsatzCoefficients& configured = s.config().coeffs;
  // Falsification needs coefficients off the constraint; draw them when the
  // configured ones satisfy it.
  const bool draw = falsify && configured.fay_compatible(s.config().tol);
  Tally t;
  s.sample(t, s.config().samples, [&](const EllipticContext& ctx) {
    const AnsatzCoefficients a = draw ? random_fay_incompatible(s.rng()) : configured;
    const cplx tau = ctx.tau();
    const auto r = super_fay_residual(ctx, a, s.point(tau), s.point(tau), gen(Generator::mu1),
                                      gen(Generator::mu2), s.point(tau), s.point(tau),
                                      s.point(tau));
    return Measurement{r.relative(), r.scale};
  });
  json params{{"coefficients", draw ? json("random-off-constraint") : coeffs_json(configured)}};
  return {s.record(std::move(params), t, falsify ? kFalsifyThreshold : s.config().tol, false,
                   falsify)};
}

/// Heat-compatible coefficients with exactly one of the four conditions broken.
AnsatzCoefficients single_violation(RandomStream& rng, const HeatParams& heat,
                                    std::size_t which) {
  AnsatzCoefficients a = heat.solve(rng.complex_away_from_zero(1.0, 0.3));
  const cplx bump = rng.complex_away_from_zero(1.0, 0.3);
  switch (which % 4) {
    case 0: a.a2 += bump; break;
    case 1: a.a3 += bump; break;
    case 2: a.a4 += bump; break;
    default: a.a5 += bump; break;
  }
  return a;
}

Records suite_super_heat(Suite& s, bool falsify) {
  const AnsatzCoefficients& configured = s.config().coeffs;
  const HeatParams& heat = s.config().heat;
  const bool draw = falsify && heat.compatible(configured, s.config().tol);
  if (draw && heat.kappa == cplx{})
    throw ConfigError("super-heat-falsify needs kappa != 0 to build violating coefficients");
  Tally t;
  std::size_t index = 0;
  s.sample(t, s.config().samples, [&](const EllipticContext& ctx) {
    const AnsatzCoefficients a = draw ? single_violation(s.rng(), heat, index) : configured;
    const cplx tau = ctx.tau();
    const auto r =
        super_heat_residual(ctx, a, heat, s.point(tau), Generator::mu1, s.point(tau), s.point(tau));
    ++index;
    // A broken condition can be confined to monomials whose terms are small
    // next to the global scale, so falsification compares per monomial.
    return Measurement{falsify ? r.monomial_relative() : r.relative(), r.scale};
  });
  json params{{"coefficients", draw ? json("single-condition-violations") : coeffs_json(configured)},
              {"heat", heat_json(heat)}};
  return {s.record(std::move(params), t, falsify ? kFalsifyThreshold : s.config().tol, false,
                   falsify)};
}

Records suite_basis_algebra(Suite& s) {
  Records out;
  for (int n : s.config().n_list) {
    Tally t;
    const auto idx = all_indices(n);
    const Matrix id = Matrix::Identity(n, n);
    double worst = 0.0;
    for (const auto a : idx)
      for (const auto b : idx) {
        const Matrix ta = t_matrix(n, a);
        const Matrix tb = t_matrix(n, b);
        double err = max_norm(ta * tb - structure_constant(n, a, b) * t_matrix(n, a + b));
        // With reduced representatives a + b = (pN, qN) and T_{a+b} = (-1)^{pqN} Id.
        const BasisIndex c = a + b;
        const bool inverse = c.is_zero_mod(n);
        const double sign = ((c.a1 / n) * (c.a2 / n) * n) % 2 == 0 ? 1.0 : -1.0;
        const cplx expected =
            inverse ? sign * static_cast<double>(n) * structure_constant(n, a, b) : 0.0;
        err = std::max(err, std::abs((ta * tb).trace() - expected));
        worst = std::max(worst, err);
        t.add(err, 1.0);
      }
    Matrix q = id, l = id;
    for (int k = 0; k < n; ++k) {
      q *= clock_matrix(n);
      l *= shift_matrix(n);
    }
    Matrix sum = Matrix::Zero(n * n, n * n);
    for (const auto a : idx) sum += embed_pair(t_matrix(n, a), t_matrix(n, -a), n, 1, 2, 2);
    const double extra = std::max({max_norm(q - id), max_norm(l - id),
                                   max_norm(sum - static_cast<double>(n) * permutation(n, 1, 2, 2))});
    t.add(extra, 1.0);
    out.push_back(s.record(with_n(json::object(), n), t, kBasisThreshold, true, false));
  }
  return out;
}

Records suite_shift_invariance(Suite& s) {
  const SuperBasisParams params{s.config().coeffs, s.config().effective_b()};
  Records out;
  for (int n : s.config().n_list) {
    Tally t;
    s.sample(t, s.config().samples, [&](const EllipticContext& ctx) {
      const cplx tau = ctx.tau();
      const cplx h = s.point(tau);
      const cplx z1 = s.point(tau);
      const cplx z2 = s.point(tau);
      const ScalarElement mu = gen(Generator::mu1);
      double worst = 0.0;
      double scale = 0.0;
      for (const auto a : all_indices(n)) {
        const cplx v = varphi(ctx, n, a, h, z1 - z2);
        const cplx v1 = varphi(ctx, n, {a.a1 + n, a.a2}, h, z1 - z2);
        const cplx v2 = varphi(ctx, n, {a.a1, a.a2 + n}, h, z1 - z2);
        worst = std::max({worst, std::abs(v1 - v) / std::abs(v), std::abs(v2 - v) / std::abs(v)});
        const double mag =
            super_basis_phi(ctx, n, params, a, h, mu, 1, 2, z1, z2).max_magnitude();
        for (bool a1 : {true, false}) {
          const auto r = shift_residual(ctx, n, params, a, h, mu, 1, 2, z1, z2, a1);
          worst = std::max(worst, r.max_magnitude() / mag);
        }
        scale = std::max(scale, mag);
      }
      return Measurement{worst, scale};
    });
    json p{{"coefficients", coeffs_json(params.a)}, {"b", complex_json(params.b)}};
    out.push_back(s.record(with_n(std::move(p), n), t, s.config().tol, false, false));
  }
  return out;
}

/// Runs an operator-valued check once per matrix size.
template <class F>
Records per_n(Suite& s, json params, F&& body) {
  Records out;
  for (int n : s.config().n_list) {
    Tally t;
    s.sample(t, s.config().samples,
             [&](const EllipticContext& ctx) { return body(ctx, n); });
    out.push_back(s.record(with_n(params, n), t, s.config().tol, false, false));
  }
  return out;
}

template <class R>
Measurement measure(const R& r) {
  return {r.relative(), r.scale};
}

Records suite_aybe(Suite& s) {
  return per_n(s, json::object(), [&](const EllipticContext& ctx, int n) {
    const cplx tau = ctx.tau();
    return measure(aybe_residual(ctx, n, s.point(tau), s.point(tau), s.point(tau), s.point(tau),
                                 s.point(tau)));
  });
}

Records suite_qybe(Suite& s) {
  return per_n(s, json::object(), [&](const EllipticContext& ctx, int n) {
    const cplx tau = ctx.tau();
    return measure(qybe_residual(ctx, n, s.point(tau), s.point(tau), s.point(tau), s.point(tau)));
  });
}

Records suite_cybe(Suite& s) {
  return per_n(s, json::object(), [&](const EllipticContext& ctx, int n) {
    const cplx tau = ctx.tau();
    return measure(cybe_residual(ctx, n, s.point(tau), s.point(tau), s.point(tau)));
  });
}

Records suite_unitarity(Suite& s) {
  return per_n(s, json::object(), [&](const EllipticContext& ctx, int n) {
    const cplx tau = ctx.tau();
    const cplx h = s.point(tau);
    return measure(unitarity_residual(ctx, n, h, s.point(tau) - s.point(tau)));
  });
}

Records suite_cubic(Suite& s) {
  return per_n(s, json::object(), [&](const EllipticContext& ctx, int n) {
    const cplx tau = ctx.tau();
    const cplx h = s.point(tau);
    require_regular(ctx, 2.0 * h, "2h");
    return measure(cubic_identity_residual(ctx, n, h, s.point(tau), s.point(tau), s.point(tau)));
  });
}

Records suite_super_aybe(Suite& s) {
  const AnsatzCoefficients& a = s.config().coeffs;
  return per_n(s, json{{"coefficients", coeffs_json(a)}}, [&](const EllipticContext& ctx, int n) {
    const cplx tau = ctx.tau();
    return measure(super_aybe_residual(ctx, n, a, s.point(tau), s.point(tau), gen(Generator::mu1),
                                       gen(Generator::mu2), s.point(tau), s.point(tau),
                                       s.point(tau)));
  });
}

Records suite_super_symmetry(Suite& s) {
  const AnsatzCoefficients& a = s.config().coeffs;
  return per_n(s, json{{"coefficients", coeffs_json(a)}}, [&](const EllipticContext& ctx, int n) {
    const cplx tau = ctx.tau();
    const cplx h = s.point(tau);
    return measure(super_symmetry_residual(ctx, n, a, h, gen(Generator::mu1), 1, 2, s.point(tau),
                                           s.point(tau)));
  });
}

Records suite_super_unitarity(Suite& s) {
  const AnsatzCoefficients& a = s.config().coeffs;
  return per_n(s, json{{"coefficients", coeffs_json(a)}}, [&](const EllipticContext& ctx, int n) {
    const cplx tau = ctx.tau();
    const cplx h = s.point(tau);
    require_regular(ctx, static_cast<double>(n) * h, "N h");
    return measure(
        super_unitarity_residual(ctx, n, a, h, Generator::mu1, s.point(tau), s.point(tau)));
  });
}

Records suite_super_qybe(Suite& s, bool first) {
  const AnsatzCoefficients& a = s.config().coeffs;
  return per_n(s, json{{"coefficients", coeffs_json(a)}}, [&](const EllipticContext& ctx, int n) {
    const cplx tau = ctx.tau();
    const cplx h = s.point(tau);
    require_regular(ctx, 2.0 * h, "2h");
    require_regular(ctx, static_cast<double>(n) * h, "N h");
    const auto r = modified_qybe_residuals(ctx, n, a, h, Generator::mu1, s.point(tau),
                                           s.point(tau), s.point(tau));
    return measure(first ? r.first : r.second);
  });
}

Records suite_super_cybe(Suite& s) {
  // The classical limit drops mu, so the mu couplings are projected out.
  AnsatzCoefficients a = s.config().coeffs;
  a.a4 = 0.0;
  a.a5 = 0.0;
  return per_n(s, json{{"coefficients", coeffs_json(a)}}, [&](const EllipticContext& ctx, int n) {
    const cplx tau = ctx.tau();
    return measure(super_cybe_residual(ctx, n, a, s.point(tau), s.point(tau), s.point(tau)));
  });
}

Records suite_residue(Suite& s) {
  const AnsatzCoefficients& a = s.config().coeffs;
  const ScalarElement mu = gen(Generator::mu1);
  const ScalarElement expected =
      gscale(a.a1, gen(Generator::zeta1) - gen(Generator::zeta2));
  // The contour has radius 0.05, so every h + Omega_a must stay clear of the
  // lattice by more than that: h is drawn from the middle half of a cell of
  // the refined lattice (Z + tau Z) / N, which no h + Omega_a can leave.
  auto draw_h = [&](int n, cplx tau) {
    return (s.rng().uniform(0.25, 0.75) + s.rng().uniform(0.25, 0.75) * tau) /
           static_cast<double>(n);
  };
  Records out;
  Tally scalar;
  s.sample(scalar, s.config().samples, [&](const EllipticContext& ctx) {
    const cplx tau = ctx.tau();
    const cplx h = draw_h(1, tau);
    const double e1 = std::abs(kronecker_residue(ctx, h) - 1.0);
    const double e2 = (super_phi_residue(ctx, a, h, mu, s.point(tau)) - expected).max_magnitude();
    return Measurement{std::max(e1, e2), 1.0};
  });
  out.push_back(s.record(json{{"coefficients", coeffs_json(a)}, {"n", 1}}, scalar,
                         kResidueThreshold, true, false));
  for (int n : s.config().n_list) {
    Tally t;
    const Matrix p = static_cast<double>(n) * permutation(n, 1, 2, 2);
    MatrixElement target(static_cast<std::size_t>(n * n));
    for (const auto& [m, c] : expected.terms()) target.accumulate(m, c * p);
    s.sample(t, s.config().samples, [&](const EllipticContext& ctx) {
      const cplx tau = ctx.tau();
      const cplx h = draw_h(n, tau);
      const auto r = super_R_residue(ctx, n, a, h, mu, s.point(tau));
      return Measurement{(r - target).max_magnitude(), 1.0};
    });
    out.push_back(s.record(json{{"coefficients", coeffs_json(a)}, {"n", n}}, t,
                           kResidueThreshold, true, false));
  }
  return out;
}

Records suite_scan(Suite& s) {
  const RunConfig& c = s.config();
  const cplx tau = c.tau ? *c.tau : random_tau(s.rng());
  const EllipticContext ctx(tau, c.cutoff, c.tol, c.pole_margin);
  const ScanReport scan = constraint_scan(ctx, c.samples, c.seed);
  // The residual reported for the scan is the number of samples whose
  // observed holds/fails pattern contradicts the algebraic constraints.
  Tally t;
  t.resampled = scan.resampled_poles;
  t.samples = scan.samples.size();
  t.max_residual = t.min_residual = static_cast<double>(scan_disagreements(scan, c.tol));
  t.scale = 1.0;
  return {s.record(json{{"scan_tau", complex_json(tau)}}, t, 1.0, true, false)};
}

using SuiteFn = std::function<Records(Suite&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"fay", suite_fay},
      {"heat", suite_heat},
      {"boundary", suite_boundary},
      {"super-fay", [](Suite& s) { return suite_super_fay(s, false); }},
      {"super-fay-falsify", [](Suite& s) { return suite_super_fay(s, true); }},
      {"super-heat", [](Suite& s) { return suite_super_heat(s, false); }},
      {"super-heat-falsify", [](Suite& s) { return suite_super_heat(s, true); }},
      {"basis-algebra", suite_basis_algebra},
      {"shift-invariance", suite_shift_invariance},
      {"aybe", suite_aybe},
      {"qybe", suite_qybe},
      {"cybe", suite_cybe},
      {"unitarity", suite_unitarity},
      {"cubic-3-24", suite_cubic},
      {"super-aybe", suite_super_aybe},
      {"super-symmetry", suite_super_symmetry},
      {"super-unitarity", suite_super_unitarity},
      {"super-qybe-1", [](Suite& s) { return suite_super_qybe(s, true); }},
      {"super-qybe-2", [](Suite& s) { return suite_super_qybe(s, false); }},
      {"super-cybe", suite_super_cybe},
      {"residue", suite_residue},
      {"scan", suite_scan},
  };
  return r;
}

std::string format_name(OutputFormat f) { return f == OutputFormat::Json ? "json" : "text"; }

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

void validate(const RunConfig& c) {
  if (c.suites.empty()) throw ConfigError("no suites selected");
  for (const auto& name : c.suites)
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
      throw ConfigError("unknown suite '" + name + "'");
  if (c.samples < 1) throw ConfigError("samples must be >= 1");
  if (c.n_list.empty()) throw ConfigError("matrix size list is empty");
  for (int n : c.n_list)
    if (n < 1) throw ConfigError("matrix sizes must be >= 1");
  if (c.tau && !(c.tau->imag() > 0.0)) throw ConfigError("Im tau must be positive");
  if (c.cutoff < 1) throw ConfigError("cutoff must be >= 1");
  if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
  if (!(c.pole_margin > 0.0)) throw ConfigError("pole-margin must be positive");
}

cplx parse_complex(std::string_view text) {
  std::string t;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') t.push_back(ch);
  if (t.empty()) throw ConfigError("empty complex number");
  const char last = t.back();
  if (last != 'i' && last != 'j') return {parse_double(t, "complex number"), 0.0};

  t.pop_back();
  // Split at the last sign that is not an exponent sign.
  std::size_t split_at = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;)
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split_at = k;
      break;
    }
  const std::string re = split_at == std::string::npos ? "" : t.substr(0, split_at);
  std::string im = split_at == std::string::npos ? t : t.substr(split_at);
  if (im.empty() || im == "+") im = "1";
  else if (im == "-") im = "-1";
  if (!im.empty() && im.front() == '+') im.erase(0, 1);
  return {re.empty() ? 0.0 : parse_double(re, "complex number"),
          parse_double(im, "complex number")};
}

AnsatzCoefficients parse_coefficients(std::string_view text) {
  const std::string t = trim(text);
  if (t == "canonical") return AnsatzCoefficients::canonical();
  if (t == "truncated") return AnsatzCoefficients::truncated();
  const auto parts = split(t, ',');
  if (parts.size() != 5) throw ConfigError("coefficients need five comma-separated values");
  return {parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2]),
          parse_complex(parts[3]), parse_complex(parts[4])};
}

void apply_setting(RunConfig& c, std::string_view key_in, std::string_view value_in) {
  std::string key = trim(key_in);
  std::replace(key.begin(), key.end(), '_', '-');
  const std::string value = trim(value_in);
  if (key == "suites") {
    c.suites.clear();
    if (value == "all") {
      c.suites = suite_names();
    } else {
      for (auto& s : split(value, ','))
        if (!s.empty()) c.suites.push_back(s);
    }
  } else if (key == "n") {
    c.n_list.clear();
    for (const auto& s : split(value, ',')) c.n_list.push_back(parse_integer<int>(s, "n"));
  } else if (key == "tau") {
    if (value == "random") c.tau.reset();
    else c.tau = parse_complex(value);
  } else if (key == "samples") {
    const long long v = parse_integer<long long>(value, "samples");
    if (v < 1) throw ConfigError("samples must be >= 1");
    c.samples = static_cast<std::size_t>(v);
  } else if (key == "seed") {
    c.seed = parse_integer<std::uint64_t>(value, "seed");
  } else if (key == "cutoff") {
    c.cutoff = parse_integer<int>(value, "cutoff");
  } else if (key == "tol") {
    c.tol = parse_double(value, "tol");
  } else if (key == "pole-margin") {
    c.pole_margin = parse_double(value, "pole-margin");
  } else if (key == "coeffs") {
    c.coeffs = parse_coefficients(value);
  } else if (key == "b") {
    c.b = parse_complex(value);
  } else if (key == "k") {
    c.heat.k = parse_complex(value);
  } else if (key == "kappa") {
    c.heat.kappa = parse_complex(value);
  } else if (key == "format") {
    if (value == "json") c.format = OutputFormat::Json;
    else if (value == "text") c.format = OutputFormat::Text;
    else throw ConfigError("format must be json or text");
  } else if (key == "output") {
    if (value.empty()) c.output_path.reset();
    else c.output_path = value;
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

void apply_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key = value");
    apply_setting(c, std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1));
  }
}

VerificationReport run(const RunConfig& config) {
  validate(config);
  VerificationReport report;
  report.version = SKRON_VERSION;
  report.config = config;
  report.verdict = true;
  for (const auto& name : config.suites) {
    const auto it = std::find_if(registry().begin(), registry().end(),
                                 [&](const auto& e) { return e.first == name; });
    Suite suite(config, name);
    Records records;
    try {
      records = it->second(suite);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      SuiteRecord failed;
      failed.suite = name;
      failed.error = e.what();
      failed.pass = false;
      records = {failed};
    }
    for (auto& r : records) {
      report.verdict = report.verdict && r.pass;
      report.suites.push_back(std::move(r));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Serialisation.

json to_json(const RunConfig& c) {
  json j;
  j["suites"] = c.suites;
  j["n"] = c.n_list;
  j["tau"] = c.tau ? complex_json(*c.tau) : json(nullptr);
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["cutoff"] = c.cutoff;
  j["tol"] = c.tol;
  j["pole_margin"] = c.pole_margin;
  j["coefficients"] = coeffs_json(c.coeffs);
  j["b"] = complex_json(c.effective_b());
  j["heat"] = heat_json(c.heat);
  j["format"] = format_name(c.format);
  j["output"] = c.output_path ? json(*c.output_path) : json(nullptr);
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.suites = j.at("suites").get<std::vector<std::string>>();
  c.n_list = j.at("n").get<std::vector<int>>();
  if (!j.at("tau").is_null()) c.tau = complex_from_json(j.at("tau"));
  c.samples = j.at("samples").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.cutoff = j.at("cutoff").get<int>();
  c.tol = j.at("tol").get<double>();
  c.pole_margin = j.at("pole_margin").get<double>();
  c.coeffs = coeffs_from_json(j.at("coefficients"));
  c.b = complex_from_json(j.at("b"));
  c.heat = {complex_from_json(j.at("heat").at("k")), complex_from_json(j.at("heat").at("kappa"))};
  c.format = j.at("format").get<std::string>() == "text" ? OutputFormat::Text : OutputFormat::Json;
  if (!j.at("output").is_null()) c.output_path = j.at("output").get<std::string>();
  return c;
}

json to_json(const VerificationReport& r) {
  json suites = json::array();
  for (const auto& s : r.suites) {
    json e;
    e["suite"] = s.suite;
    e["params"] = s.params;
    e["samples"] = s.samples;
    e["resampled"] = s.resampled;
    e["max_residual"] = s.max_residual;
    e["min_residual"] = s.min_residual;
    e["scale"] = s.scale;
    e["threshold"] = s.threshold;
    e["absolute"] = s.absolute;
    e["falsification"] = s.falsification;
    e["pass"] = s.pass;
    e["error"] = s.error;
    suites.push_back(std::move(e));
  }
  return json{{"version", r.version},
              {"config", to_json(r.config)},
              {"suites", std::move(suites)},
              {"verdict", r.verdict ? "PASS" : "FAIL"}};
}

VerificationReport report_from_json(const json& j) {
  VerificationReport r;
  r.version = j.at("version").get<std::string>();
  r.config = config_from_json(j.at("config"));
  r.verdict = j.at("verdict").get<std::string>() == "PASS";
  auto number = [](const json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  };
  for (const auto& e : j.at("suites")) {
    SuiteRecord s;
    s.suite = e.at("suite").get<std::string>();
    s.params = e.at("params");
    s.samples = e.at("samples").get<std::size_t>();
    s.resampled = e.at("resampled").get<std::size_t>();
    s.max_residual = number(e.at("max_residual"));
    s.min_residual = number(e.at("min_residual"));
    s.scale = number(e.at("scale"));
    s.threshold = number(e.at("threshold"));
    s.absolute = e.at("absolute").get<bool>();
    s.falsification = e.at("falsification").get<bool>();
    s.pass = e.at("pass").get<bool>();
    s.error = e.at("error").get<std::string>();
    r.suites.push_back(std::move(s));
  }
  return r;
}

}  // namespace skron
