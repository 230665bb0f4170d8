#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "skron/errors.hpp"
#include "skron/verifier.hpp"

namespace skron {
namespace {

using json = nlohmann::json;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string complex_text(cplx c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", c.real(), c.imag());
  return buf;
}

std::string text_report(const VerificationReport& r) {
  std::ostringstream os;
  os << "skron " << r.version << "  seed=" << r.config.seed << "  samples=" << r.config.samples
     << "  tol=" << sci(r.config.tol) << "\n";
  for (const auto& s : r.suites) {
    char head[64];
    std::snprintf(head, sizeof head, "%-4s %-19s", s.pass ? "PASS" : "FAIL", s.suite.c_str());
    os << head;
    if (s.params.contains("n")) os << " n=" << s.params["n"].dump();
    if (!s.error.empty()) {
      os << "  error: " << s.error << "\n";
      continue;
    }
    os << "  samples=" << s.samples << " resampled=" << s.resampled;
    os << (s.falsification ? "  min=" + sci(s.min_residual) + " > " : "  max=" + sci(s.max_residual) + " < ")
       << sci(s.threshold) << (s.absolute ? " (abs)" : " (rel)") << "\n";
  }
  os << "verdict: " << (r.verdict ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace

std::string serialize(const VerificationReport& report, OutputFormat format) {
  if (format == OutputFormat::Text) return text_report(report);
  return to_json(report).dump(2) + "\n";
}

std::size_t emit(const VerificationReport& report, OutputFormat format,
                 const std::optional<std::string>& path) {
  if (report.suites.empty() && report.config.suites.empty())
    throw ConfigError("refusing to emit a report without suites");
  const std::string bytes = serialize(report, format);
  if (!path) {
    std::cout << bytes << std::flush;
    return bytes.size();
  }
  std::ofstream out(*path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file '" + *path + "'");
  out << bytes;
  out.flush();
  if (!out) throw IoError("failed writing output file '" + *path + "'");
  return bytes.size();
}

json to_json(const ScanReport& scan) {
  json tallies = json::array();
  for (const auto& t : scan.tallies)
    tallies.push_back({{"family", to_string(t.family)},
                       {"samples", t.samples},
                       {"fay_holds", t.fay_holds},
                       {"heat_holds", t.heat_holds},
                       {"boundary_holds", t.boundary_holds}});
  json samples = json::array();
  auto c = [](cplx v) { return json::array({v.real(), v.imag()}); };
  for (const auto& s : scan.samples)
    samples.push_back({{"index", s.index},
                       {"family", to_string(s.family)},
                       {"coefficients", json::array({c(s.coeffs.a1), c(s.coeffs.a2), c(s.coeffs.a3),
                                                     c(s.coeffs.a4), c(s.coeffs.a5)})},
                       {"heat", {{"k", c(s.heat.k)}, {"kappa", c(s.heat.kappa)}}},
                       {"tau", c(s.tau)},
                       {"fay_relative", s.fay_relative},
                       {"heat_relative", s.heat_relative},
                       {"boundary_relative", s.boundary_relative},
                       {"fay_holds", s.fay_holds},
                       {"heat_holds", s.heat_holds},
                       {"boundary_holds", s.boundary_holds}});
  return {{"version", SKRON_VERSION},
          {"seed", scan.seed},
          {"resampled_poles", scan.resampled_poles},
          {"disagreements", scan_disagreements(scan)},
          {"tallies", std::move(tallies)},
          {"samples", std::move(samples)}};
}

std::string scan_text(const ScanReport& scan) {
  std::ostringstream os;
  os << "coefficient scan  seed=" << scan.seed << "  samples=" << scan.samples.size()
     << "  resampled=" << scan.resampled_poles << "\n";
  os << "family            samples  fay-holds  heat-holds  boundary-holds\n";
  for (const auto& t : scan.tallies) {
    char line[128];
    std::snprintf(line, sizeof line, "%-16s  %7zu  %9zu  %10zu  %14zu\n", to_string(t.family).c_str(),
                  t.samples, t.fay_holds, t.heat_holds, t.boundary_holds);
    os << line;
  }
  if (!scan.samples.empty())
    os << "tau = " << complex_text(scan.samples.front().tau) << "\n";
  os << "disagreements with the algebraic constraints: " << scan_disagreements(scan) << "\n";
  return os.str();
}

std::size_t scan_disagreements(const ScanReport& scan, double rel_tol) {
  std::size_t bad = 0;
  for (const auto& s : scan.samples) {
    const bool fay = s.coeffs.fay_compatible(rel_tol);
    const bool heat = s.heat.compatible(s.coeffs, rel_tol);
    const bool boundary = s.coeffs.boundary_compatible(rel_tol);
    if (fay != s.fay_holds || heat != s.heat_holds || boundary != s.boundary_holds) ++bad;
  }
  return bad;
}

}  // namespace skron
