// Command-line front end: `verify` runs residual suites, `scan-coefficients`
// maps which identities hold across the ansatz coefficient space.
//
// Exit codes: 0 all checks pass, 1 some check fails, 2 configuration or I/O
// error.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "skron/errors.hpp"
#include "skron/verifier.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

// Flags are collected as raw strings so that they share one parser with the
// config file and override it key by key.
struct Flags {
  std::string config_path;
  std::map<std::string, std::string> values;
};

void add_setting(CLI::App* cmd, Flags& flags, const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      "--" + key, [&flags, key](const std::string& v) { flags.values[key] = v; }, help);
}

skron::RunConfig build_config(const Flags& flags) {
  skron::RunConfig config;
  config.suites = skron::suite_names();
  if (!flags.config_path.empty()) skron::apply_config_file(config, flags.config_path);
  for (const auto& [key, value] : flags.values) skron::apply_setting(config, key, value);
  return config;
}

int run_verify(const Flags& flags) {
  const skron::RunConfig config = build_config(flags);
  const skron::VerificationReport report = skron::run(config);
  skron::emit(report, config.format, config.output_path);
  if (config.output_path) {
    // Keep a terse summary on the terminal when the report goes to a file.
    std::cerr << "verdict: " << (report.verdict ? "PASS" : "FAIL") << " ("
              << report.suites.size() << " records) -> " << *config.output_path << "\n";
  }
  return report.verdict ? kExitPass : kExitFail;
}

int run_scan(const Flags& flags) {
  skron::RunConfig config = build_config(flags);
  config.suites = {"scan"};
  skron::validate(config);
  const skron::cplx tau = config.tau ? *config.tau : skron::cplx{0.1, 1.2};
  const skron::EllipticContext ctx(tau, config.cutoff, config.tol, config.pole_margin);
  const skron::ScanReport scan = skron::constraint_scan(ctx, config.samples, config.seed);
  const std::string bytes = config.format == skron::OutputFormat::Json
                                ? skron::to_json(scan).dump(2) + "\n"
                                : skron::scan_text(scan);
  if (config.output_path) {
    std::ofstream out(*config.output_path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << bytes)) throw skron::IoError("cannot write '" + *config.output_path + "'");
  } else {
    std::cout << bytes;
  }
  return skron::scan_disagreements(scan, config.tol) == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verifier for odd super-Kronecker functions and elliptic R-matrices"};
  app.set_version_flag("--version", std::string(SKRON_VERSION));
  app.require_subcommand(1);

  Flags verify_flags;
  CLI::App* verify = app.add_subcommand("verify", "Run residual suites and emit a report");
  verify->add_option("--config", verify_flags.config_path, "key = value settings file");
  add_setting(verify, verify_flags, "suites", "Comma-separated suite names or 'all'");
  add_setting(verify, verify_flags, "n", "Comma-separated matrix sizes");
  add_setting(verify, verify_flags, "tau", "Modular parameter, e.g. 0.1+1.2i (default: random per sample)");
  add_setting(verify, verify_flags, "samples", "Samples per suite");
  add_setting(verify, verify_flags, "seed", "Random seed");
  add_setting(verify, verify_flags, "cutoff", "Theta series cutoff");
  add_setting(verify, verify_flags, "tol", "Relative tolerance");
  add_setting(verify, verify_flags, "pole-margin", "Minimum lattice distance of arguments");
  add_setting(verify, verify_flags, "coeffs", "A1..A5 as five complex numbers, or canonical/truncated");
  add_setting(verify, verify_flags, "b", "Basis-function constant B (default A3)");
  add_setting(verify, verify_flags, "k", "Heat-equation parameter k");
  add_setting(verify, verify_flags, "kappa", "Heat-equation parameter kappa");
  add_setting(verify, verify_flags, "format", "json or text");
  add_setting(verify, verify_flags, "output", "Report path (default stdout)");

  Flags scan_flags;
  CLI::App* scan = app.add_subcommand("scan-coefficients", "Sample the ansatz coefficient space");
  scan->add_option("--config", scan_flags.config_path, "key = value settings file");
  add_setting(scan, scan_flags, "samples", "Number of coefficient samples");
  add_setting(scan, scan_flags, "seed", "Random seed");
  add_setting(scan, scan_flags, "tau", "Modular parameter (default 0.1+1.2i)");
  add_setting(scan, scan_flags, "cutoff", "Theta series cutoff");
  add_setting(scan, scan_flags, "tol", "Relative tolerance deciding whether an identity holds");
  add_setting(scan, scan_flags, "pole-margin", "Minimum lattice distance of arguments");
  add_setting(scan, scan_flags, "format", "json or text");
  add_setting(scan, scan_flags, "output", "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (verify->parsed()) return run_verify(verify_flags);
    return run_scan(scan_flags);
  } catch (const skron::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const skron::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitConfig;
  }
}
