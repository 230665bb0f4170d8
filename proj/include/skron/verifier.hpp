#pragma once

// Seeded verification harness: run configuration, the registry of residual
// suites, and report serialisation.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "skron/super_kronecker.hpp"

namespace skron {

enum class OutputFormat { Json, Text };

struct RunConfig {
  std::vector<std::string> suites;
  std::vector<int> n_list{2, 3};
  /// Fixed modular parameter; when empty every sample draws its own.
  std::optional<cplx> tau;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  int cutoff = 20;
  double tol = 1e-9;
  double pole_margin = 1e-3;
  AnsatzCoefficients coeffs = AnsatzCoefficients::canonical();
  /// Basis-function constant; A3 when empty.
  std::optional<cplx> b;
  HeatParams heat{1.0, 1.0};
  OutputFormat format = OutputFormat::Json;
  std::optional<std::string> output_path;

  cplx effective_b() const { return b ? *b : coeffs.a3; }
};

/// Registered suite names in canonical order.
const std::vector<std::string>& suite_names();

/// Throws ConfigError when the configuration cannot be run.
void validate(const RunConfig& config);

/// Parses "1.5", "-2i", "0.1+1.2i", "1e-3-4e-2i" (j is accepted for i).
cplx parse_complex(std::string_view text);

/// Five comma-separated complex numbers, or "canonical" / "truncated".
AnsatzCoefficients parse_coefficients(std::string_view text);

/// Applies one key = value setting (keys mirror the long command-line
/// flags: suites, n, tau, samples, seed, cutoff, tol, pole-margin, coeffs,
/// b, k, kappa, format, output). Throws ConfigError.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Reads flat "key = value" lines ('#' starts a comment). Throws IoError if
/// the file cannot be read and ConfigError on malformed lines.
void apply_config_file(RunConfig& config, const std::string& path);

struct SuiteRecord {
  std::string suite;
  nlohmann::json params = nlohmann::json::object();
  std::size_t samples = 0;
  std::size_t resampled = 0;
  /// Largest and smallest residual over the samples: relative to `scale`
  /// unless `absolute` is set.
  double max_residual = 0.0;
  double min_residual = 0.0;
  /// Residual scale at the worst sample.
  double scale = 0.0;
  double threshold = 0.0;
  bool absolute = false;
  /// Falsification suites pass when every residual exceeds the threshold.
  bool falsification = false;
  bool pass = false;
  std::string error;

  friend bool operator==(const SuiteRecord&, const SuiteRecord&) = default;
};

struct VerificationReport {
  std::string version;
  RunConfig config;
  std::vector<SuiteRecord> suites;
  bool verdict = false;
};

/// Runs every configured suite. Throws ConfigError on an invalid config.
VerificationReport run(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::json& j);

/// Canonical serialisation: sorted keys, complex numbers as [re, im],
/// shortest round-trip doubles.
std::string serialize(const VerificationReport& report, OutputFormat format);

/// Writes the serialised report to `path` (stdout when empty) and returns
/// the number of bytes written. Throws IoError.
std::size_t emit(const VerificationReport& report, OutputFormat format,
                 const std::optional<std::string>& path);

nlohmann::json to_json(const ScanReport& scan);
std::string scan_text(const ScanReport& scan);

/// Number of scan samples whose observed holds/fails pattern disagrees with
/// the algebraic constraints (A1 A5 = A2 A4; heat compatibility; canonical
/// multiple).
std::size_t scan_disagreements(const ScanReport& scan, double rel_tol = 1e-9);

}  // namespace skron
