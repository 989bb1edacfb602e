#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bispec {

/// One measured invariant. A check passes when measured <= threshold, or
/// measured > threshold for negative controls (expect_above).
struct CheckResult {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool expect_above = false;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  bool corrupted_cg = false;
  std::vector<SuiteResult> suites;

  bool passed() const;
  const SuiteResult* find(const std::string& suite) const;
};

struct VerifyOptions {
  /// Suite names, or {"all"}.
  std::vector<std::string> suites{"all"};
  std::uint64_t seed = 1;
  /// Multiplies every pass threshold (negative controls excepted).
  double tolerance_scale = 1.0;
  /// Flip one Clebsch-Gordan column sign while the suites run.
  bool corrupt_cg = false;
};

/// group, cg, harmonic, schur, projection, coset, bispectrum, oracle,
/// reconstruct-su2, reconstruct-so3, reality, closure, sphere, matching, io.
const std::vector<std::string>& verify_suite_names();

/// Runs the selected suites. Throws PreconditionError for an unknown name.
VerifyReport run_verify(const VerifyOptions& options);

/// Machine-readable report: {"seed", "passed", "suites": [{"name",
/// "passed", "seconds", "checks": [...]}]}.
std::string verify_report_json(const VerifyReport& report);

}  // namespace bispec
