#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace qbat {

/// One verification check. For two-sided checks pass means
/// |computed - reference| <= tolerance; a few one-sided checks (named *_min*)
/// pass when computed >= reference and carry tolerance 0.
struct CheckRecord {
  int criterion;  ///< 1..10, groups checks into acceptance criteria
  std::string name;
  double reference;
  double computed;
  double tolerance;
  bool pass;
};

struct VerifyReport {
  std::vector<CheckRecord> checks;
  bool overall;  ///< true iff every record passes
};

enum class VerifyMode { Quick, Full };

/// Runs the verification suite. Quick covers everything analytic plus the
/// first-moment ODE oracle; Full adds the Lindblad density-matrix runs and
/// the RK4 convergence-order measurement (seconds per run).
VerifyReport run_verification(VerifyMode mode);

nlohmann::ordered_json report_json(const VerifyReport& report, VerifyMode mode);

/// Criterion numbers covered in the given mode (1..10 for Full).
std::vector<int> criteria_in_mode(VerifyMode mode);

}  // namespace qbat
