#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace torusmono {

/// Outcome of one acceptance criterion. `worst` is the largest residual
/// observed over the sampled cases (or the count of mismatches for exact
/// checks) and `threshold` the bound it is held to.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double worst = 0.0;
  double threshold = 0.0;
  bool mixed_bounds = false;  // several bounds: worst is residual/bound, threshold 1
  int cases = 0;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 when the criterion has no runtime bound
  std::string detail;       // worst or first failing case
};

enum class Suite { Weierstrass, Monodromy, Rh, Groups, Bundles, All };

const char* to_string(Suite s);
/// Throws PreconditionError for an unknown name.
Suite suite_from_string(const std::string& name);

struct VerifyOptions {
  double monodromy_tol = 1e-6;  // criterion 2 bound
  int grid = 5;                 // grid side for criteria 2 and 6
  std::uint64_t seed = 20261016;
};

/// Criterion ids run by each suite:
///   weierstrass {1}, monodromy {2, 3, 8}, rh {6, 7}, groups {4, 5, 10},
///   bundles {9}, all {1..10}.
std::vector<int> suite_criteria(Suite s);

CriterionResult run_criterion(int id, const VerifyOptions& opts = {});
std::vector<CriterionResult> run_suite(Suite s, const VerifyOptions& opts = {});

/// "PASS criterion 3 (apparent singularities): worst 1.2e-14 <= 1e-08, 30 cases, 0.01 s"
std::string format_result(const CriterionResult& r);

}  // namespace torusmono
