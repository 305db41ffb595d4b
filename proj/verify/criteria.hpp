#pragma once

#include <functional>
#include <string>
#include <vector>

namespace chemolab::verify {

struct CriterionResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string measured;
  double seconds = 0.0;

  /// "PASS 3 reaction-oracle: <measured> (0.01 s)"
  std::string line() const;
};

CriterionResult poisson_oracle();
CriterionResult heat_kernel_oracle();
CriterionResult reaction_oracle();
CriterionResult duality_convergence();
/// Literal pairing H1 = Zero (more concentrated u1) against H2 = Weakest(16).
CriterionResult mass_comparison();
/// Same comparison with the stronger inward pull on the more concentrated flow.
CriterionResult mass_comparison_ordered();
/// The weakest potential pulls inward at least as hard as the attractant of
/// every admissible profile (0 <= f <= sigma eta, mass >= 3/4 sigma).
/// `flip_drift` reverses the attractant drift as a negative control.
CriterionResult drift_ordering(bool flip_drift = false);
CriterionResult chemotaxis_vs_fp_bound();
CriterionResult transport_scaling();
CriterionResult chemotactic_scaling();
CriterionResult diffusive_bound();
CriterionResult pass_through();
CriterionResult conservation_and_symmetry();

enum class Suite { Fast, Full };

/// Runs the suite in order, reporting each result as soon as it is known.
std::vector<CriterionResult> run_suite(Suite suite, const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace chemolab::verify
