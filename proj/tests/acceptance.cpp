#include <iostream>

#include "verify/criteria.hpp"

int main() {
  int failed = 0;
  const auto results = chemolab::verify::run_suite(chemolab::verify::Suite::Full,
                                                   [](const chemolab::verify::CriterionResult& r) {
                                                     std::cout << r.line() << std::endl;
                                                   });
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << results.size() - failed << " passed, " << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}
