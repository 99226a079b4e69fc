#ifndef BACKFORTH_ACCEPTANCE_HPP
#define BACKFORTH_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace bf::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;
};

// Runs the acceptance checks, printing one line per criterion to `out`.
// `only` = 0 runs all of them.
std::vector<CriterionResult> run_all(std::ostream& out, int only = 0);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace bf::acceptance

#endif
