// Acceptance harness: one pass/fail line per criterion, non-zero exit on
// any failure.
#include <iostream>

#include "backforth/acceptance.hpp"

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  const auto results = bf::acceptance::run_all(std::cout, only);
  const bool ok = bf::acceptance::all_passed(results);
  std::cout << "ACCEPTANCE: " << (ok ? "all criteria passed" : "FAILURES PRESENT") << "\n";
  return ok ? 0 : 1;
}
