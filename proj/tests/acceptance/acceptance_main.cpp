// Acceptance runner: one PASS/FAIL line per criterion; exit status 1 if any criterion fails.
// Optional arguments select criteria by number.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "lltlab/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  const auto results = lltlab::run_acceptance(only);
  lltlab::print_results(std::cout, results);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (results.size() - static_cast<std::size_t>(failed)) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
