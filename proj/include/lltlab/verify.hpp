#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "lltlab/lattice.hpp"
#include "lltlab/rng.hpp"

namespace lltlab {

/// Outcome of one acceptance criterion. `detail` carries the measured numbers and pinned tolerances.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Random pmf on 0..width-1 with a nonzero mass at 0 and at 1, so the maximal span is 1.
LatticePmf random_span1_pmf(CounterRng& rng, Index max_width = 8);

/// Measured sup_n n^{3/2} sup_k |P(S_n = k) - local Gaussian| for Bernoulli(1/2), n dyadic in [16, 4096].
double measured_C0_empirical();

/// Constant used in the effective bounds: 1.5 times the measured value.
double effective_C0();

/// Criteria 1..12; `only` selects a subset (empty runs all).
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {});

/// One "[PASS|FAIL] #id name: detail (t s)" line per result.
void print_results(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace lltlab
