#pragma once

// Cross-module invariant suite run by `gh-lab verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "ghlab/solver.hpp"

namespace ghlab {

struct InvariantResult {
  std::string name;
  bool passed = false;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst = 0.0;      // largest observed deviation
  double tolerance = 0.0;
  std::string detail;
};

/// 4 dist(x, Z) <= |1 - exp(2 pi i x)| <= 2 pi dist(x, Z) on random rationals.
InvariantResult check_sandwich(std::size_t samples, std::uint64_t seed);
/// Periods of every form over perturbed generator loops (contractible
/// circles when d = 0) agree with the straight loops within 1e-9.
InvariantResult check_homotopy(const Scenario& s, std::size_t pairs, std::uint64_t seed);
/// A(a omega + b omega') = a A(omega) + b A(omega') exactly, rational inputs.
InvariantResult check_period_linearity(const Scenario& s, std::size_t samples, std::uint64_t seed);
/// partial_fourier(synthesize(F)) = F within 1e-12 on random band-limited F.
InvariantResult check_fourier_round_trip(const Scenario& s, std::size_t samples, std::uint64_t seed);
/// integral <=> cover phases agree, on the scenario forms and on random
/// integral and non-integral rational forms.
InvariantResult check_cover(const Scenario& s, std::size_t forms, std::uint64_t seed);

std::vector<InvariantResult> run_invariants(const Scenario& s, std::uint64_t seed = 1);

}  // namespace ghlab
