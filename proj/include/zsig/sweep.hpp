#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "zsig/classifier.hpp"

namespace zsig {

struct SweepSpec {
  int d_min = 2;
  int d_max = 2;
  long b_min = 2;
  long b_max = 10;
  long height_max = 20;  // max(|a|, b) <= height_max
  int n_max = 12;
  int jobs = 1;
  bool classify_only = false;
  bool mandel_s_check = false;  // d = 2 recurrent-window S verification
  DeciderOptions decider;
};

struct SCheckInfo {
  std::optional<bool> in_S;  // up to period 12; nullopt = inconclusive
  std::optional<int> blocking_period;
  bool theorem_consistent = true;  // S-members: 3 in Z only at c = -7/4,
                                   // and Z meets [4, 12] nowhere
};

struct SweepRecord {
  Parameter param;
  Classification classification;
  std::vector<int> computed;  // empty in classify-only mode
  Consistency verdict = Consistency::Consistent;
  std::optional<SCheckInfo> s_check;
  std::string evidence;  // mismatch payload
  double timing_ms = 0.0;
};

struct SweepSummary {
  std::size_t records = 0;
  std::size_t consistent = 0;
  std::size_t bound_only = 0;
  std::size_t mismatches = 0;
  std::size_t s_checked = 0;
  std::size_t s_members = 0;
  std::size_t s_inconclusive = 0;
  double elapsed_ms = 0.0;
};

// Reduced parameters of the grid in (d, b, a) order: d in [d_min, d_max],
// b in [b_min, b_max], 0 < |a| <= height_max, gcd(a, b) = 1, and
// max(|a|, b) <= height_max.  Finite-orbit parameters are skipped.
std::vector<Parameter> enumerate_parameters(const SweepSpec& spec);

// Runs the sweep with `jobs` workers; `sink` receives records in
// enumeration order regardless of the job count and is called from the
// calling thread only.  A MISMATCH record aborts the sweep after being
// emitted.
SweepSummary run_sweep(const SweepSpec& spec,
                       const std::function<void(const SweepRecord&)>& sink);

}  // namespace zsig
