#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsig/divisibility.hpp"
#include "zsig/orbit.hpp"

namespace zsig {

// ---------------------------------------------------------------------------
// Exact region predicates.  |c| is compared against 2^(num/den) in integers:
// |a|/b > 2^(num/den)  <=>  |a|^den > 2^num b^den.  Neither boundary can be
// hit for b >= 2 (equality would force b = 1).
// ---------------------------------------------------------------------------

// sign of |c| - 2^(num/den): -1, 0, +1
int cmp_abs_c_pow2(const Parameter& p, int num, int den);

// d even and -2^(1/(d-1)) < c < -1 (the possibly-recurrent window).
bool in_recurrent_window(const Parameter& p);

// 2 in Z(f,0)  <=>  |a^(d-1) + b^(d-1)| = 1; for b >= 2 this is equivalent
// to d = 2 and a = -(b +- 1).
bool n2_membership(const Parameter& p);

// a = -k^m, b = l^m for some m | d, m > 1 (k, l positive integers).
struct PowerTriple {
  BigInt k;
  BigInt l;
  int m = 0;
};

std::optional<PowerTriple> reducible_power_triple(const Parameter& p);

// ---------------------------------------------------------------------------
// Decision tree over (c, d).  Exactly one tag applies; exact set predictions
// are emitted everywhere except the recurrent fallthrough, which carries the
// uniform cardinality bound instead.
// ---------------------------------------------------------------------------

enum class CaseTag {
  FiniteOrbit,
  IntegralDH,
  BigC,            // |c| > 2^(d/(d-1))
  PositiveOrOdd,   // c > 0, or c < 0 with d odd
  SmallNegWindow,  // -1 < c < 0, d even
  MidWindow,       // 2^(1/(d-1)) < |c| < 2^(d/(d-1)), c < 0, d even
  RecurrentReducible,
  RecurrentGeneral,
};

const char* to_string(CaseTag t);

enum class PredictionKind { Exact, Bounded, None };

struct Classification {
  CaseTag tag = CaseTag::RecurrentGeneral;
  // Largest possible Zsigmondy index guaranteed by the matching theorem;
  // nullopt when no theorem pins one down (recurrent general case).
  std::optional<int> m_of_c;
  PredictionKind prediction = PredictionKind::None;
  std::vector<int> predicted_set;  // when Exact
  int bound = 0;                   // when Bounded: #Z(f,0) <= bound
  bool n2_member = false;
  std::optional<PowerTriple> power_triple;
};

Classification classify(const Parameter& p);

// ---------------------------------------------------------------------------
// Cross-validation of a classification against the computed Zsigmondy set.
// Exact predictions must match on [2, n_max]; bounded predictions must
// respect the cardinality bound and the n = 2 criterion.  A mismatch would
// falsify the implementation, not the theorems.
// ---------------------------------------------------------------------------

enum class Consistency { Consistent, BoundOnly, Mismatch };

const char* to_string(Consistency c);

struct ConsistencyReport {
  Parameter param;
  Classification classification;
  std::vector<int> computed;  // Z(f,0) intersected with [2, n_max]
  Consistency verdict = Consistency::Consistent;
  std::string evidence;  // populated on mismatch
};

ConsistencyReport verify_against_computation(const Parameter& p, int n_max,
                                             const DeciderOptions& opts = {});

}  // namespace zsig
