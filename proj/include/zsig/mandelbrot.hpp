#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "zsig/bounds.hpp"

namespace zsig {

using Complex = std::complex<double>;

// rho_n = min(1/4, 1/2^(2^(n-2))), 1 <= n <= 12.
double rho_table(int n);

// ---------------------------------------------------------------------------
// Cycles of f_c(z) = z^2 + c among the roots of f_c^n(z) - z (degree 2^n),
// found by Aberth-Ehrlich simultaneous iteration with the polynomial
// evaluated through the iteration itself.  Exact periods come from divisor
// residuals; multipliers from the chain rule 2^k prod f^j(point).
// ---------------------------------------------------------------------------

struct Cycle {
  int period = 0;          // exact period (divides the n that was searched)
  Complex point;           // representative cycle point
  Complex multiplier;      // over the exact period
  bool exact_period = false;  // period == searched n
  int multiplicity = 1;    // root-cluster multiplicity at `point`
  double residual = 0.0;   // |f^period(point) - point|
};

// Requires 1 <= n <= 12.  Throws InconclusiveError on non-convergence.
std::vector<Cycle> periodic_cycles(Complex c, int n, double tol = 1e-10);

// ---------------------------------------------------------------------------
// D(n, rho): parameters whose critical point is attracted to a cycle of
// exact period n with |multiplier| <= rho.  Verdicts are tri-state;
// inconclusive is a first-class outcome, never coerced.
// ---------------------------------------------------------------------------

enum class RegionStatus { Inside, Outside, Inconclusive };

const char* to_string(RegionStatus s);

struct RegionVerdict {
  Complex c;
  int n = 0;
  double rho = 0.0;
  RegionStatus status = RegionStatus::Inconclusive;
  std::optional<Cycle> witness;  // when Inside
  std::string note;
};

RegionVerdict in_D(Complex c, int n, double rho, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Recurrence floor |f_c^n(0)| >= rho / 2^(2n+2) for c outside every
// D(k, rho) with k | n, 0 < rho < 1/4.
// ---------------------------------------------------------------------------

struct LowerBoundReport {
  Complex c;
  int n = 0;
  double rho = 0.0;
  bool precondition_ok = false;  // outside every D(k, rho), k | n
  bool precondition_inconclusive = false;
  std::optional<int> inside_k;  // divisor witnessing precondition failure
  double lhs = 0.0;             // |f_c^n(0)|
  double rhs = 0.0;             // rho / 2^(2n+2)
  bool holds = false;
};

LowerBoundReport lower_bound_check(Complex c, int n, double rho);

// ---------------------------------------------------------------------------
// Scalar distortion bounds behind the basin-to-disk conjugation, with
// p = (1 - sqrt(1 - rho^2))/rho the critical point of the Blaschke model:
//   series_lower = 1 - p(p^4-p^3-2p^2+3p+2)/(1-p^2)^2 > 1/2
//   psi_ratio_upper = 1/(1-p)^2 < 2        one_minus_p = 1-p > 1/2
// composing to the ratio bounds 4 and 8.
// ---------------------------------------------------------------------------

struct BlaschkeReport {
  double rho = 0.0;
  double p = 0.0;
  double p_limit = 0.0;  // 4 - sqrt(15)
  double series_lower = 0.0;
  double psi_ratio_upper = 0.0;
  double one_minus_p = 0.0;
  double ratio4 = 0.0;
  double ratio8 = 0.0;
  bool all_hold = false;
};

BlaschkeReport blaschke_distortion_check(double rho);

// (2^n - s_2(n)) log b < (2 omega(n) + 4n + 4 + 2^(n-1)) log 2; holds means
// n cannot be ruled out by this inequality alone.  Requires b >= 2, n >= 3.
InequalityReport ca_inequality(const BigInt& b, int n);

// ---------------------------------------------------------------------------
// S-membership up to a period guard, decided from the critical orbit alone:
// a quadratic polynomial has at most one attracting cycle and it must
// attract the critical point, so the orbit of 0 either escapes (in S),
// converges to a cycle with |multiplier| > rho_k (in S), converges with
// |multiplier| <= rho_k (not in S), or stays undecided within budget.
// ---------------------------------------------------------------------------

struct AttractingCycleInfo {
  int period = 0;
  Complex point;
  Complex multiplier;
};

struct SMembership {
  std::optional<bool> in_S;  // nullopt = inconclusive within budget
  std::optional<int> blocking_period;  // k with c in D(k, rho_k)
  std::optional<AttractingCycleInfo> cycle;
  bool escaped = false;
};

SMembership s_membership(Complex c, int max_period = 12,
                         long budget = 300000);

}  // namespace zsig
