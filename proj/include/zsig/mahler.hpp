#pragma once

#include <string>
#include <vector>

#include "zsig/orbit.hpp"

namespace zsig {

// ---------------------------------------------------------------------------
// Diophantine-approximation constants for the recurrent window (d even).
// kappa admissibility gate:
//   kappa = (sqrt((1-2eps)/d) - 2 sqrt(eps)) mu - (1+eps)^2 > 0
// with mu = d(1 - d^-m) the approximation exponent.
// ---------------------------------------------------------------------------

double kappa(int d, double mu, double eps);

struct MahlerParams {
  int d = 0;
  int m = 0;        // exponent m_d
  double eps = 0.0; // epsilon of the kappa gate
  double mu = 0.0;  // d(1 - d^-m)
  double kappa = 0.0;
  int n1_min = 0;     // least admissible first index: ceil(log_d(24/(kappa eps)) + 2)
  double gap = 0.0;   // log_d(5 d^2 / (2 eps)), as computed from the table eps
  double gap_canon = 0.0;  // canonical gap bound backing N_d (differs from
                           // `gap` only for d = 2, where the two published
                           // evaluations of 5d^2/(2 eps) disagree: 2500 vs
                           // 15000; the 15000-based conclusions are kept)
  bool eps_discrepancy = false;  // set for d = 2
  int N = 0;             // N_d
  double r_coeff = 2.0;  // coefficient bound R < r_coeff * b
};

// The table: d=2 -> (m=6, eps=0.004, N=6); d=4 -> (m=2, eps=1/128, N=3);
// even d >= 6 -> (m=1, eps=1/d^3, N=2).  Requires d even.
MahlerParams standard_params(int d);

// Uniform Zsigmondy-set size bound 2 m_d + 6 - 1 + N_d: 23 / 12 / 9 for
// d = 2 / 4 / >= 6.  Requires d even.
int size_bound(int d);

// Named admissibility margins behind the table; every margin must come out
// >= 1e-2.
struct AdmissibilityCheck {
  std::string name;
  double margin = 0.0;
  bool ok = false;
};

std::vector<AdmissibilityCheck> admissibility_checks(const MahlerParams& mp);

// ---------------------------------------------------------------------------
// Good approximates: |f^n(0)| <= (b^(d^(n-2)))^(-d(1 - d^-m)).  An index
// passing this test makes |a_{n-1}| / b^(d^(n-2)) an extremely good rational
// approximation of zeta = |c|^(1/d).
// ---------------------------------------------------------------------------

struct GoodApproxReport {
  int n = 0;
  bool is_good = false;
  bool marginal = false;
  double log_iterate = 0.0;    // log |f^n(0)|
  double log_threshold = 0.0;  // log of the right-hand side
  double zeta = 0.0;           // |c|^(1/d)
  double approx_distance = 0.0;  // | |a_{n-1}| b^(-d^(n-2)) - zeta |
};

// Requires n >= 2, orbit extended to n, and c in the recurrent window.
// Threshold comparisons run in log space with 1e-9 slack and fall back to
// exact integer powers inside the slack zone.
GoodApproxReport good_approx_test(const Orbit& orbit, int n, int m);

// No two consecutive n <= n_max may have |f^n(0)| < 1/2.
bool non_consecutive_check(const Orbit& orbit, int n_max);

// ---------------------------------------------------------------------------
// Certified variants that never materialize large numerators: enclosure-
// driven with exact fallback.  Throw InconclusiveError when neither route
// resolves (never observed on the sweep grids).
// ---------------------------------------------------------------------------

// Count of good-approximation indices in [n_lo, n_hi].
int good_approx_count_certified(const Parameter& p, int n_lo, int n_hi,
                                int m);

bool non_consecutive_check_certified(const Parameter& p, int n_max);

}  // namespace zsig
