#pragma once

#include <string>
#include <vector>

#include "zsig/orbit.hpp"

namespace zsig {

// h(r/s) = log max(|r|, |s|) for r/s in lowest terms.
double weil_height(const BigRat& r);
inline double weil_height(const Parameter& p) { return weil_height(p.value()); }

// ---------------------------------------------------------------------------
// Arithmetic functions of the index: s_d(n) = sum over distinct primes q | n
// of d^(n/q), and omega(n) = number of distinct primes of n, together with
// the coarse bounds s_d(n) <= d^(n/2) log2 n and omega(n) <= log2 n.
// ---------------------------------------------------------------------------

struct DivisorTerms {
  BigInt s_d;
  int omega = 0;
  double s_d_coarse = 0.0;
  double omega_coarse = 0.0;
};

DivisorTerms divisor_terms(int n, int d);

// ---------------------------------------------------------------------------
// Canonical height of 0 from the level-N Weil height:
//   value = h(f^N(0)) / d^N,  |value - h_hat(0)| <= error_bound,
//   error_bound = (h(c) + log 2) / ((d-1) d^N).
// h(f^N(0)) = max(log|a_N|, d^(N-1) log b), from bit lengths only.
// ---------------------------------------------------------------------------

struct HeightEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  int level = 0;
  bool certified_positive() const { return value - error_bound > 0.0; }
};

HeightEstimate canonical_height_estimate(const Orbit& orbit, int level,
                                         bool require_positive = false);

// ---------------------------------------------------------------------------
// The membership inequalities.  Exact evaluates log|a_n| <= sum log|a_{n/q}|
// on the numerators themselves; AbsC replaces each |f^(n/q)(0)| by |c|
// (valid only for d even, c in (-2^(1/(d-1)), -1)); PositiveC uses the
// two-sided C(n) bounds valid for c > 0.  holds = true means n in Z(f,0)
// is still arithmetically possible at this level of information.
// ---------------------------------------------------------------------------

enum class IneqMode { Exact, AbsC, PositiveC, CA };

const char* to_string(IneqMode m);

struct NamedTerm {
  std::string name;
  double value;
};

struct InequalityReport {
  int n = 0;
  IneqMode mode = IneqMode::Exact;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool marginal = false;  // |lhs-rhs| within the 1e-9 slack band
  BigInt s_d;
  int omega = 0;
  double log_b = 0.0;
  double log_abs_c = 0.0;
  std::vector<NamedTerm> terms;
};

InequalityReport zsig_inequality(const Orbit& orbit, int n, IneqMode mode);

// ---------------------------------------------------------------------------
// Effective bound on the largest Zsigmondy index from user-supplied
// quadratic-approximation constants (eps, tau): index n >= 3 can lie in
// Z(f,0) only if
//   (tau/2 d^(n-1) - s_d(n)/d) log b <= log(1/eps) + omega(n) log|c|.
// Scans [3, n_probe] exactly, certifies the tail with the coarse bounds,
// and returns the least M with the condition failing for every n > M - 1;
// the n = 2 case is governed by the a^(d-1)+b^(d-1) = +-1 criterion
// independently of (eps, tau), so M is never reported below 2.
// ---------------------------------------------------------------------------

int effective_M_solver(const Parameter& p, double eps, double tau,
                       int n_probe);

// log of the reducible-case recurrence floor 1/(d b^(d^(n-1)/2)); requires
// d even and c = -(k/l)^m for some m | d, m > 1.
double reducible_lower_bound(const Parameter& p, int n);

}  // namespace zsig
