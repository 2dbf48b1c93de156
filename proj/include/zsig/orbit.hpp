#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "zsig/numeric.hpp"

namespace zsig {

// ---------------------------------------------------------------------------
// Parameter: c = a/b in lowest terms (b > 0) together with the degree d of
// f(z) = z^d + c.  The critical orbit of 0 is infinite for every b >= 2;
// over the integers it is finite exactly for c = 0, for c = -1 with d even,
// and for c = -2 with d = 2.
// ---------------------------------------------------------------------------

struct Parameter {
  BigInt a;
  BigInt b;
  int d = 2;
  bool integral = false;      // b == 1
  bool finite_orbit = false;  // 0 is preperiodic

  BigRat value() const { return BigRat(a, b); }
  std::string str() const;
};

Parameter make_parameter(const BigInt& a, const BigInt& b, int d);

// Throws FiniteOrbitError when the parameter has a finite critical orbit.
void require_infinite_orbit(const Parameter& p);

// ---------------------------------------------------------------------------
// Orbit terms: f^n(0) = a_n / b^(d^(n-1)) written in lowest terms, with
// a_{n+1} = a_n^d + a * b^(d^n - 1) and a_1 = a.  Denominators are kept as
// the exponent d^(n-1); the power itself is never materialized except for
// the single b^(d^n - 1) the recurrence needs.
// ---------------------------------------------------------------------------

struct OrbitTerm {
  int n = 0;
  BigInt numerator;
  BigInt denom_exp;  // d^(n-1), exact
};

struct OrbitLimits {
  // Guard on numerator bit length; exceeding it is an error, never a
  // silent truncation.  Default ~8 MB per numerator.
  std::uint64_t max_numerator_bits = 1ull << 26;
  // Re-check gcd(a_n, b) = 1 on every computed term.
  bool check_coprimality = false;
};

class Orbit {
 public:
  explicit Orbit(Parameter param) : param_(std::move(param)) {}

  const Parameter& parameter() const { return param_; }
  int size() const { return static_cast<int>(terms_.size()); }

  // 1-based access; term n must have been computed.
  const OrbitTerm& term(int n) const;
  const BigInt& numerator(int n) const { return term(n).numerator; }

  // Seeds an orbit from externally cached numerators (contiguous from
  // n = 1); callers own the cache's integrity.
  static Orbit from_numerators(const Parameter& p,
                               const std::vector<BigInt>& numerators);

 private:
  friend Orbit extend_orbit(const Orbit&, int, const OrbitLimits&);
  Parameter param_;
  // Terms are immutable and shared between orbits, so extension copies a
  // vector of pointers rather than the numerators themselves.
  std::vector<std::shared_ptr<const OrbitTerm>> terms_;
};

// Returns an orbit containing terms 1..n_target (terms already computed are
// shared with the input).  Pure function; orbits are safe to share across
// threads.
Orbit extend_orbit(const Orbit& orbit, int n_target,
                   const OrbitLimits& limits = {});

inline Orbit make_orbit(const Parameter& p, int n_target,
                        const OrbitLimits& limits = {}) {
  return extend_orbit(Orbit(p), n_target, limits);
}

// Upper bound on bitlen(a_{n+1}) given bitlen(a_n), used by the size guard:
// bitlen(a_{n+1}) <= d*bitlen(a_n) + bitlen(a) + (d^n - 1)*bitlen(b) + 2.
std::uint64_t next_term_bit_bound(const Parameter& p, int n,
                                  std::uint64_t current_bits);

// log |f^n(0)| = log|a_n| - d^(n-1) log b, with relative error ~1e-15 on
// the log|a_n| part (computed from bit length and leading bits).
double log_abs_iterate(const Orbit& orbit, int n);

// d^(n-1) * log b as a double (0 when b = 1).
double log_denominator(const Parameter& p, int n);

// a_n mod modulus (least nonnegative residue), computed by running the
// numerator recurrence modulo `modulus`.  O(n) multiplications regardless
// of the true size of a_n.
BigInt numerator_mod(const Parameter& p, int n, const BigInt& modulus);

// Certified bounds on f^n(0) from directed-rounding interval iteration.
// When `escaped` is set the orbit has provably left [-E, E] for good at or
// before step n, so |f^n(0)| >= escape_floor; otherwise `value` encloses
// f^n(0).
struct OrbitEnclosure {
  Interval value;
  bool escaped = false;
  double escape_floor = 0.0;
};

OrbitEnclosure enclose_iterate(const Parameter& p, int n);

// ---------------------------------------------------------------------------
// Optional orbit cache: one record per line, "a b d n a_n" with the
// numerator in lowercase hex (sign included).  Purely an optimization.
// ---------------------------------------------------------------------------

class OrbitCache {
 public:
  OrbitCache() = default;
  explicit OrbitCache(std::string path) : path_(std::move(path)) {}

  void load();
  // Terms cached for this parameter, contiguous from n = 1.
  std::vector<BigInt> lookup(const Parameter& p) const;
  // Appends terms of `orbit` beyond what the file already had.
  void append(const Orbit& orbit);

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::map<std::tuple<std::string, std::string, int>, std::map<int, BigInt>>
      entries_;
};

}  // namespace zsig
