#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zsig {

using BigInt = mpz_class;
using BigRat = mpq_class;

// ---------------------------------------------------------------------------
// Error hierarchy.  Exit-code mapping lives in the CLI layer: usage/domain
// errors -> 1, falsified consistency -> 2, inconclusive numerics -> 3.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct UsageError : Error {
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

struct DomainError : UsageError {
  explicit DomainError(const std::string& msg) : UsageError(msg) {}
};

struct SizeGuardError : Error {
  std::uint64_t needed_bits;
  std::uint64_t limit_bits;
  SizeGuardError(std::uint64_t needed, std::uint64_t limit)
      : Error("numerator size guard exceeded: term needs ~" +
              std::to_string(needed) + " bits, limit " +
              std::to_string(limit)),
        needed_bits(needed),
        limit_bits(limit) {}
};

struct FiniteOrbitError : DomainError {
  explicit FiniteOrbitError(const std::string& msg) : DomainError(msg) {}
};

struct MismatchError : Error {
  std::string evidence_json;
  MismatchError(const std::string& msg, std::string evidence)
      : Error(msg), evidence_json(std::move(evidence)) {}
};

struct InconclusiveError : Error {
  explicit InconclusiveError(const std::string& msg) : Error(msg) {}
};

// ---------------------------------------------------------------------------
// Big-integer helpers.
// ---------------------------------------------------------------------------

inline std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

// Natural log of |x| for x != 0, computed from the top 53 bits and the
// binary exponent (never by converting x to floating point wholesale).
// Relative error ~1e-15.
double log_abs(const BigInt& x);

// log2 variant of the above.
double log2_abs(const BigInt& x);

// base^exp as an exact integer.
BigInt pow_bigint(const BigInt& base, unsigned long exp);

// d^k as uint64_t, or nullopt on overflow.
std::optional<std::uint64_t> pow_u64(std::uint64_t base, unsigned exp);

// All primes <= limit (simple sieve).
std::vector<std::uint32_t> primes_upto(std::uint32_t limit);

// Distinct prime factors of n (trial division; intended for indices n,
// not for orbit numerators).
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

// Floor integer m-th root; returns root and whether x is an exact power.
std::pair<BigInt, bool> integer_root(const BigInt& x, unsigned long m);

// ---------------------------------------------------------------------------
// Three-way comparison with a slack band around equality.
// ---------------------------------------------------------------------------

enum class SlackOrder { Less, Greater, Marginal };

inline SlackOrder compare_with_slack(double lhs, double rhs, double slack) {
  const double band = slack * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
  if (lhs < rhs - band) return SlackOrder::Less;
  if (lhs > rhs + band) return SlackOrder::Greater;
  return SlackOrder::Marginal;
}

// ---------------------------------------------------------------------------
// Directed-rounding real interval.  Endpoints are nudged outward by one ulp
// after every operation, so enclosures stay valid regardless of the FPU
// rounding mode.  Used to bound |f^n(0)| without exact numerators.
// ---------------------------------------------------------------------------

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double v) { return {v, v}; }
  static Interval of_rational(const BigRat& q);

  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
  // Certified lower bound on the absolute value (0 when the interval
  // straddles zero or is unbounded).
  double abs_lower() const {
    if (!finite() || contains_zero()) return 0.0;
    return lo > 0.0 ? lo : -hi;
  }
  double abs_upper() const { return std::max(std::fabs(lo), std::fabs(hi)); }
};

Interval iadd(const Interval& a, const Interval& b);
Interval imul(const Interval& a, const Interval& b);
Interval ipow(const Interval& a, unsigned exp);

}  // namespace zsig
