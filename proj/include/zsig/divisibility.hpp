#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsig/orbit.hpp"

namespace zsig {

// ---------------------------------------------------------------------------
// Rigid divisibility: for a prime p with entry index k(p) = min{n : p | a_n},
// ord_p(a_n) = ord_p(a_{k(p)}) when k(p) | n and 0 otherwise.
// ---------------------------------------------------------------------------

struct PrimeDividesDenominator : DomainError {
  explicit PrimeDividesDenominator(const std::string& msg)
      : DomainError(msg) {}
};

struct PrimeEntryProfile {
  BigInt p;
  std::optional<int> entry_index;  // k(p), or nullopt if no entry <= n_max
  int entry_ord = 0;               // ord_p(a_{k(p)})
  std::vector<int> ords;           // ord_p(a_n) for n = 1..n_max
};

// Requires p prime with p not dividing b (else PrimeDividesDenominator).
// Verifies the rigid-divisibility pattern on the computed range and throws
// on violation (that would falsify the implementation).
PrimeEntryProfile ord_profile(const Orbit& orbit, const BigInt& p, int n_max);

// ---------------------------------------------------------------------------
// Zsigmondy membership.  n is in Z(f,0) when a_n has no primitive prime
// divisor; decided by gcd-stripping |a_n| against G = prod over distinct
// primes q | n of |a_{n/q}|, never by factoring a_n.
// ---------------------------------------------------------------------------

enum class CertificateKind {
  UnitCofactor,          // stripped residue t = 1 (membership)
  WitnessPrime,          // a certified primitive prime divisor
  Cofactor,              // primitive cofactor above the trial-division bound
                         // (detail records probable-prime / composite)
  SizeExclusionModular,  // |a_n| > G certified via balanced residue
  SizeExclusionInterval, // |a_n| > G certified via orbit enclosure
};

const char* to_string(CertificateKind k);

struct ZsigmondyVerdict {
  int n = 0;
  bool in_zsigmondy = false;
  CertificateKind certificate = CertificateKind::UnitCofactor;
  BigInt witness;      // witness prime or cofactor (0 for size exclusions)
  std::string detail;  // human-readable evidence
};

// Exact test on materialized terms; requires orbit extended to n, n >= 2.
ZsigmondyVerdict zsigmondy_test(const Orbit& orbit, int n);

// { n in [2, n_max] : n in Z(f,0) } on materialized terms.
std::vector<int> zsigmondy_set(const Orbit& orbit, int n_max);

// ---------------------------------------------------------------------------
// Certified decision procedure that avoids materializing a_n when it is
// far larger than G.  Membership forces |a_n| | G (rigid divisibility), so
// |a_n| > G certifies non-membership; the balanced residue of a_n modulo
// M = 2^(bits(G)+96) either exhibits |a_n| > G or pins a_n exactly.
// ---------------------------------------------------------------------------

struct DeciderOptions {
  std::uint64_t exact_bits = 1ull << 21;        // materialize freely below
  std::uint64_t materialize_bits = 1ull << 26;  // hard ceiling for fallback
  bool extract_witness = true;  // sweeps turn this off; membership bits are
                                // identical either way
};

ZsigmondyVerdict decide_membership(const Parameter& p, int n,
                                   const DeciderOptions& opts = {});

std::vector<int> zsigmondy_set_certified(const Parameter& p, int n_max,
                                         const DeciderOptions& opts = {});

// G = prod over distinct primes q | n of |a_{n/q}|; orbit must cover n/2.
BigInt earlier_term_product(const Orbit& orbit, int n);

}  // namespace zsig
