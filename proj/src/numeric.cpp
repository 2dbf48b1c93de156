#include "zsig/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zsig {

double log_abs(const BigInt& x) {
  if (x == 0) throw DomainError("log_abs: argument is zero");
  signed long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * M_LN2;
}

double log2_abs(const BigInt& x) {
  if (x == 0) throw DomainError("log2_abs: argument is zero");
  signed long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

BigInt pow_bigint(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

std::optional<std::uint64_t> pow_u64(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::nullopt;
    r *= base;
  }
  return r;
}

std::vector<std::uint32_t> primes_upto(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit;
         j += i)
      composite[j] = true;
  }
  return primes;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> factors;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    factors.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

std::pair<BigInt, bool> integer_root(const BigInt& x, unsigned long m) {
  BigInt root;
  const int exact = mpz_root(root.get_mpz_t(), x.get_mpz_t(), m);
  return {root, exact != 0};
}

namespace {

double down(double v) {
  return std::nextafter(v, -std::numeric_limits<double>::infinity());
}
double up(double v) {
  return std::nextafter(v, std::numeric_limits<double>::infinity());
}

}  // namespace

Interval Interval::of_rational(const BigRat& q) {
  const double v = mpq_get_d(q.get_mpq_t());
  return {down(v), up(v)};
}

Interval iadd(const Interval& a, const Interval& b) {
  return {down(a.lo + b.lo), up(a.hi + b.hi)};
}

Interval imul(const Interval& a, const Interval& b) {
  const double p1 = a.lo * b.lo, p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {down(std::min({p1, p2, p3, p4})), up(std::max({p1, p2, p3, p4}))};
}

Interval ipow(const Interval& a, unsigned exp) {
  if (exp == 0) return Interval::point(1.0);
  // Repeated interval multiplication is already an enclosure; for even
  // exponents tighten around intervals straddling zero.
  if (exp % 2 == 0 && a.contains_zero()) {
    Interval m{0.0, a.abs_upper()};
    Interval r = m;
    for (unsigned i = 1; i < exp; ++i) r = imul(r, m);
    return {0.0, r.hi};
  }
  Interval r = a;
  for (unsigned i = 1; i < exp; ++i) r = imul(r, a);
  return r;
}

}  // namespace zsig
