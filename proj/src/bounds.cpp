#include "zsig/bounds.hpp"

#include <cmath>

#include "zsig/classifier.hpp"

namespace zsig {

double weil_height(const BigRat& r) {
  const BigInt num = abs(BigInt(r.get_num()));
  const BigInt den = BigInt(r.get_den());
  const BigInt& m = num > den ? num : den;
  if (m == 1 || m == 0) return 0.0;
  return log_abs(m);
}

DivisorTerms divisor_terms(int n, int d) {
  if (n < 2) throw DomainError("divisor_terms: n must be >= 2");
  if (d < 2) throw DomainError("divisor_terms: d must be >= 2");
  DivisorTerms t;
  t.s_d = 0;
  for (std::uint64_t q : distinct_prime_factors(static_cast<std::uint64_t>(n))) {
    t.s_d += pow_bigint(d, static_cast<unsigned long>(n) / q);
    ++t.omega;
  }
  const double log2n = std::log2(static_cast<double>(n));
  t.s_d_coarse = std::pow(static_cast<double>(d), n / 2.0) * log2n;
  t.omega_coarse = log2n;
  return t;
}

HeightEstimate canonical_height_estimate(const Orbit& orbit, int level,
                                         bool require_positive) {
  if (level < 1)
    throw DomainError("canonical_height_estimate: level must be >= 1");
  const Parameter& p = orbit.parameter();
  const double h_iter =
      std::max(log_abs(orbit.numerator(level)), log_denominator(p, level));
  const double dn =
      std::exp2(static_cast<double>(level) * std::log2(double(p.d)));

  HeightEstimate est;
  est.level = level;
  est.value = std::max(0.0, h_iter / dn);
  est.error_bound = (weil_height(p) + M_LN2) / ((p.d - 1) * dn);
  if (require_positive && !est.certified_positive())
    throw InconclusiveError(
        "level " + std::to_string(level) +
        " is too small to certify positivity of the canonical height");
  return est;
}

const char* to_string(IneqMode m) {
  switch (m) {
    case IneqMode::Exact: return "exact";
    case IneqMode::AbsC: return "abs_c";
    case IneqMode::PositiveC: return "positive_c";
    case IneqMode::CA: return "ca";
  }
  return "?";
}

namespace {
constexpr double kSlack = 1e-9;
}

InequalityReport zsig_inequality(const Orbit& orbit, int n, IneqMode mode) {
  if (n < 2) throw DomainError("zsig_inequality: n must be >= 2");
  const Parameter& p = orbit.parameter();
  const DivisorTerms dt = divisor_terms(n, p.d);
  const double log_b = p.b == 1 ? 0.0 : log_abs(p.b);
  const double log_c = log_abs(p.a) - log_b;

  InequalityReport rep;
  rep.n = n;
  rep.mode = mode;
  rep.s_d = dt.s_d;
  rep.omega = dt.omega;
  rep.log_b = log_b;
  rep.log_abs_c = log_c;

  switch (mode) {
    case IneqMode::Exact: {
      // log|a_n| <= sum_q log|a_{n/q}|, compared exactly on integers.
      const BigInt abs_an = abs(orbit.numerator(n));
      const BigInt G = earlier_term_product(orbit, n);
      rep.lhs = log_abs(abs_an);
      rep.rhs = log_abs(G);
      rep.holds = abs_an <= G;
      rep.marginal = false;
      rep.terms.push_back({"log_abs_a_n", rep.lhs});
      for (std::uint64_t q :
           distinct_prime_factors(static_cast<std::uint64_t>(n))) {
        const BigInt& aq = orbit.numerator(n / static_cast<int>(q));
        rep.terms.push_back(
            {"log_abs_a_" + std::to_string(n / q), log_abs(aq)});
      }
      return rep;
    }

    case IneqMode::AbsC: {
      if (!in_recurrent_window(p))
        throw DomainError(
            "AbsC bound requires d even and c in (-2^(1/(d-1)), -1)");
      // log|f^n(0)| + d^(n-1) log b <= omega(n) log|c| + (s_d(n)/d) log b
      rep.lhs = log_abs_iterate(orbit, n) + log_denominator(p, n);
      const double sum_den =
          mpz_get_d(BigInt(dt.s_d / p.d).get_mpz_t()) * log_b;
      rep.rhs = dt.omega * log_c + sum_den;
      rep.terms.push_back({"log_abs_iterate", log_abs_iterate(orbit, n)});
      rep.terms.push_back({"denominator_lhs", log_denominator(p, n)});
      rep.terms.push_back({"omega_log_c", dt.omega * log_c});
      rep.terms.push_back({"denominator_rhs", sum_den});
      break;
    }

    case IneqMode::PositiveC: {
      if (p.a <= 0)
        throw DomainError("PositiveC bound requires c > 0");
      // C(k) = max(c, c^(d^(k-1))): log C(k) = max(log c, d^(k-1) log c).
      auto log_C = [&](int k) {
        const double e = std::exp2((k - 1) * std::log2(double(p.d)));
        return std::max(log_c, e * log_c);
      };
      rep.lhs = log_C(n) + log_denominator(p, n);
      double rhs = 0.0;
      for (std::uint64_t q :
           distinct_prime_factors(static_cast<std::uint64_t>(n))) {
        const int k = n / static_cast<int>(q);
        const double e = std::exp2((k - 1) * std::log2(double(p.d)));
        const double doubling = (e - 1.0) / (p.d - 1) * M_LN2;
        rep.terms.push_back({"upper_bound_f_" + std::to_string(k),
                             doubling + log_C(k) + log_denominator(p, k)});
        rhs += doubling + log_C(k) + log_denominator(p, k);
      }
      rep.rhs = rhs;
      break;
    }

    case IneqMode::CA:
      throw DomainError("zsig_inequality: use ca_inequality for the CA mode");
  }

  switch (compare_with_slack(rep.lhs, rep.rhs, kSlack)) {
    case SlackOrder::Less:
      rep.holds = true;
      rep.marginal = false;
      break;
    case SlackOrder::Greater:
      rep.holds = false;
      rep.marginal = false;
      break;
    case SlackOrder::Marginal:
      rep.holds = rep.lhs <= rep.rhs;
      rep.marginal = true;
      break;
  }
  return rep;
}

namespace {

// Membership-possible condition of the effective solver at index n.
bool solver_condition(const Parameter& p, double eps, double tau, int n) {
  const double log_b = log_abs(p.b);
  const double log_c = log_abs(p.a) - log_b;
  const double ln_d = std::log(double(p.d));
  if ((n - 1) * ln_d > 650.0) return false;  // lhs astronomically positive
  const DivisorTerms dt = divisor_terms(n, p.d);
  const double lhs =
      (tau / 2.0 * std::exp((n - 1) * ln_d) -
       mpz_get_d(dt.s_d.get_mpz_t()) / p.d) *
      log_b;
  const double rhs = std::log(1.0 / eps) + dt.omega * log_c;
  return lhs <= rhs;
}

// Coarse-bound gap that must stay positive beyond the probe range:
// (tau/2 d^(n-1) - d^(n/2-1) log2 n) log b - log(1/eps) - log2 n log|c|.
bool tail_gap_positive(const Parameter& p, double eps, double tau, int n) {
  const double log_b = log_abs(p.b);
  const double log_c = log_abs(p.a) - log_b;
  const double ln_d = std::log(double(p.d));
  if ((n - 1) * ln_d > 650.0) return true;
  const double log2n = std::log2(static_cast<double>(n));
  const double lhs = (tau / 2.0 * std::exp((n - 1) * ln_d) -
                      std::exp((n / 2.0 - 1) * ln_d) * log2n) *
                     log_b;
  return lhs > std::log(1.0 / eps) + log2n * log_c;
}

}  // namespace

int effective_M_solver(const Parameter& p, double eps, double tau,
                       int n_probe) {
  if (!in_recurrent_window(p))
    throw DomainError(
        "effective_M_solver requires d even and c in (-2^(1/(d-1)), -1)");
  if (!(eps > 0.0) || std::log(1.0 / eps) > 200.0)
    throw DomainError("effective_M_solver: eps must satisfy 0 < log(1/eps) "
                      "<= 200");
  if (!(tau > 0.0 && tau < 1.0) || tau < 1e-9)
    throw DomainError("effective_M_solver: tau must lie in [1e-9, 1)");
  if (n_probe < 8)
    throw DomainError("effective_M_solver: n_probe must be >= 8");

  int last_true = 0;
  for (int n = 3; n <= n_probe; ++n)
    if (solver_condition(p, eps, tau, n)) last_true = n;

  // Tail: the coarse-bounded gap must be positive for every n > n_probe.
  // It is checked directly until the exponential term towers over the rest;
  // past that point positivity is immediate (margins of hundreds of nats,
  // guarded by the eps/tau input bounds above).
  const int n_far = std::max(n_probe + 1,
                             static_cast<int>(1400.0 / std::log(double(p.d))));
  for (int n = n_probe + 1; n <= n_far; ++n)
    if (!tail_gap_positive(p, eps, tau, n))
      throw Error("tail certification fails beyond n_probe=" +
                  std::to_string(n_probe) + " (first failure at n=" +
                  std::to_string(n) + "); raise n_probe");

  return std::max(2, last_true + 1);
}

double reducible_lower_bound(const Parameter& p, int n) {
  if (n < 2) throw DomainError("reducible_lower_bound: n must be >= 2");
  if (p.d % 2 != 0)
    throw DomainError("reducible_lower_bound: d must be even");
  if (!reducible_power_triple(p))
    throw DomainError("reducible_lower_bound: c is not -(k/l)^m for any "
                      "m | d, m > 1");
  const auto e = pow_u64(static_cast<std::uint64_t>(p.d),
                         static_cast<unsigned>(n - 1));
  if (!e) throw DomainError("reducible_lower_bound: exponent overflow");
  return -std::log(double(p.d)) -
         static_cast<double>(*e) / 2.0 * log_abs(p.b);
}

}  // namespace zsig
