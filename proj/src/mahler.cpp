#include "zsig/mahler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "zsig/classifier.hpp"

namespace zsig {

double kappa(int d, double mu, double eps) {
  if (d < 2) throw DomainError("kappa: d must be >= 2");
  if (!(eps > 0.0 && eps < 0.5))
    throw DomainError("kappa: eps must lie in (0, 1/2)");
  if (!(mu > std::sqrt(double(d))))
    throw DomainError("kappa: mu must exceed sqrt(d)");
  return (std::sqrt((1.0 - 2.0 * eps) / d) - 2.0 * std::sqrt(eps)) * mu -
         (1.0 + eps) * (1.0 + eps);
}

MahlerParams standard_params(int d) {
  if (d < 2 || d % 2 != 0)
    throw DomainError("standard_params: the recurrent window needs d even");

  MahlerParams mp;
  mp.d = d;
  if (d == 2) {
    mp.m = 6;
    mp.eps = 0.004;
    mp.N = 6;
  } else if (d == 4) {
    mp.m = 2;
    mp.eps = 1.0 / 128.0;
    mp.N = 3;
  } else {
    mp.m = 1;
    mp.eps = 1.0 / (double(d) * d * d);
    mp.N = 2;
  }
  mp.mu = d * (1.0 - std::pow(double(d), -mp.m));
  mp.kappa = kappa(d, mp.mu, mp.eps);
  if (mp.kappa <= 0.0)
    throw Error("standard_params: table kappa not positive for d=" +
                std::to_string(d));

  const double ln_d = std::log(double(d));
  mp.n1_min = static_cast<int>(
      std::ceil(std::log(24.0 / (mp.kappa * mp.eps)) / ln_d + 2.0));
  if (mp.n1_min > 2 * mp.m + 6)
    throw Error("standard_params: n1_min exceeds 2m+6 for d=" +
                std::to_string(d));

  mp.gap = std::log(5.0 * d * d / (2.0 * mp.eps)) / ln_d;
  if (d == 2) {
    // 5d^2/(2 eps) evaluates to 2500 with the table eps, while the stated
    // conclusion (N_2 = 6, gap < 14) corresponds to 15000; both are kept
    // and the conclusion-backing value is canonical.
    mp.eps_discrepancy = true;
    mp.gap_canon = std::log2(15000.0);
  } else {
    mp.gap_canon = mp.gap;
  }
  return mp;
}

int size_bound(int d) {
  const MahlerParams mp = standard_params(d);
  return 2 * mp.m + 6 - 1 + mp.N;
}

std::vector<AdmissibilityCheck> admissibility_checks(const MahlerParams& mp) {
  std::vector<AdmissibilityCheck> checks;
  const auto add = [&checks](const std::string& name, double margin) {
    checks.push_back({name, margin, margin >= 1e-2});
  };

  add("kappa_positive", mp.kappa);
  add("m_within_1_6", static_cast<double>(std::min(mp.m - 1, 6 - mp.m)) + 1.0);
  add("N_within_1_6", static_cast<double>(std::min(mp.N - 1, 6 - mp.N)) + 1.0);
  // 2m+6 >= log_d(24/(kappa eps)) + 2
  add("first_index_reachable",
      (2.0 * mp.m + 6.0) -
          (std::log(24.0 / (mp.kappa * mp.eps)) / std::log(double(mp.d)) +
           2.0));
  if (mp.d >= 6) add("kappa_exceeds_24_over_d3",
                     mp.kappa - 24.0 / (double(mp.d) * mp.d * mp.d));
  // Window length bound behind N_d: gap <= 6 for d >= 6, < 7 for d = 4,
  // < 14 for d = 2 (canonical value).
  if (mp.d == 2)
    add("gap_below_14", 14.0 - mp.gap_canon);
  else if (mp.d == 4)
    add("gap_below_7", 7.0 - mp.gap_canon);
  else
    add("gap_below_6", 6.0 - mp.gap_canon);
  // Non-consecutive good approximates halve the window: N_d suffices.
  add("N_covers_half_gap", (mp.N + 1.0) - mp.gap_canon / 2.0);
  return checks;
}

namespace {

constexpr double kSlack = 1e-9;

// Exact comparison |f^n(0)| <= b^-(d^(n-1) - d^(n-1-m)) via
// |a_n|^(d^m) vs b^(d^(n-1)); only used inside the slack zone.
SlackOrder exact_good_approx(const Orbit& orbit, int n, int m) {
  const Parameter& p = orbit.parameter();
  const auto dm = pow_u64(static_cast<std::uint64_t>(p.d),
                          static_cast<unsigned>(m));
  const auto dn1 = pow_u64(static_cast<std::uint64_t>(p.d),
                           static_cast<unsigned>(n - 1));
  if (!dm || !dn1) throw InconclusiveError("good_approx: exponent overflow");
  const BigInt& an = orbit.numerator(n);
  const std::uint64_t lhs_bits = bit_length(an) * *dm;
  const std::uint64_t rhs_bits = bit_length(p.b) * *dn1;
  if (lhs_bits > (1ull << 30) || rhs_bits > (1ull << 30))
    throw InconclusiveError("good_approx: exact fallback too large");
  BigInt lhs;
  mpz_pow_ui(lhs.get_mpz_t(), BigInt(abs(an)).get_mpz_t(),
             static_cast<unsigned long>(*dm));
  BigInt rhs;
  mpz_pow_ui(rhs.get_mpz_t(), p.b.get_mpz_t(),
             static_cast<unsigned long>(*dn1));
  const int c = cmp(lhs, rhs);
  return c <= 0 ? SlackOrder::Less : SlackOrder::Greater;
}

}  // namespace

GoodApproxReport good_approx_test(const Orbit& orbit, int n, int m) {
  if (n < 2) throw DomainError("good_approx_test: n must be >= 2");
  if (m < 1) throw DomainError("good_approx_test: m must be >= 1");
  const Parameter& p = orbit.parameter();
  if (!in_recurrent_window(p))
    throw DomainError(
        "good_approx_test requires d even and c in (-2^(1/(d-1)), -1)");

  GoodApproxReport rep;
  rep.n = n;
  rep.log_iterate = log_abs_iterate(orbit, n);
  const double dn2 = std::exp2((n - 2) * std::log2(double(p.d)));
  const double mu = p.d * (1.0 - std::pow(double(p.d), -m));
  rep.log_threshold = -mu * dn2 * log_abs(p.b);

  switch (compare_with_slack(rep.log_iterate, rep.log_threshold, kSlack)) {
    case SlackOrder::Less:
      rep.is_good = true;
      break;
    case SlackOrder::Greater:
      rep.is_good = false;
      break;
    case SlackOrder::Marginal:
      rep.marginal = true;
      rep.is_good = exact_good_approx(orbit, n, m) == SlackOrder::Less;
      break;
  }

  rep.zeta = std::pow(std::fabs(mpq_get_d(p.value().get_mpq_t())),
                      1.0 / p.d);
  rep.approx_distance = std::fabs(
      std::exp(log_abs(orbit.numerator(n - 1)) - log_denominator(p, n - 1)) -
      rep.zeta);
  return rep;
}

namespace {

// |f^n(0)| < 1/2, decided in log space with exact fallback.
bool small_iterate(const Orbit& orbit, int n) {
  const double lhs = log_abs_iterate(orbit, n);
  switch (compare_with_slack(lhs, -M_LN2, kSlack)) {
    case SlackOrder::Less: return true;
    case SlackOrder::Greater: return false;
    case SlackOrder::Marginal: break;
  }
  const Parameter& p = orbit.parameter();
  const auto e = pow_u64(static_cast<std::uint64_t>(p.d),
                         static_cast<unsigned>(n - 1));
  if (!e) throw InconclusiveError("small_iterate: exponent overflow");
  if (bit_length(p.b) * *e > (1ull << 30))
    throw InconclusiveError("small_iterate: exact fallback too large");
  BigInt rhs;
  mpz_pow_ui(rhs.get_mpz_t(), p.b.get_mpz_t(),
             static_cast<unsigned long>(*e));
  return 2 * abs(orbit.numerator(n)) < rhs;
}

}  // namespace

bool non_consecutive_check(const Orbit& orbit, int n_max) {
  bool prev_small = false;
  for (int n = 1; n <= n_max; ++n) {
    const bool small = small_iterate(orbit, n);
    if (small && prev_small) return false;
    prev_small = small;
  }
  return true;
}

// --------------------- certified (enclosure-based) -------------------------

namespace {

// Tri-state: is |f^n(0)| below `threshold_log`?  Uses the enclosure first,
// exact terms (under a modest cap) second.
std::optional<bool> below_threshold(const Parameter& p, int n,
                                    double threshold_log) {
  const OrbitEnclosure enc = enclose_iterate(p, n);
  const double lo = enc.escaped ? enc.escape_floor : enc.value.abs_lower();
  if (lo > 0.0 && std::log(lo) > threshold_log + kSlack) return false;
  const double hi = enc.escaped
                        ? std::numeric_limits<double>::infinity()
                        : enc.value.abs_upper();
  if (std::isfinite(hi) && hi > 0.0 && std::log(hi) < threshold_log - kSlack)
    return true;
  return std::nullopt;
}

}  // namespace

int good_approx_count_certified(const Parameter& p, int n_lo, int n_hi,
                                int m) {
  if (!in_recurrent_window(p))
    throw DomainError("good_approx_count_certified: recurrent window only");
  int count = 0;
  const double mu = p.d * (1.0 - std::pow(double(p.d), -m));
  Orbit orbit{p};
  for (int n = std::max(2, n_lo); n <= n_hi; ++n) {
    const double threshold =
        -mu * std::exp2((n - 2) * std::log2(double(p.d))) * log_abs(p.b);
    if (auto below = below_threshold(p, n, threshold)) {
      if (*below) ++count;
      continue;
    }
    orbit = extend_orbit(orbit, n);  // exact fallback, size guard applies
    if (good_approx_test(orbit, n, m).is_good) ++count;
  }
  return count;
}

bool non_consecutive_check_certified(const Parameter& p, int n_max) {
  bool prev_small = false;
  Orbit orbit{p};
  for (int n = 1; n <= n_max; ++n) {
    bool small;
    if (auto below = below_threshold(p, n, -M_LN2)) {
      small = *below;
    } else {
      orbit = extend_orbit(orbit, n);
      small = small_iterate(orbit, n);
    }
    if (small && prev_small) return false;
    prev_small = small;
  }
  return true;
}

}  // namespace zsig
