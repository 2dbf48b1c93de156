#include "zsig/mandelbrot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zsig {

namespace {

constexpr double kPi = 3.14159265358979323846;

// All periodic points satisfy |z| <= B(c): beyond it |f(z)| > |z|.
double root_bound(Complex c) {
  return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * std::abs(c)));
}

struct PolyEval {
  Complex value;  // f^n(z) - z
  Complex deriv;  // d/dz (f^n(z) - z)
};

PolyEval eval_dynatomic(Complex c, int n, Complex z) {
  Complex w = z;
  Complex dw = 1.0;
  for (int i = 0; i < n; ++i) {
    dw = 2.0 * w * dw;
    w = w * w + c;
  }
  return {w - z, dw - 1.0};
}

Complex iterate(Complex c, Complex z, int steps) {
  for (int i = 0; i < steps; ++i) z = z * z + c;
  return z;
}

}  // namespace

double rho_table(int n) {
  if (n < 1 || n > 12) throw DomainError("rho_table: n must be in [1, 12]");
  if (n <= 3) return 0.25;
  return std::ldexp(1.0, -(1 << (n - 2)));
}

const char* to_string(RegionStatus s) {
  switch (s) {
    case RegionStatus::Inside: return "inside";
    case RegionStatus::Outside: return "outside";
    case RegionStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<Cycle> periodic_cycles(Complex c, int n, double tol) {
  if (n < 1 || n > 12)
    throw DomainError("periodic_cycles: n must be in [1, 12]");
  const int degree = 1 << n;
  const double B = root_bound(c);

  // Aberth-Ehrlich from a slightly irrational circle.
  std::vector<Complex> z(degree);
  for (int k = 0; k < degree; ++k) {
    const double angle = 2.0 * kPi * (k + 0.2628) / degree + 0.40123;
    z[k] = (B + 0.5) * Complex(std::cos(angle), std::sin(angle));
  }

  std::vector<Complex> ratio(degree);
  const int max_sweeps = 600;
  double max_step = 0.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int i = 0; i < degree; ++i) {
      const PolyEval pe = eval_dynatomic(c, n, z[i]);
      if (std::abs(pe.deriv) > 0.0)
        ratio[i] = pe.value / pe.deriv;
      else
        ratio[i] = pe.value;
    }
    max_step = 0.0;
    for (int i = 0; i < degree; ++i) {
      Complex s = 0.0;
      for (int j = 0; j < degree; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      Complex denom = 1.0 - ratio[i] * s;
      Complex step = std::abs(denom) > 1e-300 ? ratio[i] / denom : ratio[i];
      const double cap = 0.5 * (1.0 + std::abs(z[i]));
      if (std::abs(step) > cap) step *= cap / std::abs(step);
      z[i] -= step;
      max_step = std::max(max_step, std::abs(step));
    }
    if (max_step < 1e-14 * (1.0 + B)) break;
  }

  // Polish simple roots; multiple roots keep their cluster accuracy.
  for (int i = 0; i < degree; ++i) {
    for (int it = 0; it < 3; ++it) {
      const PolyEval pe = eval_dynatomic(c, n, z[i]);
      if (std::abs(pe.deriv) < 1e-12) break;
      z[i] -= pe.value / pe.deriv;
    }
  }

  // Residual acceptance, scaled by the degree.
  double worst = 0.0;
  for (int i = 0; i < degree; ++i)
    worst = std::max(worst, std::abs(eval_dynatomic(c, n, z[i]).value));
  if (worst > tol * degree) {
    std::ostringstream os;
    os << "periodic_cycles: root refinement residual " << worst
       << " exceeds " << tol * degree << " at n=" << n;
    throw InconclusiveError(os.str());
  }

  // Cluster coincident roots.
  const double cluster_eps = std::max(1e-6, std::sqrt(worst)) * (1.0 + B);
  std::vector<int> cluster_of(degree, -1);
  std::vector<Complex> reps;
  std::vector<int> mult;
  for (int i = 0; i < degree; ++i) {
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if (std::abs(z[i] - reps[r]) < cluster_eps) {
        cluster_of[i] = static_cast<int>(r);
        ++mult[r];
        break;
      }
    }
    if (cluster_of[i] < 0) {
      cluster_of[i] = static_cast<int>(reps.size());
      reps.push_back(z[i]);
      mult.push_back(1);
    }
  }

  // Group representatives into cycles and detect exact periods.
  const double period_eps = std::max(1e-7, 4.0 * cluster_eps);
  std::vector<bool> used(reps.size(), false);
  std::vector<Cycle> cycles;
  for (std::size_t r = 0; r < reps.size(); ++r) {
    if (used[r]) continue;
    Cycle cyc;
    cyc.point = reps[r];
    cyc.period = n;
    Complex w = reps[r];
    for (int k = 1; k <= n; ++k) {
      w = w * w + c;
      if (k < n && std::abs(w - reps[r]) < period_eps && n % k == 0) {
        cyc.period = k;
        break;
      }
    }
    cyc.exact_period = (cyc.period == n);
    cyc.residual =
        std::abs(iterate(c, reps[r], cyc.period) - reps[r]);
    Complex lambda = 1.0;
    Complex orbit_pt = reps[r];
    for (int k = 0; k < cyc.period; ++k) {
      lambda *= 2.0 * orbit_pt;
      orbit_pt = orbit_pt * orbit_pt + c;
      // consume the representatives along this cycle
      for (std::size_t s = 0; s < reps.size(); ++s)
        if (!used[s] && std::abs(reps[s] - orbit_pt) < period_eps)
          used[s] = true;
    }
    used[r] = true;
    cyc.multiplier = lambda;
    cyc.multiplicity = mult[r];
    cycles.push_back(cyc);
  }
  return cycles;
}

RegionVerdict in_D(Complex c, int n, double rho, double tol) {
  RegionVerdict v;
  v.c = c;
  v.n = n;
  v.rho = rho;

  const std::vector<Cycle> cycles = periodic_cycles(c, n, tol);

  // Exact-period-n cycles with |multiplier| certifiably <= rho.
  bool any_marginal = false;
  std::vector<Cycle> candidates;
  for (const Cycle& cyc : cycles) {
    if (!cyc.exact_period) continue;
    const double lam = std::abs(cyc.multiplier);
    const double band = std::max(1e-9, 1e-6 * rho) + 1e-7 * lam;
    if (lam <= rho - band)
      candidates.push_back(cyc);
    else if (lam < rho + band)
      any_marginal = true;
  }
  if (candidates.empty()) {
    if (any_marginal) {
      v.status = RegionStatus::Inconclusive;
      v.note = "an exact-period cycle has |multiplier| within the numeric "
               "band around rho";
    } else {
      v.status = RegionStatus::Outside;
      v.note = "no exact-period-" + std::to_string(n) +
               " cycle has |multiplier| <= rho";
    }
    return v;
  }

  // Confirm 0 lies in the basin by direct iteration (it must, but the
  // verdict is only issued once observed).
  const double B = root_bound(c);
  const double escape = B + 1.0;
  const double trap = 1e-8 * (1.0 + B);
  Complex z = 0.0;
  const long budget = 200000;
  for (long step = 0; step < budget; ++step) {
    z = z * z + c;
    if (std::abs(z) > escape) {
      v.status = RegionStatus::Outside;
      v.note = "critical orbit escapes";
      return v;
    }
    for (const Cycle& cyc : candidates) {
      Complex w = cyc.point;
      for (int k = 0; k < cyc.period; ++k) {
        if (std::abs(z - w) < trap) {
          v.status = RegionStatus::Inside;
          Cycle witness = cyc;
          witness.point = w;  // the cycle point 0 actually lands near
          v.witness = witness;
          return v;
        }
        w = w * w + c;
      }
    }
  }
  v.status = RegionStatus::Inconclusive;
  v.note = "critical orbit neither converged nor escaped within budget";
  return v;
}

LowerBoundReport lower_bound_check(Complex c, int n, double rho) {
  if (!(rho > 0.0 && rho < 0.25))
    throw DomainError("lower_bound_check: need 0 < rho < 1/4");
  if (n < 1 || n > 12)
    throw DomainError("lower_bound_check: n must be in [1, 12]");

  LowerBoundReport rep;
  rep.c = c;
  rep.n = n;
  rep.rho = rho;
  rep.precondition_ok = true;
  for (int k = 1; k <= n; ++k) {
    if (n % k != 0) continue;
    const RegionVerdict v = in_D(c, k, rho);
    if (v.status == RegionStatus::Inside) {
      rep.precondition_ok = false;
      rep.inside_k = k;
      break;
    }
    if (v.status == RegionStatus::Inconclusive) {
      rep.precondition_ok = false;
      rep.precondition_inconclusive = true;
      rep.inside_k = k;
      break;
    }
  }

  rep.lhs = std::abs(iterate(c, 0.0, n));
  rep.rhs = rho * std::ldexp(1.0, -(2 * n + 2));
  rep.holds = rep.lhs >= rep.rhs * (1.0 - 1e-12);
  return rep;
}

BlaschkeReport blaschke_distortion_check(double rho) {
  if (!(rho > 0.0 && rho < 0.25))
    throw DomainError("blaschke_distortion_check: need 0 < rho < 1/4");
  BlaschkeReport r;
  r.rho = rho;
  r.p = (1.0 - std::sqrt(1.0 - rho * rho)) / rho;
  r.p_limit = 4.0 - std::sqrt(15.0);
  const double p = r.p;
  r.series_lower = 1.0 - p * (std::pow(p, 4) - std::pow(p, 3) -
                              2.0 * p * p + 3.0 * p + 2.0) /
                             ((1.0 - p * p) * (1.0 - p * p));
  r.psi_ratio_upper = 1.0 / ((1.0 - p) * (1.0 - p));
  r.one_minus_p = 1.0 - p;
  r.ratio4 = r.psi_ratio_upper / r.series_lower;
  r.ratio8 = r.ratio4 / r.one_minus_p;
  r.all_hold = p > 0.0 && p < r.p_limit && r.series_lower > 0.5 &&
               r.psi_ratio_upper < 2.0 && r.one_minus_p > 0.5 &&
               r.ratio4 <= 4.0 && r.ratio8 <= 8.0;
  return r;
}

InequalityReport ca_inequality(const BigInt& b, int n) {
  if (b < 2) throw DomainError("ca_inequality: b must be >= 2");
  if (n < 3) throw DomainError("ca_inequality: n must be >= 3");

  const DivisorTerms dt = divisor_terms(n, 2);
  InequalityReport rep;
  rep.n = n;
  rep.mode = IneqMode::CA;
  rep.s_d = dt.s_d;
  rep.omega = dt.omega;
  rep.log_b = log_abs(b);
  rep.log_abs_c = 0.0;

  const BigInt lhs_coeff = pow_bigint(2, static_cast<unsigned long>(n)) -
                           dt.s_d;
  const BigInt rhs_coeff =
      2 * dt.omega + 4 * n + 4 +
      pow_bigint(2, static_cast<unsigned long>(n - 1));
  rep.lhs = mpz_get_d(lhs_coeff.get_mpz_t()) * rep.log_b;
  rep.rhs = mpz_get_d(rhs_coeff.get_mpz_t()) * M_LN2;
  rep.terms.push_back({"lhs_coeff", mpz_get_d(lhs_coeff.get_mpz_t())});
  rep.terms.push_back({"rhs_coeff", mpz_get_d(rhs_coeff.get_mpz_t())});

  switch (compare_with_slack(rep.lhs, rep.rhs, 1e-9)) {
    case SlackOrder::Less:
      rep.holds = true;
      break;
    case SlackOrder::Greater:
      rep.holds = false;
      break;
    case SlackOrder::Marginal: {
      rep.marginal = true;
      // b^lhs_coeff vs 2^rhs_coeff, exactly.
      if (lhs_coeff.fits_ulong_p() && rhs_coeff.fits_ulong_p() &&
          bit_length(b) * lhs_coeff.get_ui() < (1ull << 28)) {
        const BigInt lhs_pow = pow_bigint(b, lhs_coeff.get_ui());
        BigInt rhs_pow = 1;
        mpz_mul_2exp(rhs_pow.get_mpz_t(), rhs_pow.get_mpz_t(),
                     static_cast<mp_bitcnt_t>(rhs_coeff.get_ui()));
        rep.holds = lhs_pow < rhs_pow;
      } else {
        rep.holds = rep.lhs < rep.rhs;
      }
      break;
    }
  }
  return rep;
}

SMembership s_membership(Complex c, int max_period, long budget) {
  if (max_period < 1 || max_period > 12)
    throw DomainError("s_membership: max_period must be in [1, 12]");

  SMembership out;
  const double escape = root_bound(c) + 1.0;

  Complex z = 0.0;
  long step = 0;
  const long transient = std::min<long>(budget / 4, 50000);
  for (; step < transient; ++step) {
    z = z * z + c;
    if (std::abs(z) > escape) {
      out.escaped = true;
      out.in_S = true;  // no attracting cycle can exist
      return out;
    }
  }

  // Look for a period p <= max_period that persists across a window.
  const int window = 4 * max_period;
  std::vector<Complex> tail;
  tail.reserve(static_cast<std::size_t>(window + max_period));
  while (step < budget) {
    tail.clear();
    Complex w = z;
    for (int i = 0; i < window + max_period; ++i) {
      tail.push_back(w);
      w = w * w + c;
      if (std::abs(w) > escape) {
        out.escaped = true;
        out.in_S = true;
        return out;
      }
    }
    const double eps = 1e-7 * (1.0 + std::abs(c));
    for (int p = 1; p <= max_period; ++p) {
      bool periodic = true;
      for (int i = 0; i < window; ++i) {
        if (std::abs(tail[static_cast<std::size_t>(i + p)] -
                     tail[static_cast<std::size_t>(i)]) > eps) {
          periodic = false;
          break;
        }
      }
      if (!periodic) continue;

      Complex lambda = 1.0;
      for (int i = 0; i < p; ++i) lambda *= 2.0 * tail[static_cast<std::size_t>(i)];
      const double lam = std::abs(lambda);
      const double rho = rho_table(p);
      const double band = std::max(1e-9, 1e-5 * rho) + 1e-4 * lam;

      AttractingCycleInfo info;
      info.period = p;
      info.point = tail[0];
      info.multiplier = lambda;
      out.cycle = info;

      if (lam <= rho - band) {
        out.in_S = false;
        out.blocking_period = p;
        return out;
      }
      if (lam >= rho + band) {
        // The orbit of 0 is glued to this cycle; no other cycle can hold
        // an attracting multiplier, so no D(k, rho_k) contains c.
        out.in_S = true;
        return out;
      }
      out.in_S = std::nullopt;  // within the numeric band: undecided
      return out;
    }

    // No period yet: run ahead and retry.
    z = tail.back();
    const long chunk = std::min<long>(window * 16, budget - step);
    for (long i = 0; i < chunk; ++i) {
      z = z * z + c;
      if (std::abs(z) > escape) {
        out.escaped = true;
        out.in_S = true;
        return out;
      }
    }
    step += chunk + window + max_period;
  }
  out.in_S = std::nullopt;
  return out;
}

}  // namespace zsig
