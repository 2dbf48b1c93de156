#include "zsig/orbit.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>

namespace zsig {

std::string Parameter::str() const {
  std::ostringstream os;
  os << "c=" << a.get_str();
  if (b != 1) os << "/" << b.get_str();
  os << " d=" << d;
  return os.str();
}

Parameter make_parameter(const BigInt& a_in, const BigInt& b_in, int d) {
  if (b_in == 0) throw DomainError("make_parameter: zero denominator");
  if (d < 2) throw DomainError("make_parameter: degree must be >= 2");

  Parameter p;
  p.d = d;
  p.a = a_in;
  p.b = b_in;
  if (p.b < 0) {
    p.a = -p.a;
    p.b = -p.b;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), p.a.get_mpz_t(), p.b.get_mpz_t());
  if (g > 1) {
    p.a /= g;
    p.b /= g;
  }
  p.integral = (p.b == 1);
  // 0 is preperiodic under z^d + c exactly for c = 0, c = -1 (d even),
  // c = -2 (d = 2); all other rational parameters have infinite orbit.
  p.finite_orbit =
      p.integral &&
      (p.a == 0 || (p.a == -1 && d % 2 == 0) || (p.a == -2 && d == 2));
  return p;
}

void require_infinite_orbit(const Parameter& p) {
  if (p.finite_orbit)
    throw FiniteOrbitError("parameter " + p.str() +
                           " has a finite critical orbit");
}

const OrbitTerm& Orbit::term(int n) const {
  if (n < 1 || n > size())
    throw DomainError("orbit term " + std::to_string(n) +
                      " not computed (have " + std::to_string(size()) + ")");
  return *terms_[static_cast<std::size_t>(n - 1)];
}

Orbit Orbit::from_numerators(const Parameter& p,
                             const std::vector<BigInt>& numerators) {
  require_infinite_orbit(p);
  Orbit orbit(p);
  BigInt denom_exp = 1;
  for (std::size_t i = 0; i < numerators.size(); ++i) {
    auto term = std::make_shared<OrbitTerm>();
    term->n = static_cast<int>(i + 1);
    term->numerator = numerators[i];
    term->denom_exp = denom_exp;
    orbit.terms_.push_back(std::move(term));
    denom_exp *= p.d;
  }
  if (!numerators.empty() && numerators.front() != p.a)
    throw DomainError("cached orbit does not start at a_1 = a");
  return orbit;
}

std::uint64_t next_term_bit_bound(const Parameter& p, int n,
                                  std::uint64_t current_bits) {
  // a_{n+1} = a_n^d + a * b^(d^n - 1)
  const std::uint64_t lhs =
      static_cast<std::uint64_t>(p.d) * current_bits;
  std::uint64_t rhs = bit_length(p.a);
  if (p.b > 1) {
    const auto e = pow_u64(static_cast<std::uint64_t>(p.d),
                           static_cast<unsigned>(n));
    if (!e) return UINT64_MAX;
    rhs += (*e - 1) * bit_length(p.b);
  }
  return std::max(lhs, rhs) + 2;
}

Orbit extend_orbit(const Orbit& orbit, int n_target,
                   const OrbitLimits& limits) {
  if (n_target < 1) throw DomainError("extend_orbit: n_target must be >= 1");
  if (orbit.size() >= n_target) return orbit;
  require_infinite_orbit(orbit.parameter());

  const Parameter& p = orbit.parameter();
  Orbit out = orbit;  // shares all computed terms

  if (out.terms_.empty()) {
    auto first = std::make_shared<OrbitTerm>();
    first->n = 1;
    first->numerator = p.a;
    first->denom_exp = 1;  // d^0
    out.terms_.push_back(std::move(first));
  }

  while (out.size() < n_target) {
    const int n = out.size();  // extending from a_n to a_{n+1}
    const OrbitTerm& cur = *out.terms_.back();

    const std::uint64_t bound =
        next_term_bit_bound(p, n, bit_length(cur.numerator));
    if (bound > limits.max_numerator_bits)
      throw SizeGuardError(bound, limits.max_numerator_bits);

    auto next = std::make_shared<OrbitTerm>();
    next->n = n + 1;
    next->denom_exp = cur.denom_exp * p.d;

    BigInt t;
    mpz_pow_ui(t.get_mpz_t(), cur.numerator.get_mpz_t(),
               static_cast<unsigned long>(p.d));
    if (p.b == 1) {
      next->numerator = t + p.a;
    } else {
      const auto e = pow_u64(static_cast<std::uint64_t>(p.d),
                             static_cast<unsigned>(n));
      if (!e) throw SizeGuardError(UINT64_MAX, limits.max_numerator_bits);
      BigInt bp;
      mpz_pow_ui(bp.get_mpz_t(), p.b.get_mpz_t(),
                 static_cast<unsigned long>(*e - 1));
      next->numerator = t + p.a * bp;
    }

    if (limits.check_coprimality && p.b > 1) {
      BigInt g;
      mpz_gcd(g.get_mpz_t(), next->numerator.get_mpz_t(), p.b.get_mpz_t());
      if (g != 1)
        throw Error("coprimality invariant violated at n=" +
                    std::to_string(n + 1) + " for " + p.str());
    }

    out.terms_.push_back(std::move(next));
  }
  return out;
}

double log_denominator(const Parameter& p, int n) {
  if (p.b == 1) return 0.0;
  const auto e = pow_u64(static_cast<std::uint64_t>(p.d),
                         static_cast<unsigned>(n - 1));
  if (e) return static_cast<double>(*e) * log_abs(p.b);
  return std::exp2(static_cast<double>(n - 1) * std::log2(double(p.d))) *
         log_abs(p.b);
}

double log_abs_iterate(const Orbit& orbit, int n) {
  const OrbitTerm& t = orbit.term(n);
  return log_abs(t.numerator) - log_denominator(orbit.parameter(), n);
}

BigInt numerator_mod(const Parameter& p, int n, const BigInt& modulus) {
  if (n < 1) throw DomainError("numerator_mod: n must be >= 1");
  require_infinite_orbit(p);
  if (modulus <= 0) throw DomainError("numerator_mod: modulus must be > 0");

  BigInt r = p.a % modulus;
  if (r < 0) r += modulus;
  if (n == 1) return r;

  const BigInt a_mod = r;
  // p_k = b^(d^k - 1) mod M, maintained incrementally via
  // d^(k+1) - 1 = d*(d^k - 1) + (d - 1).
  BigInt b_mod = p.b % modulus;
  BigInt b_step;
  mpz_powm_ui(b_step.get_mpz_t(), b_mod.get_mpz_t(),
              static_cast<unsigned long>(p.d - 1), modulus.get_mpz_t());
  BigInt pk = b_step;

  for (int k = 1; k < n; ++k) {
    BigInt t;
    mpz_powm_ui(t.get_mpz_t(), r.get_mpz_t(),
                static_cast<unsigned long>(p.d), modulus.get_mpz_t());
    r = (t + a_mod * pk) % modulus;
    if (r < 0) r += modulus;
    if (k + 1 < n) {
      mpz_powm_ui(pk.get_mpz_t(), pk.get_mpz_t(),
                  static_cast<unsigned long>(p.d), modulus.get_mpz_t());
      pk = (pk * b_step) % modulus;
    }
  }
  return r;
}

OrbitEnclosure enclose_iterate(const Parameter& p, int n) {
  require_infinite_orbit(p);
  const Interval c = Interval::of_rational(p.value());

  // Once |z| >= E with E >= 2 and E^(d-1) >= 2|c| + 1, we get
  // |f(z)| >= |z|(2|c|+1) - |c| >= |z|, so the orbit never comes back
  // below E.
  double e_floor = 2.0;
  {
    const double ac = c.abs_upper();
    const double need = std::pow(2.0 * ac + 1.0, 1.0 / (p.d - 1));
    e_floor = std::max(2.0, need * (1.0 + 1e-12));
  }

  OrbitEnclosure enc;
  Interval z = c;
  for (int k = 1; k < n; ++k) {
    if (z.abs_lower() >= e_floor) {
      enc.escaped = true;
      enc.escape_floor = e_floor;
      enc.value = z;
      return enc;
    }
    z = iadd(ipow(z, static_cast<unsigned>(p.d)), c);
  }
  enc.value = z;
  enc.escaped = z.abs_lower() >= e_floor;
  enc.escape_floor = enc.escaped ? e_floor : 0.0;
  return enc;
}

// --------------------------- orbit cache ----------------------------------

namespace {
std::mutex cache_mutex;
}

void OrbitCache::load() {
  entries_.clear();
  if (path_.empty()) return;
  std::ifstream in(path_);
  if (!in) return;
  std::string a_s, b_s, hex;
  int d = 0, n = 0;
  while (in >> a_s >> b_s >> d >> n >> hex) {
    BigInt num;
    if (mpz_set_str(num.get_mpz_t(), hex.c_str(), 16) != 0) continue;
    entries_[{a_s, b_s, d}][n] = num;
  }
}

std::vector<BigInt> OrbitCache::lookup(const Parameter& p) const {
  std::vector<BigInt> out;
  auto it = entries_.find({p.a.get_str(), p.b.get_str(), p.d});
  if (it == entries_.end()) return out;
  for (int n = 1;; ++n) {
    auto jt = it->second.find(n);
    if (jt == it->second.end()) break;
    out.push_back(jt->second);
  }
  return out;
}

void OrbitCache::append(const Orbit& orbit) {
  if (path_.empty()) return;
  const Parameter& p = orbit.parameter();
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& known = entries_[{p.a.get_str(), p.b.get_str(), p.d}];
  std::ofstream out(path_, std::ios::app);
  if (!out) return;
  for (int n = 1; n <= orbit.size(); ++n) {
    if (known.count(n)) continue;
    const BigInt& num = orbit.numerator(n);
    out << p.a.get_str() << ' ' << p.b.get_str() << ' ' << p.d << ' ' << n
        << ' ' << num.get_str(16) << '\n';
    known[n] = num;
  }
}

}  // namespace zsig
