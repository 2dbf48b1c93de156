#include "zsig/classifier.hpp"

#include <algorithm>
#include <sstream>

#include "zsig/mahler.hpp"

namespace zsig {

int cmp_abs_c_pow2(const Parameter& p, int num, int den) {
  if (den < 1) throw DomainError("cmp_abs_c_pow2: den must be >= 1");
  // |a|^den  vs  2^num * b^den
  BigInt lhs;
  mpz_pow_ui(lhs.get_mpz_t(), BigInt(abs(p.a)).get_mpz_t(),
             static_cast<unsigned long>(den));
  BigInt rhs;
  mpz_pow_ui(rhs.get_mpz_t(), p.b.get_mpz_t(),
             static_cast<unsigned long>(den));
  mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(),
               static_cast<mp_bitcnt_t>(num));
  return cmp(lhs, rhs);
}

bool in_recurrent_window(const Parameter& p) {
  if (p.d % 2 != 0) return false;
  if (p.a >= 0) return false;
  if (abs(p.a) <= p.b) return false;                    // need c < -1
  return cmp_abs_c_pow2(p, 1, p.d - 1) < 0;             // |c| < 2^(1/(d-1))
}

bool n2_membership(const Parameter& p) {
  BigInt s;
  mpz_pow_ui(s.get_mpz_t(), p.a.get_mpz_t(),
             static_cast<unsigned long>(p.d - 1));
  BigInt t;
  mpz_pow_ui(t.get_mpz_t(), p.b.get_mpz_t(),
             static_cast<unsigned long>(p.d - 1));
  return abs(s + t) == 1;
}

std::optional<PowerTriple> reducible_power_triple(const Parameter& p) {
  if (p.a >= 0) return std::nullopt;
  const BigInt abs_a = abs(p.a);
  for (int m = 2; m <= p.d; ++m) {
    if (p.d % m != 0) continue;
    auto [k, ka] = integer_root(abs_a, static_cast<unsigned long>(m));
    if (!ka) continue;
    auto [l, lb] = integer_root(p.b, static_cast<unsigned long>(m));
    if (!lb) continue;
    return PowerTriple{k, l, m};
  }
  return std::nullopt;
}

const char* to_string(CaseTag t) {
  switch (t) {
    case CaseTag::FiniteOrbit: return "FINITE_ORBIT";
    case CaseTag::IntegralDH: return "INTEGRAL_DH";
    case CaseTag::BigC: return "BIG_C";
    case CaseTag::PositiveOrOdd: return "POSITIVE_OR_ODD";
    case CaseTag::SmallNegWindow: return "SMALL_NEG_WINDOW";
    case CaseTag::MidWindow: return "MID_WINDOW";
    case CaseTag::RecurrentReducible: return "RECURRENT_REDUCIBLE";
    case CaseTag::RecurrentGeneral: return "RECURRENT_GENERAL";
  }
  return "?";
}

const char* to_string(Consistency c) {
  switch (c) {
    case Consistency::Consistent: return "CONSISTENT";
    case Consistency::BoundOnly: return "BOUND_ONLY";
    case Consistency::Mismatch: return "MISMATCH";
  }
  return "?";
}

Classification classify(const Parameter& p) {
  Classification cl;
  cl.n2_member = p.finite_orbit ? false : n2_membership(p);
  const auto exact_from_n2 = [&cl] {
    cl.prediction = PredictionKind::Exact;
    cl.predicted_set = cl.n2_member ? std::vector<int>{2} : std::vector<int>{};
  };

  if (p.finite_orbit) {
    cl.tag = CaseTag::FiniteOrbit;
    cl.prediction = PredictionKind::None;
    return cl;
  }

  if (p.integral) {
    // Z(f,0) is contained in {2} and empty unless c = +-1; the n = 2
    // membership criterion applies verbatim with b = 1.
    cl.tag = CaseTag::IntegralDH;
    cl.m_of_c = 2;
    exact_from_n2();
    return cl;
  }

  if (cmp_abs_c_pow2(p, p.d, p.d - 1) > 0) {  // |c| > 2^(d/(d-1))
    cl.tag = CaseTag::BigC;
    cl.m_of_c = 2;
    exact_from_n2();
    return cl;
  }

  if (p.a > 0 || p.d % 2 != 0) {
    cl.tag = CaseTag::PositiveOrOdd;
    cl.m_of_c = 2;
    exact_from_n2();
    return cl;
  }

  if (abs(p.a) < p.b) {  // -1 < c < 0, d even
    cl.tag = CaseTag::SmallNegWindow;
    cl.m_of_c = 2;
    exact_from_n2();
    return cl;
  }

  if (cmp_abs_c_pow2(p, 1, p.d - 1) > 0) {  // 2^(1/(d-1)) < |c| < 2^(d/(d-1))
    cl.tag = CaseTag::MidWindow;
    cl.m_of_c = 2;
    exact_from_n2();
    return cl;
  }

  // Remaining region: d even, c in (-2^(1/(d-1)), -1).
  if (!in_recurrent_window(p))
    throw Error("classifier fallthrough outside the recurrent window for " +
                p.str());

  if (auto triple = reducible_power_triple(p)) {
    cl.tag = CaseTag::RecurrentReducible;
    cl.m_of_c = 2;
    cl.power_triple = triple;
    exact_from_n2();  // always empty: l^m - k^m = +-1 has no solutions here
    return cl;
  }

  cl.tag = CaseTag::RecurrentGeneral;
  cl.m_of_c = std::nullopt;  // unbounded-by-theorem
  cl.prediction = PredictionKind::Bounded;
  cl.bound = size_bound(p.d);
  return cl;
}

ConsistencyReport verify_against_computation(const Parameter& p, int n_max,
                                             const DeciderOptions& opts) {
  if (p.finite_orbit)
    throw FiniteOrbitError("verify_against_computation: finite orbit " +
                           p.str());
  ConsistencyReport rep;
  rep.param = p;
  rep.classification = classify(p);
  rep.computed = zsigmondy_set_certified(p, n_max, opts);

  const auto mismatch = [&](const std::string& why) {
    rep.verdict = Consistency::Mismatch;
    std::ostringstream os;
    os << why << "; param " << p.str() << "; computed {";
    for (std::size_t i = 0; i < rep.computed.size(); ++i)
      os << (i ? "," : "") << rep.computed[i];
    os << "} on [2," << n_max << "]";
    rep.evidence = os.str();
  };

  // Prop 2.5 pins n = 2 exactly in every branch.
  const bool two_in = std::find(rep.computed.begin(), rep.computed.end(), 2) !=
                      rep.computed.end();
  if (two_in != rep.classification.n2_member) {
    mismatch("n=2 membership disagrees with the a^(d-1)+b^(d-1) criterion");
    return rep;
  }

  switch (rep.classification.prediction) {
    case PredictionKind::Exact:
      if (rep.computed != rep.classification.predicted_set)
        mismatch("computed set differs from exact prediction");
      else
        rep.verdict = Consistency::Consistent;
      break;
    case PredictionKind::Bounded:
      if (static_cast<int>(rep.computed.size()) > rep.classification.bound)
        mismatch("computed set exceeds cardinality bound " +
                 std::to_string(rep.classification.bound));
      else
        rep.verdict = Consistency::BoundOnly;
      break;
    case PredictionKind::None:
      rep.verdict = Consistency::Consistent;
      break;
  }
  return rep;
}

}  // namespace zsig
