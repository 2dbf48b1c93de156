#include "zsig/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <sstream>
#include <thread>

#include "zsig/mandelbrot.hpp"

namespace zsig {

std::vector<Parameter> enumerate_parameters(const SweepSpec& spec) {
  if (spec.d_min < 2 || spec.d_max < spec.d_min)
    throw DomainError("sweep: degree range is empty or invalid");
  if (spec.b_min < 1 || spec.b_max < spec.b_min)
    throw DomainError("sweep: denominator range is empty or invalid");
  if (spec.n_max < 2) throw DomainError("sweep: n_max must be >= 2");

  std::vector<Parameter> params;
  for (int d = spec.d_min; d <= spec.d_max; ++d) {
    for (long b = spec.b_min; b <= std::min(spec.b_max, spec.height_max);
         ++b) {
      for (long a = -spec.height_max; a <= spec.height_max; ++a) {
        if (a == 0) continue;
        BigInt g;
        mpz_gcd(g.get_mpz_t(), BigInt(a).get_mpz_t(), BigInt(b).get_mpz_t());
        if (g != 1) continue;
        Parameter p = make_parameter(a, b, d);
        if (p.finite_orbit) continue;
        params.push_back(std::move(p));
      }
    }
  }
  return params;
}

namespace {

SCheckInfo run_s_check(const Parameter& p, const std::vector<int>& computed) {
  SCheckInfo info;
  const double c = mpq_get_d(p.value().get_mpq_t());
  const SMembership sm = s_membership(Complex(c, 0.0), 12);
  info.in_S = sm.in_S;
  info.blocking_period = sm.blocking_period;
  if (info.in_S.value_or(false)) {
    const bool is_seven_fourths = (p.a == -7 && p.b == 4);
    const bool three_in = std::find(computed.begin(), computed.end(), 3) !=
                          computed.end();
    if (three_in != is_seven_fourths) info.theorem_consistent = false;
    for (int n : computed)
      if (n >= 4 && n <= 12) info.theorem_consistent = false;
  }
  return info;
}

SweepRecord make_record(const Parameter& p, const SweepSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepRecord rec;
  rec.param = p;
  if (spec.classify_only) {
    rec.classification = classify(p);
    rec.verdict = rec.classification.prediction == PredictionKind::Bounded
                      ? Consistency::BoundOnly
                      : Consistency::Consistent;
  } else {
    ConsistencyReport rep =
        verify_against_computation(p, spec.n_max, spec.decider);
    rec.classification = std::move(rep.classification);
    rec.computed = std::move(rep.computed);
    rec.verdict = rep.verdict;
    rec.evidence = std::move(rep.evidence);

    if (spec.mandel_s_check && p.d == 2 && in_recurrent_window(p)) {
      rec.s_check = run_s_check(p, rec.computed);
      if (!rec.s_check->theorem_consistent) {
        rec.verdict = Consistency::Mismatch;
        std::ostringstream os;
        os << "S-membership theorem violated for " << p.str()
           << ": computed set conflicts with M(c) = 3 structure";
        rec.evidence = os.str();
      }
    }
  }
  rec.timing_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return rec;
}

void tally(SweepSummary& summary, const SweepRecord& rec) {
  ++summary.records;
  switch (rec.verdict) {
    case Consistency::Consistent: ++summary.consistent; break;
    case Consistency::BoundOnly: ++summary.bound_only; break;
    case Consistency::Mismatch: ++summary.mismatches; break;
  }
  if (rec.s_check) {
    ++summary.s_checked;
    if (!rec.s_check->in_S)
      ++summary.s_inconclusive;
    else if (*rec.s_check->in_S)
      ++summary.s_members;
  }
}

}  // namespace

SweepSummary run_sweep(const SweepSpec& spec,
                       const std::function<void(const SweepRecord&)>& sink) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Parameter> params = enumerate_parameters(spec);
  SweepSummary summary;

  if (spec.jobs <= 1) {
    for (const Parameter& p : params) {
      SweepRecord rec = make_record(p, spec);
      tally(summary, rec);
      sink(rec);
      if (rec.verdict == Consistency::Mismatch) break;
    }
    summary.elapsed_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    return summary;
  }

  // Work-stealing over an atomic cursor; a sequencing buffer restores
  // enumeration order on the emitting (calling) thread.
  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::condition_variable cv;
  std::vector<std::optional<SweepRecord>> slots(params.size());

  auto worker = [&] {
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) return;
      const std::size_t i = cursor.fetch_add(1);
      if (i >= params.size()) return;
      SweepRecord rec = make_record(params[i], spec);
      {
        std::lock_guard<std::mutex> lock(mu);
        slots[i] = std::move(rec);
      }
      cv.notify_one();
    }
  };

  std::vector<std::thread> pool;
  const std::size_t jobs = std::min<std::size_t>(
      static_cast<std::size_t>(std::max(1, spec.jobs)), params.size());
  pool.reserve(jobs);
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);

  std::size_t next = 0;
  bool aborted = false;
  {
    std::unique_lock<std::mutex> lock(mu);
    while (next < params.size() && !aborted) {
      cv.wait(lock, [&] { return slots[next].has_value(); });
      while (next < params.size() && slots[next] && !aborted) {
        SweepRecord rec = std::move(*slots[next]);
        slots[next].reset();
        ++next;
        lock.unlock();
        tally(summary, rec);
        sink(rec);
        if (rec.verdict == Consistency::Mismatch) {
          stop.store(true);
          aborted = true;
        }
        lock.lock();
      }
    }
  }
  for (std::thread& t : pool) t.join();

  summary.elapsed_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
  return summary;
}

}  // namespace zsig
