#include "relayopt/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "relayopt/error.hpp"
#include "relayopt/reliability.hpp"

namespace relayopt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

using u128 = unsigned __int128;

// Smallest T with x < T  <=>  x / 2^64 < p0, for 64-bit x.
u128 survival_threshold(const Rational& p0) {
  mpz_class scaled = p0.get_num();
  scaled <<= 64;
  mpz_class t;
  mpz_cdiv_q(t.get_mpz_t(), scaled.get_mpz_t(), p0.get_den().get_mpz_t());
  const mpz_class hi = t >> 64;
  const mpz_class lo = t - (hi << 64);
  auto to_u64 = [](const mpz_class& v) {
    // mpz_get_ui is only 32 bits on some platforms; split defensively.
    mpz_class upper = v >> 32;
    return (static_cast<std::uint64_t>(upper.get_ui()) << 32) |
           static_cast<std::uint64_t>(mpz_class(v - (upper << 32)).get_ui());
  };
  return (static_cast<u128>(to_u64(hi)) << 64) | to_u64(lo);
}

EdgeMask sample(std::size_t m, u128 threshold, std::uint64_t seed, std::uint64_t trial) {
  EdgeMask alive = 0;
  for (std::size_t e = 0; e < m; ++e)
    if (trial_hash(seed, trial, e) < threshold) alive |= EdgeMask{1} << e;
  return alive;
}

}  // namespace

std::uint64_t trial_hash(std::uint64_t seed, std::uint64_t trial, std::uint64_t edge) {
  return splitmix64(splitmix64(seed ^ splitmix64(trial)) + edge);
}

EdgeMask sample_survivors(const TwoTerminalGraph& g, const Rational& p0, std::uint64_t seed,
                          std::uint64_t trial) {
  return sample(g.edge_count(), survival_threshold(p0), seed, trial);
}

CopyCounter::CopyCounter(const TwoTerminalGraph& g, const Protocol& a) {
  if (!is_finite(g, a).finite) throw Error(ErrorCode::InfiniteProtocol, "copy counting needs a finite protocol");
  const StateGraph sg(g, a);
  const auto useful = sg.useful();
  const std::size_t n = sg.size();
  succ_.resize(n);
  accepting_.resize(n);
  std::vector<std::size_t> indegree(n, 0);
  for (StateId v = 0; v < n; ++v) {
    if (!useful[v]) continue;
    accepting_[v] = sg.is_accepting(v);
    if (sg.is_initial(v)) initial_.push_back(v);
    for (StateId w : sg.successors(v)) {
      if (!useful[w]) continue;
      succ_[v].push_back(w);
      ++indegree[w];
    }
  }
  std::vector<StateId> ready;
  for (StateId v = 0; v < n; ++v)
    if (useful[v] && indegree[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    StateId v = ready.back();
    ready.pop_back();
    order_.push_back(v);
    for (StateId w : succ_[v])
      if (--indegree[w] == 0) ready.push_back(w);
  }
  std::reverse(order_.begin(), order_.end());
}

std::uint64_t CopyCounter::count(EdgeMask alive) const {
  std::vector<std::uint64_t> walks(succ_.size(), 0);
  auto capped = [](std::uint64_t x) {
    if (x > kMaxCopiesPerTrial) throw Error(ErrorCode::GuardExceeded, "more than 10^6 copies in one trial");
    return x;
  };
  for (StateId v : order_) {
    if (!(alive >> StateGraph::edge_of(v) & 1U)) continue;
    std::uint64_t total = accepting_[v] ? 1 : 0;
    for (StateId w : succ_[v]) total = capped(total + walks[w]);
    walks[v] = total;
  }
  std::uint64_t total = 0;
  for (StateId v : initial_) total = capped(total + walks[v]);
  return total;
}

TrialReport simulate(const TwoTerminalGraph& g, const Protocol& a, const Rational& p0, std::uint64_t trials,
                     std::uint64_t seed, const SimulationOptions& opts) {
  if (p0 <= 0 || p0 >= 1) throw Error(ErrorCode::InvalidProbability, "simulation needs 0 < p0 < 1");
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "at least one trial is required");
  if (g.edge_count() > kMaxScanEdges) throw Error(ErrorCode::GuardExceeded, "too many edges to simulate");

  const WalkTester tester(g, a);
  std::optional<CopyCounter> counter;
  if (is_finite(g, a).finite)
    counter.emplace(g, a);
  else if (opts.require_copies)
    throw Error(ErrorCode::InfiniteProtocol, "copies requested for an infinite protocol");

  const u128 threshold = survival_threshold(p0);
  const std::size_t m = g.edge_count();
  const unsigned threads =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(opts.threads), trials));

  struct Partial {
    std::uint64_t deliveries = 0;
    std::map<std::uint64_t, std::uint64_t> copies;
    std::exception_ptr error;
  };
  std::vector<Partial> partial(threads);
  auto work = [&](unsigned slot) {
    const std::uint64_t lo = trials * slot / threads;
    const std::uint64_t hi = trials * (slot + 1) / threads;
    Partial& out = partial[slot];
    try {
      for (std::uint64_t t = lo; t < hi; ++t) {
        const EdgeMask alive = sample(m, threshold, seed, t);
        if (tester.admits(alive)) ++out.deliveries;
        if (counter) ++out.copies[counter->count(alive)];
      }
    } catch (...) {
      out.error = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work, i);
    for (auto& t : pool) t.join();
  }

  TrialReport report;
  report.trials = trials;
  if (counter) report.copies.emplace();
  for (auto& part : partial) {
    if (part.error) std::rethrow_exception(part.error);
    report.deliveries += part.deliveries;
    if (counter)
      for (auto [k, n] : part.copies) (*report.copies)[k] += n;
  }
  report.estimate = Rational(mpz_class(std::to_string(report.deliveries)), mpz_class(std::to_string(trials)));
  report.estimate.canonicalize();
  const double est = report.estimate.get_d();
  report.std_error = std::sqrt(est * (1.0 - est) / static_cast<double>(trials));
  return report;
}

Polynomial expected_copies(const TwoTerminalGraph& g, const Protocol& a, const EdgeProbabilityMap& prob) {
  Polynomial total;
  for (const auto& walk : a_walks(g, a)) {
    const EdgeMask edges = edges_of(g, walk);
    Polynomial term = Polynomial::constant(1);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (edges >> e & 1U) term = term * prob[e];
    total = total + term;
  }
  return total;
}

}  // namespace relayopt
