#include "relayopt/optimizer.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "relayopt/error.hpp"
#include "relayopt/protocol.hpp"

namespace relayopt {

namespace {

void require_subset_of_cfp(const Protocol& removed, const Protocol& all) {
  if (!removed.is_subset_of(all)) {
    throw Error(ErrorCode::NotInCfp, "removal set is not contained in the complete forwarding protocol");
  }
}

}  // namespace

DiscrepancyReport discrepancy(const TwoTerminalGraph& g, const Protocol& removed,
                              const EdgeProbabilityMap& prob, const ScanOptions& opts) {
  const Protocol all = cfp(g);
  require_subset_of_cfp(removed, all);
  const Protocol kept = all.without(removed);
  DiscrepancyReport report;
  report.removed = removed;
  report.d = rho(g, prob, opts) - rho_A(g, kept, prob, opts);
  report.finite = is_finite(g, kept).finite;
  return report;
}

Polynomial discrepancy_by_events(const TwoTerminalGraph& g, const Protocol& removed,
                                 const EdgeProbabilityMap& prob, const ScanOptions& opts) {
  const Protocol all = cfp(g);
  require_subset_of_cfp(removed, all);
  check_scan_size(g, opts);
  // Edge sets of s,r-paths that contain some instruction of I.
  std::vector<EdgeMask> through;
  for (const auto& path : enumerate_sr_paths(g)) {
    auto xs = instructions_in(path);
    if (std::any_of(xs.begin(), xs.end(), [&](const Instruction& x) { return removed.contains(x); }))
      through.push_back(edges_of(g, path));
  }
  WalkTester kept(g, all.without(removed));
  return survival_probability(
      g, prob,
      [&](EdgeMask s) {
        bool some = std::any_of(through.begin(), through.end(), [s](EdgeMask m) { return (m & s) == m; });
        return some && !kept.admits(s);
      },
      opts);
}

Protocol circuit_borne_instructions(const TwoTerminalGraph& g, std::size_t circuit_limit) {
  const Protocol all = cfp(g);
  std::vector<Instruction> out;
  for (const auto& c : essential_circuits(g, all, circuit_limit)) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const State& here = c[i];
      const State& next = c[(i + 1) % c.size()];
      out.push_back({here.from, here.to, next.to});
    }
  }
  return Protocol(g, std::move(out));
}

std::vector<Protocol> minimal_removal_sets(const TwoTerminalGraph& g, const OptimizerOptions& opts) {
  const Protocol all = cfp(g);
  if (is_finite(g, all).finite) return {Protocol{}};
  const auto pool = circuit_borne_instructions(g, opts.max_candidates).instructions();
  const std::size_t n = pool.size();
  if (n > 64) throw Error(ErrorCode::GuardExceeded, "too many circuit-borne instructions");

  std::vector<std::uint64_t> found;
  std::vector<Protocol> out;
  std::size_t tested = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    bool any_open = false;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::uint64_t mask = 0;
      for (std::size_t i : idx) mask |= std::uint64_t{1} << i;
      bool superset = std::any_of(found.begin(), found.end(), [&](std::uint64_t f) { return (f & mask) == f; });
      if (!superset) {
        any_open = true;
        if (++tested > opts.max_candidates) {
          throw Error(ErrorCode::GuardExceeded, "removal-set search exceeded the candidate limit");
        }
        std::vector<Instruction> chosen;
        for (std::size_t i : idx) chosen.push_back(pool[i]);
        Protocol removed(g, std::move(chosen));
        if (is_finite(g, all.without(removed)).finite) {
          found.push_back(mask);
          out.push_back(std::move(removed));
        }
      }
      // Next k-combination of {0..n-1} in lexicographic order.
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!any_open) break;
  }
  return out;
}

std::vector<Candidate> candidate_protocols(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob,
                                           const OptimizerOptions& opts) {
  const Protocol all = cfp(g);
  std::vector<Candidate> out;
  for (auto& removed : minimal_removal_sets(g, opts)) {
    Polynomial poly = rho_A(g, all.without(removed), prob, opts.scan);
    out.push_back({std::move(removed), std::move(poly)});
  }
  std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) { return x.removed < y.removed; });
  return out;
}

PointOptimum rho_hat_at(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob, const Rational& p0,
                        const OptimizerOptions& opts) {
  auto candidates = candidate_protocols(g, prob, opts);
  PointOptimum best;
  bool first = true;
  for (auto& c : candidates) {
    Rational v = c.rho(p0);
    if (first || v > best.value) {
      best = {v, c.rho, c.removed};
      first = false;
    }
  }
  return best;
}

namespace {

// Finiteness of arbitrary sub-protocols of A*, with protocols encoded as bit
// masks over the instructions of A*.
class MaskFiniteness {
 public:
  MaskFiniteness(const TwoTerminalGraph& g, const Protocol& all) : n_states_(2 * g.edge_count()) {
    auto state = [&](VertexId u, VertexId v) {
      EdgeId e = *g.edge_id(u, v);
      return 2 * e + (u < v ? 0U : 1U);
    };
    for (std::uint32_t x = 0; x < n_states_; ++x) {
      const Edge& e = g.edge(x / 2);
      VertexId from = x % 2 == 0 ? e.a : e.b;
      VertexId to = x % 2 == 0 ? e.b : e.a;
      if (from == g.s()) initial_ |= std::uint64_t{1} << x;
      if (to == g.r()) accepting_ |= std::uint64_t{1} << x;
    }
    for (const auto& x : all) {
      from_.push_back(state(x.u, x.v));
      to_.push_back(state(x.v, x.w));
    }
  }

  bool finite(std::uint32_t protocol) const {
    std::uint64_t succ[64] = {};
    std::uint64_t pred[64] = {};
    for (std::uint32_t m = protocol; m; m &= m - 1) {
      auto i = static_cast<unsigned>(std::countr_zero(m));
      succ[from_[i]] |= std::uint64_t{1} << to_[i];
      pred[to_[i]] |= std::uint64_t{1} << from_[i];
    }
    auto closure = [&](std::uint64_t seed, const std::uint64_t* adj) {
      std::uint64_t seen = seed, frontier = seed;
      while (frontier) {
        std::uint64_t next = 0;
        for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
        frontier = next & ~seen;
        seen |= frontier;
      }
      return seen;
    };
    const std::uint64_t live = closure(initial_, succ) & closure(accepting_, pred);
    // Kahn: repeatedly strip live states without live predecessors.
    std::uint64_t remaining = live;
    bool progress = true;
    while (remaining && progress) {
      progress = false;
      for (std::uint64_t f = remaining; f; f &= f - 1) {
        auto x = static_cast<unsigned>(std::countr_zero(f));
        if ((pred[x] & remaining) == 0) {
          remaining &= ~(std::uint64_t{1} << x);
          progress = true;
        }
      }
    }
    return remaining == 0;
  }

 private:
  std::uint32_t n_states_;
  std::uint64_t initial_ = 0;
  std::uint64_t accepting_ = 0;
  std::vector<std::uint32_t> from_;
  std::vector<std::uint32_t> to_;
};

}  // namespace

Rational brute_force_rho_hat(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob, const Rational& p0,
                             const ScanOptions& opts) {
  check_scan_size(g, opts);
  const Protocol all = cfp(g);
  const std::size_t n = all.size();
  if (n > 22) throw Error(ErrorCode::GuardExceeded, "brute force is limited to |A*| <= 22");
  MaskFiniteness checker(g, all);
  const std::uint32_t total = std::uint32_t{1} << n;
  std::vector<bool> finite(total);
  for (std::uint32_t a = 0; a < total; ++a) finite[a] = checker.finite(a);

  const auto& xs = all.instructions();
  Rational best = -1;
  for (std::uint32_t a = 0; a < total; ++a) {
    if (!finite[a]) continue;
    bool maximal = true;
    for (std::uint32_t i = 0; i < n && maximal; ++i)
      if (!(a >> i & 1U) && finite[a | (std::uint32_t{1} << i)]) maximal = false;
    // rho_A is monotone in A, so only maximal finite protocols can win.
    if (!maximal) continue;
    std::vector<Instruction> chosen;
    for (std::uint32_t i = 0; i < n; ++i)
      if (a >> i & 1U) chosen.push_back(xs[i]);
    Rational v = rho_A(g, Protocol(g, std::move(chosen)), prob, opts)(p0);
    if (v > best) best = v;
  }
  return best;
}

namespace {

AlgebraicNumber exact_point(const Rational& x) {
  return {Polynomial{Polynomial::variable() - Polynomial::constant(x)}, x, x};
}

// Rational strictly between two distinct sorted algebraic numbers.
Rational separate(AlgebraicNumber& a, AlgebraicNumber& b) {
  while (!(a.hi < b.lo)) {
    if (!a.is_rational() && (b.is_rational() || a.width() >= b.width()))
      a.bisect();
    else
      b.bisect();
  }
  return (a.hi + b.lo) / 2;
}

}  // namespace

PiecewiseReliability upper_envelope(const std::vector<Candidate>& candidates) {
  if (candidates.empty()) throw Error(ErrorCode::InvalidArgument, "envelope of no candidates");
  std::vector<Candidate> distinct;
  for (const auto& c : candidates) {
    bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const Candidate& d) { return d.rho == c.rho; });
    if (!seen) distinct.push_back(c);
  }
  PiecewiseReliability out;
  if (distinct.size() == 1) {
    out.pieces.push_back({distinct[0].rho, distinct[0].removed});
    return out;
  }

  std::vector<AlgebraicNumber> roots;
  for (std::size_t i = 0; i < distinct.size(); ++i)
    for (std::size_t j = i + 1; j < distinct.size(); ++j)
      for (auto& r : roots_in_unit_interval(distinct[i].rho - distinct[j].rho)) roots.push_back(r.root);
  std::sort(roots.begin(), roots.end(), [](AlgebraicNumber a, AlgebraicNumber b) { return compare(a, b) < 0; });
  std::vector<AlgebraicNumber> unique_roots;
  for (auto& r : roots)
    if (unique_roots.empty() || !equal(unique_roots.back(), r)) unique_roots.push_back(r);

  // One rational sample inside each gap between consecutive roots.
  std::vector<Rational> samples;
  if (unique_roots.empty()) {
    samples.push_back(Rational(1, 2));
  } else {
    AlgebraicNumber zero = exact_point(0), one = exact_point(1);
    samples.push_back(separate(zero, unique_roots.front()));
    for (std::size_t i = 0; i + 1 < unique_roots.size(); ++i)
      samples.push_back(separate(unique_roots[i], unique_roots[i + 1]));
    samples.push_back(separate(unique_roots.back(), one));
  }

  std::vector<std::size_t> winner;
  for (const auto& x : samples) {
    std::size_t best = 0;
    Rational best_value = distinct[0].rho(x);
    for (std::size_t i = 1; i < distinct.size(); ++i) {
      Rational v = distinct[i].rho(x);
      if (v > best_value) {
        best = i;
        best_value = v;
      }
    }
    winner.push_back(best);
  }

  out.pieces.push_back({distinct[winner[0]].rho, distinct[winner[0]].removed});
  for (std::size_t i = 1; i < winner.size(); ++i) {
    if (winner[i] == winner[i - 1]) continue;
    Polynomial diff = distinct[winner[i]].rho - distinct[winner[i - 1]].rho;
    int order = multiplicity_at(diff, unique_roots[i - 1]);
    if (order < 1) throw Error(ErrorCode::InvalidArgument, "envelope pieces disagree at a switch point");
    out.breakpoints.push_back({unique_roots[i - 1], order});
    out.pieces.push_back({distinct[winner[i]].rho, distinct[winner[i]].removed});
  }
  return out;
}

PiecewiseReliability rho_hat_piecewise(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob,
                                       const OptimizerOptions& opts) {
  return upper_envelope(candidate_protocols(g, prob, opts));
}

PiecewiseReliability min_discrepancy(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob,
                                     const OptimizerOptions& opts) {
  PiecewiseReliability pw = rho_hat_piecewise(g, prob, opts);
  const Polynomial total = rho(g, prob, opts.scan);
  for (auto& piece : pw.pieces) piece.poly = total - piece.poly;
  return pw;
}

bool breakpoint_free_check(PiecewiseReliability& pw, std::size_t edge_count, long a, long b) {
  if (b <= 0 || a < 0 || a > b) throw Error(ErrorCode::InvalidArgument, "need 0 <= a <= b and b > 0");
  Rational center(a, b);
  center.canonicalize();
  mpz_class denom = 1;
  for (std::size_t i = 0; i < edge_count; ++i) denom *= 3 * b;
  const Rational radius(mpz_class(1), denom);
  AlgebraicNumber lo = exact_point(center - radius);
  AlgebraicNumber hi = exact_point(center + radius);
  AlgebraicNumber mid = exact_point(center);
  for (auto& bp : pw.breakpoints) {
    if (compare(bp.point, lo) > 0 && compare(bp.point, hi) < 0 && compare(bp.point, mid) != 0) return false;
  }
  return true;
}

bool breakpoint_free_check(const TwoTerminalGraph& g, long a, long b, const OptimizerOptions& opts) {
  auto pw = rho_hat_piecewise(g, opts);
  return breakpoint_free_check(pw, g.edge_count(), a, b);
}

Protocol optimal_protocol(const TwoTerminalGraph& g, const Protocol& removed) {
  const Protocol all = cfp(g);
  require_subset_of_cfp(removed, all);
  return spfp_reduce(g, all.without(removed));
}

}  // namespace relayopt
