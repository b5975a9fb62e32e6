#include "relayopt/reliability.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>

#include "relayopt/error.hpp"

namespace relayopt {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RELAYOPT_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

void check_scan_size(const TwoTerminalGraph& g, const ScanOptions& opts) {
  const std::size_t m = g.edge_count();
  if (m > opts.max_edges || m > kMaxScanEdges) {
    throw Error(ErrorCode::GuardExceeded,
                "subset scan over " + std::to_string(m) + " edges exceeds the limit of " +
                    std::to_string(std::min(opts.max_edges, kMaxScanEdges)));
  }
}

namespace {

// Duplicates each of the low 32 bits: bit e -> bits 2e and 2e+1.
std::uint64_t spread_pairs(EdgeMask x) {
  std::uint64_t v = x & 0xFFFFFFFFULL;
  v = (v | (v << 16)) & 0x0000FFFF0000FFFFULL;
  v = (v | (v << 8)) & 0x00FF00FF00FF00FFULL;
  v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0FULL;
  v = (v | (v << 2)) & 0x3333333333333333ULL;
  v = (v | (v << 1)) & 0x5555555555555555ULL;
  return v | (v << 1);
}

// Runs `body(lo, hi, slot)` over [0, total) split into contiguous blocks.
template <typename Body>
void parallel_blocks(std::uint64_t total, unsigned threads, Body body) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(1, total))));
  if (threads == 1) {
    body(0, total, 0U);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (total + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::uint64_t lo = std::min(total, chunk * t);
    std::uint64_t hi = std::min(total, lo + chunk);
    pool.emplace_back([=, &body] { body(lo, hi, t); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

WalkTester::WalkTester(const TwoTerminalGraph& g, const Protocol& a) {
  if (g.edge_count() > kMaxScanEdges) {
    throw Error(ErrorCode::GuardExceeded, "walk tester supports at most 32 edges");
  }
  StateGraph sg(g, a);
  succ_.assign(sg.size(), 0);
  for (StateId x = 0; x < sg.size(); ++x) {
    for (StateId y : sg.successors(x)) succ_[x] |= std::uint64_t{1} << y;
    if (sg.is_initial(x)) initial_ |= std::uint64_t{1} << x;
    if (sg.is_accepting(x)) accepting_ |= std::uint64_t{1} << x;
  }
}

bool WalkTester::admits(EdgeMask alive) const {
  const std::uint64_t live = spread_pairs(alive);
  std::uint64_t reach = initial_ & live;
  std::uint64_t frontier = reach;
  while (frontier) {
    if (frontier & accepting_) return true;
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f; f &= f - 1) next |= succ_[static_cast<unsigned>(std::countr_zero(f))];
    next &= live & ~reach;
    reach |= next;
    frontier = next;
  }
  return false;
}

bool subset_admits_walk(const TwoTerminalGraph& g, const Protocol& a, EdgeMask alive) {
  return WalkTester(g, a).admits(alive);
}

std::vector<std::uint64_t> count_by_size(const TwoTerminalGraph& g,
                                         const std::function<bool(EdgeMask)>& pred,
                                         const ScanOptions& opts) {
  check_scan_size(g, opts);
  const std::size_t m = g.edge_count();
  const unsigned threads = resolve_threads(opts.threads);
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(m + 1, 0));
  parallel_blocks(std::uint64_t{1} << m, threads, [&](std::uint64_t lo, std::uint64_t hi, unsigned t) {
    auto& counts = partial[t];
    for (std::uint64_t s = lo; s < hi; ++s)
      if (pred(s)) ++counts[static_cast<std::size_t>(std::popcount(s))];
  });
  std::vector<std::uint64_t> counts(m + 1, 0);
  for (const auto& p : partial)
    for (std::size_t i = 0; i <= m; ++i) counts[i] += p[i];
  return counts;
}

SurvivalSpectrum walk_spectrum(const TwoTerminalGraph& g, const Protocol& a, const ScanOptions& opts) {
  check_scan_size(g, opts);
  WalkTester tester(g, a);
  return {count_by_size(g, [&](EdgeMask s) { return tester.admits(s); }, opts), SpectrumFlavor::Walk};
}

namespace {

std::vector<EdgeMask> a_path_masks(const TwoTerminalGraph& g, const Protocol& a) {
  std::vector<EdgeMask> masks;
  for (const auto& path : a_paths(g, a)) masks.push_back(edges_of(g, path));
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  return masks;
}

bool contains_any(const std::vector<EdgeMask>& masks, EdgeMask s) {
  return std::any_of(masks.begin(), masks.end(), [s](EdgeMask m) { return (m & s) == m; });
}

}  // namespace

SurvivalSpectrum path_spectrum(const TwoTerminalGraph& g, const Protocol& a, const ScanOptions& opts) {
  check_scan_size(g, opts);
  auto masks = a_path_masks(g, a);
  return {count_by_size(g, [&](EdgeMask s) { return contains_any(masks, s); }, opts),
          SpectrumFlavor::Path};
}

Polynomial polynomial_from_spectrum(const SurvivalSpectrum& spectrum) {
  const std::size_t m = spectrum.counts.empty() ? 0 : spectrum.counts.size() - 1;
  const Polynomial p = Polynomial::variable();
  const Polynomial q = Polynomial::one_minus_variable();
  Polynomial total;
  for (std::size_t i = 0; i <= m; ++i) {
    if (spectrum.counts[i] == 0) continue;
    Rational c{mpz_class(std::to_string(spectrum.counts[i]))};
    total += c * (p.pow(static_cast<unsigned>(i)) * q.pow(static_cast<unsigned>(m - i)));
  }
  return total;
}

Polynomial survival_probability(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob,
                                const std::function<bool(EdgeMask)>& pred, const ScanOptions& opts) {
  check_scan_size(g, opts);
  const std::size_t m = g.edge_count();
  if (prob.size() != m) throw Error(ErrorCode::InvalidProbability, "probability map size mismatch");

  // Pool edges by probability polynomial.
  std::vector<Polynomial> pool_poly;
  std::vector<EdgeMask> pool_mask;
  for (EdgeId e = 0; e < m; ++e) {
    auto it = std::find(pool_poly.begin(), pool_poly.end(), prob[e]);
    std::size_t c = static_cast<std::size_t>(it - pool_poly.begin());
    if (it == pool_poly.end()) {
      pool_poly.push_back(prob[e]);
      pool_mask.push_back(0);
    }
    pool_mask[c] |= EdgeMask{1} << e;
  }
  const std::size_t pools = pool_poly.size();
  std::vector<std::size_t> stride(pools + 1, 1);
  for (std::size_t c = 0; c < pools; ++c)
    stride[c + 1] = stride[c] * (static_cast<std::size_t>(std::popcount(pool_mask[c])) + 1);
  const std::size_t cells = stride[pools];

  const unsigned threads = resolve_threads(opts.threads);
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(cells, 0));
  parallel_blocks(std::uint64_t{1} << m, threads, [&](std::uint64_t lo, std::uint64_t hi, unsigned t) {
    auto& counts = partial[t];
    for (std::uint64_t s = lo; s < hi; ++s) {
      if (!pred(s)) continue;
      std::size_t cell = 0;
      for (std::size_t c = 0; c < pools; ++c)
        cell += stride[c] * static_cast<std::size_t>(std::popcount(s & pool_mask[c]));
      ++counts[cell];
    }
  });
  std::vector<std::uint64_t> counts(cells, 0);
  for (const auto& part : partial)
    for (std::size_t i = 0; i < cells; ++i) counts[i] += part[i];

  std::vector<std::vector<Polynomial>> up(pools), down(pools);
  for (std::size_t c = 0; c < pools; ++c) {
    const unsigned n = static_cast<unsigned>(std::popcount(pool_mask[c]));
    const Polynomial q = Polynomial::constant(1) - pool_poly[c];
    up[c].push_back(Polynomial::constant(1));
    down[c].push_back(Polynomial::constant(1));
    for (unsigned k = 1; k <= n; ++k) {
      up[c].push_back(up[c].back() * pool_poly[c]);
      down[c].push_back(down[c].back() * q);
    }
  }
  Polynomial total;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    if (counts[cell] == 0) continue;
    Polynomial term = Polynomial::constant(Rational(mpz_class(std::to_string(counts[cell]))));
    for (std::size_t c = 0; c < pools; ++c) {
      const std::size_t n = up[c].size() - 1;
      const std::size_t k = (cell / stride[c]) % (n + 1);
      term *= up[c][k];
      term *= down[c][n - k];
    }
    total += term;
  }
  return total;
}

Polynomial rho_A(const TwoTerminalGraph& g, const Protocol& a, const EdgeProbabilityMap& prob,
                 const ScanOptions& opts) {
  check_scan_size(g, opts);
  WalkTester tester(g, a);
  return survival_probability(g, prob, [&](EdgeMask s) { return tester.admits(s); }, opts);
}

Polynomial rho_prime_A(const TwoTerminalGraph& g, const Protocol& a, const EdgeProbabilityMap& prob,
                       const ScanOptions& opts) {
  check_scan_size(g, opts);
  auto masks = a_path_masks(g, a);
  return survival_probability(g, prob, [&](EdgeMask s) { return contains_any(masks, s); }, opts);
}

Polynomial rho_prime_inclusion_exclusion(const TwoTerminalGraph& g, const Protocol& a,
                                         const EdgeProbabilityMap& prob) {
  auto masks = a_path_masks(g, a);
  if (masks.size() > 20) {
    throw Error(ErrorCode::GuardExceeded, "inclusion-exclusion is limited to 20 paths");
  }
  // Collect signed multiplicities per union mask, then expand once per mask.
  std::map<EdgeMask, long long> weight;
  const std::size_t k = masks.size();
  for (std::uint64_t j = 1; j < (std::uint64_t{1} << k); ++j) {
    EdgeMask u = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (j >> i & 1U) u |= masks[i];
    weight[u] += (std::popcount(j) % 2 == 1) ? 1 : -1;
  }
  Polynomial total;
  for (const auto& [u, w] : weight) {
    if (w == 0) continue;
    Polynomial term = Polynomial::constant(Rational(static_cast<long>(w)));
    for (EdgeMask x = u; x; x &= x - 1) term *= prob[static_cast<EdgeId>(std::countr_zero(x))];
    total += term;
  }
  return total;
}

Polynomial rho(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob, const ScanOptions& opts) {
  return rho_A(g, cfp(g), prob, opts);
}

Polynomial rho_connectivity(const TwoTerminalGraph& g, const EdgeProbabilityMap& prob,
                            const ScanOptions& opts) {
  return survival_probability(g, prob, [&](EdgeMask s) { return g.terminals_connected(s); }, opts);
}

}  // namespace relayopt
