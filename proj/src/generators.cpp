#include "ucf/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>

#include "ucf/error.hpp"

namespace ucf {

namespace {

// std::mt19937_64 output is fixed by the standard; the std distributions are
// not, so draws are derived from raw engine output.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

double draw_probability(std::mt19937_64& rng, const ProbabilityBand& band) {
  return band.hi - (band.hi - band.lo) * unit_interval(rng);
}

void check_band(const ProbabilityBand& band) {
  if (!(band.lo >= 0.0 && band.hi <= 1.0 && band.lo < band.hi)) {
    throw DataError("probability band must satisfy 0 <= lo < hi <= 1");
  }
}

std::uint64_t pair_key(std::uint64_t u, std::uint64_t v) { return (u << 32) | v; }

}  // namespace

UncertainGraph generate_gnm(std::size_t n, std::size_t m, std::uint64_t seed, ProbabilityBand band) {
  check_band(band);
  const std::uint64_t capacity = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > capacity) {
    throw DataError("m = " + std::to_string(m) + " exceeds simple-graph capacity " +
                    std::to_string(capacity));
  }
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(m);
  if (m > capacity / 2) {
    std::vector<std::pair<VertexId, VertexId>> all;
    all.reserve(capacity);
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) all.emplace_back(u, v);
    }
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t j = i + uniform_index(rng, all.size() - i);
      std::swap(all[i], all[j]);
      edges.push_back({all[i].first, all[i].second, draw_probability(rng, band)});
    }
  } else {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(m * 2);
    while (edges.size() < m) {
      auto u = static_cast<VertexId>(uniform_index(rng, n));
      auto v = static_cast<VertexId>(uniform_index(rng, n));
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      if (!seen.insert(pair_key(u, v)).second) continue;
      edges.push_back({u, v, draw_probability(rng, band)});
    }
  }
  return UncertainGraph(n, std::move(edges));
}

UncertainGraph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed, ProbabilityBand band) {
  check_band(band);
  const std::size_t attach =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(n == 0 ? 0.0 : double(m) / double(n))));
  if (attach >= n) throw DataError("ba: attachment count must be below n");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  std::vector<VertexId> endpoints;
  for (VertexId u = 0; u <= attach; ++u) {
    for (VertexId v = u + 1; v <= attach; ++v) {
      edges.push_back({u, v, draw_probability(rng, band)});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<VertexId> targets;
  for (auto u = static_cast<VertexId>(attach + 1); u < n; ++u) {
    targets.clear();
    while (targets.size() < attach) {
      VertexId t = endpoints[uniform_index(rng, endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (VertexId t : targets) {
      edges.push_back({t, u, draw_probability(rng, band)});
      endpoints.push_back(t);
      endpoints.push_back(u);
    }
  }
  return UncertainGraph(n, std::move(edges));
}

std::vector<VertexId> sample_vertices(std::size_t n, double fraction, std::uint64_t seed) {
  fraction = std::clamp(fraction, 0.0, 1.0);
  const auto take = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < take; ++i) {
    std::size_t j = i + uniform_index(rng, n - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(take);
  std::sort(ids.begin(), ids.end());
  return ids;
}

UncertainGraph sample_graph(const UncertainGraph& g, double fraction, std::uint64_t seed) {
  auto keep = sample_vertices(g.vertex_count(), fraction, seed);
  return g.induced(keep);
}

}  // namespace ucf
