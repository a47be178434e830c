#ifndef UCF_TESTS_SUPPORT_HPP
#define UCF_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ucf/graph.hpp"

namespace ucf::testing {

inline UncertainGraph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in).graph;
}

// v1 - v2 - v3 with p(v1 v2) = 0.9, p(v2 v3) = 0.8; ids v1=0, v2=1, v3=2.
inline UncertainGraph path_fixture() { return parse("v1 v2 0.9\nv2 v3 0.8\n"); }

inline UncertainGraph triangle(double p = 0.5) {
  return UncertainGraph(3, {{0, 1, p}, {1, 2, p}, {0, 2, p}});
}

// Vertices 0..3 form a clique, 4 hangs off 3.
inline UncertainGraph clique4_pendant() {
  return UncertainGraph(5, {{0, 1, 0.9}, {0, 2, 0.8}, {0, 3, 0.7}, {1, 2, 0.6},
                            {1, 3, 0.5}, {2, 3, 0.4}, {3, 4, 0.3}});
}

enum class ProbStyle {
  kUniform,   // (0, 1]
  kCoarse,    // a handful of repeated values, to provoke ties
  kHigh,      // [0.9, 1)
};

inline double draw_prob(std::mt19937_64& rng, ProbStyle style) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (style) {
    case ProbStyle::kUniform:
      return 1.0 - unit(rng);
    case ProbStyle::kCoarse: {
      static constexpr double kLevels[] = {0.25, 0.5, 0.75, 1.0};
      return kLevels[rng() % 4];
    }
    case ProbStyle::kHigh:
      return 0.9 + 0.0999 * unit(rng);
  }
  return 0.5;
}

// Random simple graph with n in [2, max_n] and up to max_m edges.
inline UncertainGraph random_graph(std::mt19937_64& rng, std::size_t max_n, std::size_t max_m,
                                   ProbStyle style = ProbStyle::kUniform) {
  std::size_t n = 2 + rng() % (max_n - 1);
  std::size_t cap = n * (n - 1) / 2;
  std::size_t m = rng() % (std::min(max_m, cap) + 1);
  std::vector<std::pair<VertexId, VertexId>> all;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) all.emplace_back(u, v);
  }
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) edges.push_back({all[i].first, all[i].second, draw_prob(rng, style)});
  return UncertainGraph(n, std::move(edges));
}

inline std::vector<double> random_probs(std::mt19937_64& rng, std::size_t len,
                                        ProbStyle style = ProbStyle::kUniform) {
  std::vector<double> p(len);
  for (auto& x : p) x = draw_prob(rng, style);
  return p;
}

}  // namespace ucf::testing

#endif  // UCF_TESTS_SUPPORT_HPP
