#ifndef UCF_GENERATORS_HPP
#define UCF_GENERATORS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ucf/graph.hpp"

namespace ucf {

// Edge probabilities are drawn uniformly from (lo, hi].
struct ProbabilityBand {
  double lo = 0.0;
  double hi = 1.0;
};

// Uniform random simple graph with exactly m edges. Vertices are labelled
// 0..n-1. Throws DataError when m exceeds n(n-1)/2 or the band is invalid.
UncertainGraph generate_gnm(std::size_t n, std::size_t m, std::uint64_t seed,
                            ProbabilityBand band = {});

// Preferential attachment: a seed clique on a+1 vertices, then each new vertex
// attaches to a = max(1, round(m / n)) distinct existing vertices.
UncertainGraph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed,
                           ProbabilityBand band = {});

// round(fraction * n) distinct vertex ids, ascending.
std::vector<VertexId> sample_vertices(std::size_t n, double fraction, std::uint64_t seed);

// Subgraph induced on a uniform vertex sample; isolated vertices are kept.
UncertainGraph sample_graph(const UncertainGraph& g, double fraction, std::uint64_t seed);

}  // namespace ucf

#endif  // UCF_GENERATORS_HPP
