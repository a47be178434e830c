#ifndef UCF_ORACLE_HPP
#define UCF_ORACLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ucf/graph.hpp"
#include "ucf/ucf_index.hpp"

namespace ucf {

// Ground truth by brute force. World enumeration is independent of the DP
// engine; direct_core uses the DP only as a per-vertex evaluator and never
// touches bounds, heaps or the index.

inline constexpr std::size_t kMaxEnumeratedEdges = 20;

// One possible world over a list of independent edges.
struct WorldEnumeration {
  std::uint32_t edge_subset_mask = 0;
  double accumulated_probability = 0.0;
};

// Product of p over present edges and (1 - p) over absent ones.
double world_probability(std::span<const double> probs, std::uint32_t mask);

// All 2^d worlds. Throws std::invalid_argument beyond kMaxEnumeratedEdges.
std::vector<WorldEnumeration> enumerate_worlds(std::span<const double> probs);

// Sum of world probabilities with at least k present edges.
double enumerate_kprob(std::span<const double> incident_probs, int k);

enum class DeletionOrder { kFifo, kLifo };

// Peels every vertex whose degree is below k or whose freshly recomputed
// k-probability is below eta until nothing changes, then splits the survivors
// into connected components. Works on its own copy of g, fully alive.
CoreResult direct_core(const UncertainGraph& g, int k, double eta,
                       DeletionOrder order = DeletionOrder::kFifo);

}  // namespace ucf

#endif  // UCF_ORACLE_HPP
