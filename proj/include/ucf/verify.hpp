#ifndef UCF_VERIFY_HPP
#define UCF_VERIFY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "ucf/graph.hpp"
#include "ucf/ucf_index.hpp"

namespace ucf {

struct VerifyReport {
  bool pass = true;
  std::string failure;  // first counterexample
  std::size_t checks = 0;
};

// Graphs beyond these limits are rejected by verify_graph with DataError.
inline constexpr std::size_t kVerifyMaxVertices = 2000;
inline constexpr std::size_t kVerifyMaxDegree = 20;

// eta values worth probing for one tree: every distinct threshold, each
// threshold +/- 1e-9, plus 0 and 1. Sorted, deduplicated.
std::vector<double> probe_etas(const EtaTree& tree);

// Runs the property suite on a desk-scale graph: DP against world
// enumeration, bound sandwich, bc/op/opstar agreement, index queries against
// direct_core, and nesting in eta and k. When `index` is given its
// fingerprint must match the graph and its queries are checked too.
VerifyReport verify_graph(const UncertainGraph& g, const UcfIndex* index = nullptr);

}  // namespace ucf

#endif  // UCF_VERIFY_HPP
