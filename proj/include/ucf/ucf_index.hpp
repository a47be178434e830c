#ifndef UCF_UCF_INDEX_HPP
#define UCF_UCF_INDEX_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ucf/decomposition.hpp"
#include "ucf/graph.hpp"

namespace ucf {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct EtaNode {
  double threshold = 0.0;
  std::vector<VertexId> vertices;  // ascending
  NodeId parent = kNoNode;
  std::vector<NodeId> children;    // ascending
};

// Connected (k, eta)-cores, each component ascending, components ordered by
// their smallest vertex.
struct CoreResult {
  int k = 0;
  double eta = 0.0;
  std::vector<std::vector<VertexId>> components;
};

// Tree of threshold-labelled vertex groups for one k. A node's threshold is
// strictly above its parent's; the vertices of the subtree under any node
// with threshold >= eta form one connected (k, eta)-core.
class EtaTree {
 public:
  EtaTree() = default;

  // Validates structure and rebuilds children and lookup tables. `nodes`
  // children fields are ignored. Throws DataError on inconsistent input.
  EtaTree(int k, std::vector<EtaNode> nodes, std::size_t vertex_count);

  int k() const noexcept { return k_; }
  const std::vector<EtaNode>& nodes() const noexcept { return nodes_; }
  const std::vector<NodeId>& roots() const noexcept { return roots_; }
  NodeId node_of(VertexId u) const noexcept {
    return u < vertex_to_node_.size() ? vertex_to_node_[u] : kNoNode;
  }
  std::size_t vertex_total() const noexcept { return vertex_total_; }

  // Visits only nodes with threshold >= eta, so the cost is linear in the
  // output size.
  std::vector<std::vector<VertexId>> components(double eta) const;

 private:
  int k_ = 0;
  std::vector<EtaNode> nodes_;
  std::vector<NodeId> roots_;
  std::vector<NodeId> by_threshold_;  // threshold descending
  std::vector<NodeId> vertex_to_node_;
  std::size_t vertex_total_ = 0;
};

// Builds the tree from one deletion stack by replaying it from the top
// (highest threshold) with a union-find over already replayed vertices.
// Throws std::invalid_argument when the stack and thresholds disagree in
// length or the thresholds decrease along the stack.
EtaTree build_eta_tree(int k, std::span<const VertexId> order, std::span<const double> thresholds,
                       const UncertainGraph& g);

struct UcfIndex {
  std::string algorithm;  // "ec" marks an index built with division updates
  std::uint64_t fingerprint = 0;
  std::vector<std::string> labels;
  std::vector<EtaTree> trees;  // trees[k - 1]

  std::uint32_t k_max() const noexcept { return static_cast<std::uint32_t>(trees.size()); }
};

UcfIndex build_index(const Decomposition& d, const UncertainGraph& g);

// Components of every (k, eta)-core; empty when k is outside [1, k_max].
CoreResult query(const UcfIndex& index, int k, double eta);

// Line-oriented text format:
//   UCF 1 / kmax / fingerprint / algo / vertices / labels header lines,
//   `tree k=<k>` and `node <id> parent <pid|-> thres <t> verts <ids...>`
//   records, and a trailing `checksum <hex>` over everything before it.
std::string serialize(const UcfIndex& index);
// Throws ParseError on version or checksum mismatch and malformed records.
UcfIndex deserialize(std::string_view text);

UcfIndex load_index(const std::string& path);
void save_index(const std::string& path, const UcfIndex& index);

}  // namespace ucf

#endif  // UCF_UCF_INDEX_HPP
