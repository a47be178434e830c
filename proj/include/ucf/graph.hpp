#ifndef UCF_GRAPH_HPP
#define UCF_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace ucf {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

struct Edge {
  VertexId u;
  VertexId v;
  double p;
};

struct Neighbor {
  VertexId id;
  double p;
};

// Undirected simple graph with independent edge existence probabilities.
//
// Adjacency lists are sorted by probability non-increasing (ties by neighbor
// id). Deletion is soft: vertices carry an alive flag and a live-degree
// counter, so one loaded graph can be peeled repeatedly after reset().
// Mutation is single-threaded; a graph that is not being mutated can be read
// concurrently.
class UncertainGraph {
 public:
  UncertainGraph() = default;

  // Edges keep their input orientation and order. Throws DataError on
  // self-loops, duplicates, out-of-range ids or p outside (0, 1].
  UncertainGraph(std::size_t vertex_count, std::vector<Edge> edges,
                 std::vector<std::string> labels = {});

  std::size_t vertex_count() const noexcept { return alive_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  // Full adjacency of u, dead neighbors included.
  std::span<const Neighbor> neighbors(VertexId u) const noexcept {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }

  bool alive(VertexId u) const noexcept { return alive_[u] != 0; }
  // Number of alive neighbors.
  std::size_t degree(VertexId u) const noexcept { return live_degree_[u]; }
  std::size_t alive_count() const noexcept { return alive_count_; }

  const std::string& label(VertexId u) const noexcept { return labels_[u]; }
  std::span<const std::string> labels() const noexcept { return labels_; }

  // Appends the probabilities of u's alive incident edges, in adjacency order.
  void alive_incident_probs(VertexId u, std::vector<double>& out) const;

  // Marks u dead and returns its alive neighbors in adjacency order.
  std::vector<VertexId> delete_vertex(VertexId u);

  // Makes every vertex alive again.
  void reset();
  // Makes exactly the listed vertices alive.
  void retain(std::span<const VertexId> vertices);

  // 64-bit FNV-1a over the vertex count and the label-sorted edge list.
  std::uint64_t fingerprint() const;

  // Induced subgraph on `vertices` (ids remapped densely, labels kept).
  UncertainGraph induced(std::span<const VertexId> vertices) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<std::string> labels_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint32_t> live_degree_;
  std::size_t alive_count_ = 0;
};

struct LoadedGraph {
  UncertainGraph graph;
  std::size_t dropped_zero_edges = 0;
};

// Reads `u v p` lines. Vertex labels are arbitrary whitespace-free tokens and
// get dense ids in order of first appearance. Blank lines and lines starting
// with '#' are skipped; p = 0 edges are dropped and counted.
LoadedGraph parse_edge_list(std::istream& in);
LoadedGraph load_edge_list(const std::string& path);

// Writes the graph in the same format, probabilities at 17 significant digits.
void write_edge_list(std::ostream& out, const UncertainGraph& g);

// Core number of every alive vertex over the alive subgraph (0 for dead ones).
std::vector<std::uint32_t> core_numbers(const UncertainGraph& g);

// Maximal vertex set in which every vertex keeps >= k alive neighbors,
// ascending by id.
std::vector<VertexId> k_core(const UncertainGraph& g, std::uint32_t k);

std::uint32_t k_max(const UncertainGraph& g);

}  // namespace ucf

#endif  // UCF_GRAPH_HPP
