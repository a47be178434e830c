#ifndef UCF_DECOMPOSITION_HPP
#define UCF_DECOMPOSITION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ucf/detail/indexed_heap.hpp"
#include "ucf/graph.hpp"
#include "ucf/kprob.hpp"

namespace ucf {

// bc: recompute every affected neighbor by DP.
// op: lazy refreshing with bounds.
// opstar: lazy refreshing plus layer-by-layer refinement from the k+1 result.
// ec: division-based updates; known to be numerically wrong, kept for errstat.
enum class Algorithm { kBaseline, kLazy, kOptiUcf, kEc };

std::string_view algorithm_name(Algorithm algo);
std::optional<Algorithm> parse_algorithm(std::string_view name);

inline constexpr double kNoThreshold = -1.0;
// k-probability of the virtual vertex returned when no definite vertex exists.
inline constexpr double kSentinelKProb = 2.0;

struct PeelOptions {
  BoundMode bounds = BoundMode::kBoth;
  // Shadow-DP audit: before each deletion, recompute every vertex still
  // waiting in the indefinite heap and count those whose true k-probability is
  // below the vertex being deleted. Quadratic; small graphs only.
  bool audit = false;
};

struct PeelStats {
  std::size_t refreshes = 0;
  std::size_t deletions = 0;
  double wall_ms = 0.0;
  std::size_t audit_checks = 0;
  std::size_t audit_violations = 0;
};

// One k iteration: the deletion stack (bottom first) with aligned thresholds.
struct PeelResult {
  int k = 0;
  std::vector<VertexId> order;
  std::vector<double> thresholds;
  // First k-probability computed for each vertex in this iteration, aligned
  // with `order`; NaN when the vertex was never refreshed.
  std::vector<double> first_kprob;
  PeelStats stats;
};

// PT(k), the layers P(k, 1..l) and the ascending distinct thresholds of the
// k+1 iteration.
struct VertexPartition {
  std::vector<VertexId> top;
  std::vector<std::vector<VertexId>> layers;
  std::vector<double> levels;
};

// `prev` is the completed k+1 iteration, or nullptr at k = k_max. Its
// thresholds are non-decreasing along the stack, so layers come out of a
// single pass.
VertexPartition partition_vertices(std::span<const VertexId> core_vertices, const PeelResult* prev,
                                   std::size_t vertex_count);

// A vertex and its current k-probability. Ordered by (kprob, id).
struct Candidate {
  VertexId id = kNoVertex;
  double kprob = kSentinelKProb;

  bool is_sentinel() const noexcept { return id == kNoVertex; }
  friend bool operator<(const Candidate& a, const Candidate& b) noexcept {
    return a.kprob != b.kprob ? a.kprob < b.kprob : a.id < b.id;
  }
};

// Working state of one lazy-refreshing peel at a fixed k.
//
// Every alive vertex of the k-core is in exactly one place: the definite set
// (fresh k-probability), the indefinite heap D (keyed by a lower bound), or a
// layer not yet added. Both priority structures update keys in place.
class PeelState {
 public:
  PeelState(UncertainGraph& g, int k, VertexPartition partition, PeelOptions options);

  // V_w <- PT(k), each refreshed.
  void init_working_set();

  // argmin over definite vertices of V_w, or the sentinel.
  Candidate min_definite();
  // Smallest lower bound in D, if any.
  std::optional<double> min_indefinite_lb();

  // Pops D while its smallest lower bound is below p_nxt's k-probability,
  // refreshing each popped vertex; returns the smallest candidate seen.
  Candidate refresh_indefinites(Candidate p_nxt);

  // Adds the next layer to V_w; returns the smaller of p_crt and the layer's
  // minimum. Throws std::logic_error when no layer is left.
  Candidate add_layer(Candidate p_crt);

  // Deletes p_crt and settles its neighbors in V_w: those dropping below
  // degree k or with UB <= cur_thres get key 0, the rest go to D by LB.
  void remove(VertexId p_crt, double cur_thres);

  std::size_t layer_cursor() const noexcept { return cursor_; }
  std::size_t layer_count() const noexcept { return partition_.layers.size(); }
  // eta_{i+1}; requires layer_cursor() < layer_count().
  double next_level() const { return partition_.levels.at(cursor_); }
  bool working_set_empty() const noexcept { return working_size_ == 0; }
  bool in_working_set(VertexId u) const noexcept;
  bool is_indefinite(VertexId u) const noexcept;

  // Audit hook: true k-probabilities of all vertices in D versus `p_crt`.
  void audit_indefinites(const Candidate& p_crt);

  const PeelStats& stats() const noexcept { return stats_; }
  PeelStats& stats() noexcept { return stats_; }
  // First refresh value per vertex (NaN if none yet).
  double first_kprob(VertexId u) const noexcept { return first_kprob_[u]; }

 private:
  enum class Status : std::uint8_t { kOutside, kDefinite, kIndefinite, kDeleted };

  double refresh(VertexId u);
  IncidentSummary summarize(VertexId u) const;
  void make_definite(VertexId u, double kprob);
  void make_indefinite(VertexId u, double lb);

  UncertainGraph& g_;
  int k_;
  VertexPartition partition_;
  PeelOptions options_;
  PeelStats stats_;
  std::size_t cursor_ = 0;
  std::size_t working_size_ = 0;
  std::vector<Status> status_;
  std::vector<double> kprob_;
  std::vector<double> first_kprob_;
  detail::IndexedMinHeap definite_;
  detail::IndexedMinHeap indefinite_;
  std::vector<double> probs_;
  std::vector<double> scratch_;
};

// The peel functions restrict g to its k-core first; g should be fully alive
// (or already restricted to a superset of the k-core) on entry.
PeelResult peel_baseline(UncertainGraph& g, int k);
PeelResult peel_lazy(UncertainGraph& g, int k, PeelOptions options = {});
PeelResult peel_optiucf(UncertainGraph& g, int k, const PeelResult* prev, PeelOptions options = {});
// Throws DataError if the k-core holds an edge with p = 1.
PeelResult peel_ec(UncertainGraph& g, int k);

// All k from k_max down to 1. levels[k - 1] holds the k iteration.
struct Decomposition {
  Algorithm algorithm = Algorithm::kOptiUcf;
  std::uint32_t k_max = 0;
  std::vector<PeelResult> levels;

  const PeelResult& at(int k) const { return levels.at(static_cast<std::size_t>(k - 1)); }
};

Decomposition decompose(UncertainGraph& g, Algorithm algo, PeelOptions options = {});

// Per-vertex thresholds of one iteration, kNoThreshold outside the k-core.
std::vector<double> dense_thresholds(const PeelResult& run, std::size_t vertex_count);

// Number of DP k-probability computations in a run.
inline std::size_t count_refreshes(const PeelResult& run) { return run.stats.refreshes; }
std::size_t count_refreshes(const Decomposition& d);

// `k=<k> algo=<name> refreshes=<n> deletions=<n> wall_ms=<t>`
std::string instrumentation_line(const PeelResult& run, Algorithm algo);

}  // namespace ucf

#endif  // UCF_DECOMPOSITION_HPP
