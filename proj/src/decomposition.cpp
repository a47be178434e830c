#include "ucf/decomposition.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "ucf/error.hpp"

namespace ucf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void record(PeelResult& r, VertexId u, double threshold, double first) {
  r.order.push_back(u);
  r.thresholds.push_back(threshold);
  r.first_kprob.push_back(first);
}

}  // namespace

std::string_view algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::kBaseline:
      return "bc";
    case Algorithm::kLazy:
      return "op";
    case Algorithm::kOptiUcf:
      return "opstar";
    case Algorithm::kEc:
      return "ec";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::kBaseline, Algorithm::kLazy, Algorithm::kOptiUcf, Algorithm::kEc}) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

VertexPartition partition_vertices(std::span<const VertexId> core_vertices, const PeelResult* prev,
                                   std::size_t vertex_count) {
  VertexPartition part;
  std::vector<std::uint8_t> in_core(vertex_count, 0);
  for (VertexId u : core_vertices) in_core[u] = 1;
  if (prev != nullptr) {
    for (std::size_t i = 0; i < prev->order.size(); ++i) {
      VertexId u = prev->order[i];
      if (!in_core[u]) continue;
      double t = prev->thresholds[i];
      // Thresholds along a stack never decrease, so a change opens a new layer.
      if (part.levels.empty() || part.levels.back() != t) {
        part.levels.push_back(t);
        part.layers.emplace_back();
      }
      part.layers.back().push_back(u);
      in_core[u] = 2;
    }
  }
  for (VertexId u : core_vertices) {
    if (in_core[u] == 1) part.top.push_back(u);
  }
  return part;
}

PeelState::PeelState(UncertainGraph& g, int k, VertexPartition partition, PeelOptions options)
    : g_(g),
      k_(k),
      partition_(std::move(partition)),
      options_(options),
      status_(g.vertex_count(), Status::kOutside),
      kprob_(g.vertex_count(), 0.0),
      first_kprob_(g.vertex_count(), kNaN),
      definite_(g.vertex_count()),
      indefinite_(g.vertex_count()) {}

double PeelState::refresh(VertexId u) {
  probs_.clear();
  g_.alive_incident_probs(u, probs_);
  double kp = kprob_value(probs_, k_, scratch_);
  ++stats_.refreshes;
  if (std::isnan(first_kprob_[u])) first_kprob_[u] = kp;
  return kp;
}

void PeelState::make_definite(VertexId u, double kprob) {
  if (status_[u] == Status::kIndefinite) indefinite_.erase(u);
  status_[u] = Status::kDefinite;
  kprob_[u] = kprob;
  definite_.set(u, kprob);
}

void PeelState::make_indefinite(VertexId u, double lb) {
  if (status_[u] == Status::kDefinite) definite_.erase(u);
  status_[u] = Status::kIndefinite;
  indefinite_.set(u, lb);
}

void PeelState::init_working_set() {
  for (VertexId u : partition_.top) {
    make_definite(u, refresh(u));
    ++working_size_;
  }
}

Candidate PeelState::min_definite() {
  if (definite_.empty()) return {};
  return {definite_.top().id, definite_.top().key};
}

std::optional<double> PeelState::min_indefinite_lb() {
  if (indefinite_.empty()) return std::nullopt;
  return indefinite_.top().key;
}

Candidate PeelState::refresh_indefinites(Candidate p_nxt) {
  while (!indefinite_.empty()) {
    const auto top = indefinite_.top();
    if (top.key >= p_nxt.kprob) break;
    double kp = refresh(top.id);
    make_definite(top.id, kp);
    Candidate c{top.id, kp};
    if (c < p_nxt) p_nxt = c;
  }
  return p_nxt;
}

Candidate PeelState::add_layer(Candidate p_crt) {
  if (cursor_ >= partition_.layers.size()) throw std::logic_error("add_layer: no layer left");
  for (VertexId u : partition_.layers[cursor_]) {
    if (!g_.alive(u)) continue;
    double kp = refresh(u);
    make_definite(u, kp);
    ++working_size_;
    Candidate c{u, kp};
    if (c < p_crt) p_crt = c;
  }
  ++cursor_;
  return p_crt;
}

void PeelState::remove(VertexId p_crt, double cur_thres) {
  if (!in_working_set(p_crt)) throw std::logic_error("remove: vertex not in working set");
  definite_.erase(p_crt);
  indefinite_.erase(p_crt);
  status_[p_crt] = Status::kDeleted;
  --working_size_;
  ++stats_.deletions;
  for (VertexId u : g_.delete_vertex(p_crt)) {
    if (!in_working_set(u)) continue;
    if (g_.degree(u) < static_cast<std::size_t>(k_)) {
      make_definite(u, 0.0);
      continue;
    }
    IncidentSummary s = summarize(u);
    double ub = upper_bound(s, k_);
    if (ub <= cur_thres) {
      make_definite(u, 0.0);
    } else {
      make_indefinite(u, std::min(lower_bound(s, k_, options_.bounds), ub));
    }
  }
}

IncidentSummary PeelState::summarize(VertexId u) const {
  // Adjacency is sorted by probability, so only the first k alive entries and
  // the last alive one matter.
  IncidentSummary s;
  s.degree = g_.degree(u);
  auto nbs = g_.neighbors(u);
  std::size_t taken = 0;
  double prod = 1.0;
  for (std::size_t i = 0; i < nbs.size() && taken < static_cast<std::size_t>(k_); ++i) {
    if (!g_.alive(nbs[i].id)) continue;
    if (taken == 0) s.p_max = nbs[i].p;
    prod *= nbs[i].p;
    ++taken;
  }
  s.top_k_product = taken == static_cast<std::size_t>(k_) ? prod : 0.0;
  for (std::size_t i = nbs.size(); i-- > 0;) {
    if (g_.alive(nbs[i].id)) {
      s.p_min = nbs[i].p;
      break;
    }
  }
  return s;
}

bool PeelState::in_working_set(VertexId u) const noexcept {
  return status_[u] == Status::kDefinite || status_[u] == Status::kIndefinite;
}

bool PeelState::is_indefinite(VertexId u) const noexcept {
  return status_[u] == Status::kIndefinite;
}

void PeelState::audit_indefinites(const Candidate& p_crt) {
  std::vector<double> probs;
  std::vector<double> scratch;
  for (VertexId u = 0; u < status_.size(); ++u) {
    if (status_[u] != Status::kIndefinite) continue;
    probs.clear();
    g_.alive_incident_probs(u, probs);
    ++stats_.audit_checks;
    if (kprob_value(probs, k_, scratch) < p_crt.kprob - 1e-12) ++stats_.audit_violations;
  }
}

PeelResult peel_baseline(UncertainGraph& g, int k) {
  PeelResult r;
  r.k = k;
  auto core = k_core(g, static_cast<std::uint32_t>(k));
  g.retain(core);
  Stopwatch watch;

  const std::size_t n = g.vertex_count();
  detail::IndexedMinHeap heap(n);
  std::vector<double> kprob(n, 0.0);
  std::vector<double> first(n, kNaN);
  std::vector<double> probs;
  std::vector<double> scratch;

  auto refresh = [&](VertexId u) {
    probs.clear();
    g.alive_incident_probs(u, probs);
    kprob[u] = kprob_value(probs, k, scratch);
    ++r.stats.refreshes;
    if (std::isnan(first[u])) first[u] = kprob[u];
    heap.set(u, kprob[u]);
  };

  for (VertexId u : core) refresh(u);
  double cur_thres = 0.0;
  while (!heap.empty()) {
    const auto top = heap.top();
    heap.pop();
    cur_thres = std::max(cur_thres, top.key);
    record(r, top.id, cur_thres, first[top.id]);
    ++r.stats.deletions;
    for (VertexId u : g.delete_vertex(top.id)) {
      // k-probabilities only fall as neighbors go; a zero cannot change.
      if (kprob[u] > 0.0) refresh(u);
    }
  }
  r.stats.wall_ms = watch.elapsed_ms();
  return r;
}

PeelResult peel_optiucf(UncertainGraph& g, int k, const PeelResult* prev, PeelOptions options) {
  PeelResult r;
  r.k = k;
  auto core = k_core(g, static_cast<std::uint32_t>(k));
  g.retain(core);
  Stopwatch watch;

  PeelState state(g, k, partition_vertices(core, prev, g.vertex_count()), options);
  state.init_working_set();
  double cur_thres = 0.0;
  while (g.alive_count() > 0) {
    Candidate p_crt = state.min_definite();
    if (auto lb = state.min_indefinite_lb(); lb && *lb < p_crt.kprob) {
      p_crt = state.refresh_indefinites(p_crt);
    }
    while (state.layer_cursor() < state.layer_count() && state.next_level() < p_crt.kprob) {
      p_crt = state.add_layer(p_crt);
    }
    if (p_crt.is_sentinel()) throw std::logic_error("peel_optiucf: alive vertex outside all layers");
    if (options.audit) state.audit_indefinites(p_crt);

    cur_thres = std::max(cur_thres, p_crt.kprob);
    record(r, p_crt.id, cur_thres, state.first_kprob(p_crt.id));
    state.remove(p_crt.id, cur_thres);
    if (state.working_set_empty() && state.layer_cursor() < state.layer_count()) {
      state.add_layer(Candidate{});
    }
  }
  r.stats = state.stats();
  r.stats.wall_ms = watch.elapsed_ms();
  return r;
}

PeelResult peel_lazy(UncertainGraph& g, int k, PeelOptions options) {
  return peel_optiucf(g, k, nullptr, options);
}

PeelResult peel_ec(UncertainGraph& g, int k) {
  PeelResult r;
  r.k = k;
  auto core = k_core(g, static_cast<std::uint32_t>(k));
  g.retain(core);
  for (VertexId u : core) {
    for (const auto& nb : g.neighbors(u)) {
      if (g.alive(nb.id) && nb.p == 1.0) {
        throw DataError("ec mode cannot peel edges with p = 1 (" + g.label(u) + " " +
                        g.label(nb.id) + ")");
      }
    }
  }
  Stopwatch watch;

  const std::size_t n = g.vertex_count();
  detail::IndexedMinHeap heap(n);
  std::vector<KProb> state(n);
  std::vector<double> first(n, kNaN);
  std::vector<double> probs;

  // A NaN produced by the division chain sorts last instead of breaking the heap.
  auto key_of = [](double v) { return std::isnan(v) ? std::numeric_limits<double>::infinity() : v; };

  for (VertexId u : core) {
    probs.clear();
    g.alive_incident_probs(u, probs);
    state[u] = kprob_dp(probs, k);
    ++r.stats.refreshes;
    first[u] = state[u].value;
    heap.set(u, key_of(state[u].value));
  }
  double cur_thres = 0.0;
  std::vector<Neighbor> affected;
  while (!heap.empty()) {
    const auto top = heap.top();
    heap.pop();
    cur_thres = std::max(cur_thres, state[top.id].value);
    record(r, top.id, cur_thres, first[top.id]);
    ++r.stats.deletions;
    affected.clear();
    for (const auto& nb : g.neighbors(top.id)) {
      if (g.alive(nb.id)) affected.push_back(nb);
    }
    g.delete_vertex(top.id);
    for (const auto& nb : affected) {
      state[nb.id] = ec_remove_edge(state[nb.id].dist, nb.p);
      heap.set(nb.id, key_of(state[nb.id].value));
    }
  }
  r.stats.wall_ms = watch.elapsed_ms();
  return r;
}

Decomposition decompose(UncertainGraph& g, Algorithm algo, PeelOptions options) {
  Decomposition d;
  d.algorithm = algo;
  g.reset();
  d.k_max = k_max(g);
  d.levels.resize(d.k_max);
  for (int k = static_cast<int>(d.k_max); k >= 1; --k) {
    g.reset();
    auto& slot = d.levels[static_cast<std::size_t>(k - 1)];
    switch (algo) {
      case Algorithm::kBaseline:
        slot = peel_baseline(g, k);
        break;
      case Algorithm::kLazy:
        slot = peel_lazy(g, k, options);
        break;
      case Algorithm::kOptiUcf: {
        const PeelResult* prev =
            k < static_cast<int>(d.k_max) ? &d.levels[static_cast<std::size_t>(k)] : nullptr;
        slot = peel_optiucf(g, k, prev, options);
        break;
      }
      case Algorithm::kEc:
        slot = peel_ec(g, k);
        break;
    }
  }
  g.reset();
  return d;
}

std::vector<double> dense_thresholds(const PeelResult& run, std::size_t vertex_count) {
  std::vector<double> out(vertex_count, kNoThreshold);
  for (std::size_t i = 0; i < run.order.size(); ++i) out[run.order[i]] = run.thresholds[i];
  return out;
}

std::size_t count_refreshes(const Decomposition& d) {
  std::size_t total = 0;
  for (const auto& run : d.levels) total += run.stats.refreshes;
  return total;
}

std::string instrumentation_line(const PeelResult& run, Algorithm algo) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "k=%d algo=%s refreshes=%zu deletions=%zu wall_ms=%.3f", run.k,
                std::string(algorithm_name(algo)).c_str(), run.stats.refreshes,
                run.stats.deletions, run.stats.wall_ms);
  return buf;
}

}  // namespace ucf
