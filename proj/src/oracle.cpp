#include "ucf/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <stdexcept>

#include "ucf/kprob.hpp"

namespace ucf {

double world_probability(std::span<const double> probs, std::uint32_t mask) {
  double pr = 1.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    pr *= (mask >> i) & 1U ? probs[i] : 1.0 - probs[i];
  }
  return pr;
}

std::vector<WorldEnumeration> enumerate_worlds(std::span<const double> probs) {
  if (probs.size() > kMaxEnumeratedEdges) {
    throw std::invalid_argument("enumerate_worlds: too many edges to enumerate");
  }
  const std::uint32_t count = 1U << probs.size();
  std::vector<WorldEnumeration> worlds;
  worlds.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    worlds.push_back({mask, world_probability(probs, mask)});
  }
  return worlds;
}

double enumerate_kprob(std::span<const double> incident_probs, int k) {
  if (incident_probs.size() > kMaxEnumeratedEdges) {
    throw std::invalid_argument("enumerate_kprob: too many edges to enumerate");
  }
  if (k <= 0) return 1.0;
  const std::uint32_t count = 1U << incident_probs.size();
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    if (std::popcount(mask) >= k) total += world_probability(incident_probs, mask);
  }
  return total;
}

CoreResult direct_core(const UncertainGraph& g, int k, double eta, DeletionOrder order) {
  UncertainGraph work = g;
  work.reset();
  const std::size_t n = work.vertex_count();
  std::vector<double> kprob(n, 0.0);
  std::vector<std::uint8_t> queued(n, 0);
  std::vector<double> probs;
  std::vector<double> scratch;
  std::deque<VertexId> pending;

  auto recompute = [&](VertexId u) {
    probs.clear();
    work.alive_incident_probs(u, probs);
    kprob[u] = kprob_value(probs, k, scratch);
  };
  auto doomed = [&](VertexId u) {
    return work.degree(u) < static_cast<std::size_t>(k) || kprob[u] < eta;
  };

  for (VertexId u = 0; u < n; ++u) {
    recompute(u);
    if (doomed(u)) {
      queued[u] = 1;
      pending.push_back(u);
    }
  }
  while (!pending.empty()) {
    VertexId u;
    if (order == DeletionOrder::kFifo) {
      u = pending.front();
      pending.pop_front();
    } else {
      u = pending.back();
      pending.pop_back();
    }
    for (VertexId v : work.delete_vertex(u)) {
      if (queued[v]) continue;
      recompute(v);
      if (doomed(v)) {
        queued[v] = 1;
        pending.push_back(v);
      }
    }
  }

  CoreResult result;
  result.k = k;
  result.eta = eta;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < n; ++s) {
    if (!work.alive(s) || seen[s]) continue;
    auto& comp = result.components.emplace_back();
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (const auto& nb : work.neighbors(u)) {
        if (work.alive(nb.id) && !seen[nb.id]) {
          seen[nb.id] = 1;
          stack.push_back(nb.id);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
  }
  return result;
}

}  // namespace ucf
