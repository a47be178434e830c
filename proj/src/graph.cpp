#include "ucf/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "ucf/error.hpp"

namespace ucf {

namespace {

std::uint64_t pair_key(VertexId u, VertexId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::string format_prob(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

}  // namespace

UncertainGraph::UncertainGraph(std::size_t vertex_count, std::vector<Edge> edges,
                               std::vector<std::string> labels)
    : edges_(std::move(edges)), labels_(std::move(labels)) {
  if (vertex_count >= kNoVertex) throw DataError("too many vertices");
  if (labels_.empty()) {
    labels_.reserve(vertex_count);
    for (std::size_t i = 0; i < vertex_count; ++i) labels_.push_back(std::to_string(i));
  } else if (labels_.size() != vertex_count) {
    throw DataError("label count does not match vertex count");
  }

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  std::vector<std::uint32_t> degree(vertex_count, 0);
  for (auto& e : edges_) {
    if (e.u >= vertex_count || e.v >= vertex_count) throw DataError("edge endpoint out of range");
    if (e.u == e.v) throw DataError("self-loop at vertex " + labels_[e.u]);
    if (!(e.p > 0.0 && e.p <= 1.0)) throw DataError("edge probability outside (0, 1]");
    if (!seen.insert(pair_key(std::min(e.u, e.v), std::max(e.u, e.v))).second) {
      throw DataError("duplicate edge " + labels_[e.u] + " " + labels_[e.v]);
    }
    ++degree[e.u];
    ++degree[e.v];
  }

  offsets_.assign(vertex_count + 1, 0);
  for (std::size_t u = 0; u < vertex_count; ++u) offsets_[u + 1] = offsets_[u] + degree[u];
  adjacency_.resize(offsets_[vertex_count]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e.u]++] = {e.v, e.p};
    adjacency_[fill[e.v]++] = {e.u, e.p};
  }
  for (std::size_t u = 0; u < vertex_count; ++u) {
    std::sort(adjacency_.begin() + offsets_[u], adjacency_.begin() + offsets_[u + 1],
              [](const Neighbor& a, const Neighbor& b) {
                return a.p != b.p ? a.p > b.p : a.id < b.id;
              });
  }

  alive_.assign(vertex_count, 1);
  live_degree_ = std::move(degree);
  alive_count_ = vertex_count;
}

void UncertainGraph::alive_incident_probs(VertexId u, std::vector<double>& out) const {
  for (const auto& nb : neighbors(u)) {
    if (alive_[nb.id]) out.push_back(nb.p);
  }
}

std::vector<VertexId> UncertainGraph::delete_vertex(VertexId u) {
  if (!alive_[u]) throw std::logic_error("delete_vertex: vertex already deleted");
  alive_[u] = 0;
  --alive_count_;
  std::vector<VertexId> affected;
  affected.reserve(live_degree_[u]);
  for (const auto& nb : neighbors(u)) {
    if (alive_[nb.id]) {
      --live_degree_[nb.id];
      affected.push_back(nb.id);
    }
  }
  live_degree_[u] = 0;
  return affected;
}

void UncertainGraph::reset() {
  std::fill(alive_.begin(), alive_.end(), 1);
  for (std::size_t u = 0; u < alive_.size(); ++u) {
    live_degree_[u] = static_cast<std::uint32_t>(offsets_[u + 1] - offsets_[u]);
  }
  alive_count_ = alive_.size();
}

void UncertainGraph::retain(std::span<const VertexId> vertices) {
  std::fill(alive_.begin(), alive_.end(), 0);
  for (VertexId u : vertices) alive_[u] = 1;
  alive_count_ = 0;
  for (std::size_t u = 0; u < alive_.size(); ++u) {
    live_degree_[u] = 0;
    if (!alive_[u]) continue;
    ++alive_count_;
    for (const auto& nb : neighbors(static_cast<VertexId>(u))) {
      if (alive_[nb.id]) ++live_degree_[u];
    }
  }
}

std::uint64_t UncertainGraph::fingerprint() const {
  // Keyed by labels, not ids, so relabelling by a reparse keeps the hash.
  std::vector<std::string> lines;
  lines.reserve(edges_.size());
  for (const auto& e : edges_) {
    const std::string& a = labels_[e.u];
    const std::string& b = labels_[e.v];
    lines.push_back(a < b ? a + " " + b : b + " " + a);
    lines.back() += " " + format_prob(e.p) + "\n";
  }
  std::sort(lines.begin(), lines.end());
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  mix("n " + std::to_string(vertex_count()) + "\n");
  for (const auto& line : lines) mix(line);
  return h;
}

UncertainGraph UncertainGraph::induced(std::span<const VertexId> vertices) const {
  std::vector<VertexId> remap(vertex_count(), kNoVertex);
  std::vector<std::string> labels;
  labels.reserve(vertices.size());
  for (VertexId u : vertices) {
    if (remap[u] != kNoVertex) throw std::invalid_argument("induced: repeated vertex");
    remap[u] = static_cast<VertexId>(labels.size());
    labels.push_back(labels_[u]);
  }
  std::vector<Edge> edges;
  for (const auto& e : edges_) {
    if (remap[e.u] != kNoVertex && remap[e.v] != kNoVertex) {
      edges.push_back({remap[e.u], remap[e.v], e.p});
    }
  }
  const std::size_t n = labels.size();
  return UncertainGraph(n, std::move(edges), std::move(labels));
}

LoadedGraph parse_edge_list(std::istream& in) {
  std::unordered_map<std::string, VertexId> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  std::size_t dropped = 0;

  auto intern = [&](std::string_view token) {
    auto [it, inserted] = ids.try_emplace(std::string(token), static_cast<VertexId>(labels.size()));
    if (inserted) labels.emplace_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view rest(line);
    std::string_view tokens[4];
    std::size_t count = 0;
    while (true) {
      auto start = rest.find_first_not_of(" \t");
      if (start == std::string_view::npos) break;
      rest.remove_prefix(start);
      auto end = rest.find_first_of(" \t");
      if (count == 4) {
        count = 5;
        break;
      }
      tokens[count++] = rest.substr(0, end);
      if (end == std::string_view::npos) break;
      rest.remove_prefix(end);
    }
    if (count == 0 || tokens[0].front() == '#') continue;
    if (count != 3) throw ParseError(line_no, "expected `u v p`");

    double p = 0.0;
    auto [ptr, ec] = std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(), p);
    if (ec != std::errc() || ptr != tokens[2].data() + tokens[2].size()) {
      throw ParseError(line_no, "malformed probability '" + std::string(tokens[2]) + "'");
    }
    if (!(p >= 0.0 && p <= 1.0)) throw ParseError(line_no, "probability outside [0, 1]");
    if (tokens[0] == tokens[1]) throw ParseError(line_no, "self-loop");

    VertexId u = intern(tokens[0]);
    VertexId v = intern(tokens[1]);
    if (!seen.insert(pair_key(std::min(u, v), std::max(u, v))).second) {
      throw ParseError(line_no, "duplicate edge");
    }
    if (p == 0.0) {
      ++dropped;
      continue;
    }
    edges.push_back({u, v, p});
  }
  if (in.bad()) throw DataError("read error");

  std::size_t n = labels.size();
  return {UncertainGraph(n, std::move(edges), std::move(labels)), dropped};
}

LoadedGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const UncertainGraph& g) {
  for (const auto& e : g.edges()) {
    out << g.label(e.u) << ' ' << g.label(e.v) << ' ' << format_prob(e.p) << '\n';
  }
}

std::vector<std::uint32_t> core_numbers(const UncertainGraph& g) {
  // Bucket peeling (Batagelj-Zaversnik) restricted to alive vertices.
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> deg(n, 0);
  std::uint32_t max_deg = 0;
  for (VertexId u = 0; u < n; ++u) {
    if (!g.alive(u)) continue;
    deg[u] = static_cast<std::uint32_t>(g.degree(u));
    max_deg = std::max(max_deg, deg[u]);
  }
  std::vector<std::size_t> bin(max_deg + 2, 0);
  std::vector<VertexId> order;
  order.reserve(n);
  for (VertexId u = 0; u < n; ++u) {
    if (g.alive(u)) ++bin[deg[u] + 1];
  }
  for (std::size_t d = 1; d < bin.size(); ++d) bin[d] += bin[d - 1];
  std::vector<std::size_t> pos(n, 0);
  order.resize(bin.back());
  {
    std::vector<std::size_t> next(bin.begin(), bin.end() - 1);
    for (VertexId u = 0; u < n; ++u) {
      if (!g.alive(u)) continue;
      pos[u] = next[deg[u]]++;
      order[pos[u]] = u;
    }
  }
  // bin[d] now marks the start of the degree-d block.
  for (std::size_t i = 0; i < order.size(); ++i) {
    VertexId u = order[i];
    for (const auto& nb : g.neighbors(u)) {
      VertexId w = nb.id;
      if (!g.alive(w) || deg[w] <= deg[u]) continue;
      std::uint32_t dw = deg[w];
      std::size_t first = bin[dw];
      VertexId swap_with = order[first];
      if (swap_with != w) {
        std::swap(order[pos[w]], order[first]);
        pos[swap_with] = pos[w];
        pos[w] = first;
      }
      ++bin[dw];
      --deg[w];
    }
  }
  return deg;
}

std::vector<VertexId> k_core(const UncertainGraph& g, std::uint32_t k) {
  auto core = core_numbers(g);
  std::vector<VertexId> out;
  for (VertexId u = 0; u < core.size(); ++u) {
    if (g.alive(u) && core[u] >= k) out.push_back(u);
  }
  return out;
}

std::uint32_t k_max(const UncertainGraph& g) {
  auto core = core_numbers(g);
  std::uint32_t best = 0;
  for (VertexId u = 0; u < core.size(); ++u) {
    if (g.alive(u)) best = std::max(best, core[u]);
  }
  return best;
}

}  // namespace ucf
