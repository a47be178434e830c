#include "ucf/ucf_index.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ucf/error.hpp"

namespace ucf {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), VertexId{0});
  }

  VertexId find(VertexId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<VertexId> parent_;
  std::vector<std::uint32_t> size_;
};

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_threshold(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", t);
  return buf;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t next = line.find(' ', pos);
    if (next == std::string_view::npos) next = line.size();
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

}  // namespace

EtaTree::EtaTree(int k, std::vector<EtaNode> nodes, std::size_t vertex_count)
    : k_(k), nodes_(std::move(nodes)), vertex_to_node_(vertex_count, kNoNode) {
  const std::size_t m = nodes_.size();
  for (auto& node : nodes_) node.children.clear();
  for (NodeId id = 0; id < m; ++id) {
    auto& node = nodes_[id];
    if (node.vertices.empty()) throw DataError("eta-tree node " + std::to_string(id) + " is empty");
    // ec-built indexes may carry thresholds outside [0, 1]; only NaN is rejected.
    if (std::isnan(node.threshold)) throw DataError("NaN threshold in node " + std::to_string(id));
    if (node.parent != kNoNode) {
      if (node.parent >= m || node.parent == id) {
        throw DataError("bad parent for node " + std::to_string(id));
      }
      if (!(nodes_[node.parent].threshold < node.threshold)) {
        throw DataError("node " + std::to_string(id) + " does not exceed its parent's threshold");
      }
      nodes_[node.parent].children.push_back(id);
    } else {
      roots_.push_back(id);
    }
    std::sort(node.vertices.begin(), node.vertices.end());
    for (VertexId u : node.vertices) {
      if (u >= vertex_count) throw DataError("vertex id out of range in node " + std::to_string(id));
      if (vertex_to_node_[u] != kNoNode) {
        throw DataError("vertex " + std::to_string(u) + " appears in two nodes");
      }
      vertex_to_node_[u] = id;
    }
    vertex_total_ += node.vertices.size();
  }
  for (auto& node : nodes_) std::sort(node.children.begin(), node.children.end());
  by_threshold_.resize(m);
  std::iota(by_threshold_.begin(), by_threshold_.end(), NodeId{0});
  std::stable_sort(by_threshold_.begin(), by_threshold_.end(), [this](NodeId a, NodeId b) {
    return nodes_[a].threshold > nodes_[b].threshold;
  });
}

std::vector<std::vector<VertexId>> EtaTree::components(double eta) const {
  std::vector<std::vector<VertexId>> out;
  std::vector<NodeId> stack;
  for (NodeId id : by_threshold_) {
    const auto& node = nodes_[id];
    if (!(node.threshold >= eta)) break;
    if (node.parent != kNoNode && nodes_[node.parent].threshold >= eta) continue;
    auto& comp = out.emplace_back();
    stack.push_back(id);
    while (!stack.empty()) {
      const auto& cur = nodes_[stack.back()];
      stack.pop_back();
      comp.insert(comp.end(), cur.vertices.begin(), cur.vertices.end());
      stack.insert(stack.end(), cur.children.begin(), cur.children.end());
    }
    std::sort(comp.begin(), comp.end());
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

EtaTree build_eta_tree(int k, std::span<const VertexId> order, std::span<const double> thresholds,
                       const UncertainGraph& g) {
  if (order.size() != thresholds.size()) {
    throw std::invalid_argument("build_eta_tree: stack and threshold lengths differ");
  }
  const std::size_t n = g.vertex_count();
  UnionFind uf(n);
  std::vector<std::uint8_t> replayed(n, 0);
  std::vector<NodeId> top_node(n, kNoNode);   // keyed by union-find root
  std::vector<NodeId> group_node(n, kNoNode); // root -> node created for the current group
  std::vector<EtaNode> nodes;
  std::vector<VertexId> old_roots;

  std::size_t end = order.size();
  while (end > 0) {
    const double t = thresholds[end - 1];
    std::size_t begin = end;
    while (begin > 0 && thresholds[begin - 1] == t) --begin;
    if (begin > 0 && thresholds[begin - 1] > t) {
      throw std::invalid_argument("build_eta_tree: thresholds decrease along the stack");
    }
    auto group = order.subspan(begin, end - begin);

    old_roots.clear();
    for (VertexId v : group) {
      for (const auto& nb : g.neighbors(v)) {
        if (replayed[nb.id]) old_roots.push_back(uf.find(nb.id));
      }
    }
    for (VertexId v : group) {
      if (replayed[v]) throw std::invalid_argument("build_eta_tree: vertex repeated in stack");
      replayed[v] = 1;
    }
    for (VertexId v : group) {
      for (const auto& nb : g.neighbors(v)) {
        if (replayed[nb.id]) uf.unite(v, nb.id);
      }
    }

    for (VertexId v : group) {
      VertexId root = uf.find(v);
      if (group_node[root] == kNoNode) {
        group_node[root] = static_cast<NodeId>(nodes.size());
        nodes.push_back({t, {}, kNoNode, {}});
      }
      nodes[group_node[root]].vertices.push_back(v);
    }
    for (VertexId old_root : old_roots) {
      NodeId child = top_node[old_root];
      if (child == kNoNode || nodes[child].parent != kNoNode) continue;
      nodes[child].parent = group_node[uf.find(old_root)];
    }
    for (VertexId v : group) {
      VertexId root = uf.find(v);
      if (group_node[root] != kNoNode) {
        top_node[root] = group_node[root];
        group_node[root] = kNoNode;
      }
    }
    end = begin;
  }
  return EtaTree(k, std::move(nodes), n);
}

UcfIndex build_index(const Decomposition& d, const UncertainGraph& g) {
  UcfIndex index;
  index.algorithm = std::string(algorithm_name(d.algorithm));
  index.fingerprint = g.fingerprint();
  index.labels.assign(g.labels().begin(), g.labels().end());
  index.trees.reserve(d.levels.size());
  for (const auto& run : d.levels) {
    index.trees.push_back(build_eta_tree(run.k, run.order, run.thresholds, g));
  }
  return index;
}

CoreResult query(const UcfIndex& index, int k, double eta) {
  CoreResult r;
  r.k = k;
  r.eta = eta;
  if (k < 1 || static_cast<std::size_t>(k) > index.trees.size()) return r;
  r.components = index.trees[static_cast<std::size_t>(k - 1)].components(eta);
  return r;
}

std::string serialize(const UcfIndex& index) {
  std::string out;
  out += "UCF 1\n";
  out += "kmax " + std::to_string(index.k_max()) + "\n";
  out += "fingerprint " + hex64(index.fingerprint) + "\n";
  out += "algo " + (index.algorithm.empty() ? std::string("-") : index.algorithm) + "\n";
  out += "vertices " + std::to_string(index.labels.size()) + "\n";
  out += "labels";
  for (const auto& l : index.labels) out += " " + l;
  out += "\n";
  for (const auto& tree : index.trees) {
    out += "tree k=" + std::to_string(tree.k()) + "\n";
    const auto& nodes = tree.nodes();
    for (NodeId id = 0; id < nodes.size(); ++id) {
      const auto& node = nodes[id];
      out += "node " + std::to_string(id) + " parent ";
      out += node.parent == kNoNode ? std::string("-") : std::to_string(node.parent);
      out += " thres " + format_threshold(node.threshold) + " verts";
      for (VertexId u : node.vertices) out += " " + std::to_string(u);
      out += "\n";
    }
  }
  out += "checksum " + hex64(fnv1a(out)) + "\n";
  return out;
}

UcfIndex deserialize(std::string_view text) {
  UcfIndex index;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::vector<std::string_view> lines;
  std::vector<std::size_t> line_starts;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) throw ParseError(lines.size() + 1, "missing final newline");
    line_starts.push_back(pos);
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (lines.empty()) throw ParseError(1, "empty index");

  auto expect = [&](std::string_view key) {
    if (line_no >= lines.size() - 1) throw ParseError(line_no + 1, "expected '" + std::string(key) + "'");
    auto fields = split(lines[line_no]);
    ++line_no;
    if (fields.empty() || fields[0] != key) {
      throw ParseError(line_no, "expected '" + std::string(key) + "'");
    }
    return fields;
  };

  auto header = expect("UCF");
  if (header.size() != 2) throw ParseError(line_no, "malformed header");
  if (header[1] != "1") throw ParseError(line_no, "unsupported index version " + std::string(header[1]));

  std::uint32_t kmax = 0;
  auto f = expect("kmax");
  if (f.size() != 2 || !parse_number(f[1], kmax)) throw ParseError(line_no, "malformed kmax");

  f = expect("fingerprint");
  {
    auto [ptr, ec] = f.size() == 2 ? std::from_chars(f[1].data(), f[1].data() + f[1].size(),
                                                      index.fingerprint, 16)
                                   : std::from_chars_result{nullptr, std::errc::invalid_argument};
    if (ec != std::errc() || ptr != f[1].data() + f[1].size()) {
      throw ParseError(line_no, "malformed fingerprint");
    }
  }

  f = expect("algo");
  if (f.size() != 2) throw ParseError(line_no, "malformed algo");
  index.algorithm = f[1] == "-" ? std::string() : std::string(f[1]);

  std::size_t vertex_count = 0;
  f = expect("vertices");
  if (f.size() != 2 || !parse_number(f[1], vertex_count)) throw ParseError(line_no, "malformed vertices");

  f = expect("labels");
  if (f.size() != vertex_count + 1) throw ParseError(line_no, "label count does not match vertices");
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (f[i].empty()) throw ParseError(line_no, "empty label");
    index.labels.emplace_back(f[i]);
  }

  const std::size_t body_end = lines.size() - 1;
  for (std::uint32_t k = 1; k <= kmax; ++k) {
    // Trees are written from k = 1 upward.
    f = expect("tree");
    if (f.size() != 2 || f[1] != "k=" + std::to_string(k)) {
      throw ParseError(line_no, "expected 'tree k=" + std::to_string(k) + "'");
    }
    const std::size_t tree_line = line_no;
    std::vector<EtaNode> nodes;
    while (line_no < body_end && !lines[line_no].starts_with("tree ")) {
      auto nf = split(lines[line_no]);
      ++line_no;
      NodeId id = 0;
      if (nf.size() < 7 || nf[0] != "node" || nf[2] != "parent" || nf[4] != "thres" || nf[6] != "verts" ||
          !parse_number(nf[1], id) || id != nodes.size()) {
        throw ParseError(line_no, "malformed node record");
      }
      EtaNode node;
      if (nf[3] != "-" && !parse_number(nf[3], node.parent)) throw ParseError(line_no, "malformed parent");
      if (!parse_number(nf[5], node.threshold)) throw ParseError(line_no, "malformed threshold");
      for (std::size_t i = 7; i < nf.size(); ++i) {
        VertexId u = 0;
        if (!parse_number(nf[i], u)) throw ParseError(line_no, "malformed vertex id");
        node.vertices.push_back(u);
      }
      nodes.push_back(std::move(node));
    }
    try {
      index.trees.emplace_back(static_cast<int>(k), std::move(nodes), vertex_count);
    } catch (const ParseError&) {
      throw;
    } catch (const DataError& e) {
      throw ParseError(tree_line, e.what());
    }
  }
  if (line_no != body_end) throw ParseError(line_no + 1, "unexpected record");

  // Checksum covers everything before the last line.
  {
    auto fields = split(lines.back());
    std::uint64_t stored = 0;
    if (fields.size() != 2 || fields[0] != "checksum") {
      throw ParseError(lines.size(), "missing checksum line");
    }
    auto [ptr, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), stored, 16);
    if (ec != std::errc() || ptr != fields[1].data() + fields[1].size() || fields[1].size() != 16) {
      throw ParseError(lines.size(), "malformed checksum");
    }
    if (stored != fnv1a(text.substr(0, line_starts.back()))) {
      throw ParseError(lines.size(), "checksum mismatch");
    }
  }

  return index;
}

UcfIndex load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

void save_index(const std::string& path, const UcfIndex& index) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << serialize(index);
  if (!out) throw DataError("write failed for " + path);
}

}  // namespace ucf
