#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "support.hpp"
#include "ucf/error.hpp"
#include "ucf/graph.hpp"

using namespace ucf;
using ucf::testing::parse;

namespace {

// Union of every vertex subset whose induced min-degree is >= k.
std::vector<VertexId> brute_force_k_core(const UncertainGraph& g, std::uint32_t k) {
  const std::size_t n = g.vertex_count();
  std::uint32_t best = 0;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    bool ok = true;
    for (VertexId u = 0; u < n && ok; ++u) {
      if (!((mask >> u) & 1U)) continue;
      std::uint32_t d = 0;
      for (const auto& nb : g.neighbors(u)) d += (mask >> nb.id) & 1U;
      ok = d >= k;
    }
    if (ok) best |= mask;
  }
  std::vector<VertexId> out;
  for (VertexId u = 0; u < n; ++u) {
    if ((best >> u) & 1U) out.push_back(u);
  }
  return out;
}

std::multiset<std::tuple<std::string, std::string, double>> edge_multiset(const UncertainGraph& g) {
  std::multiset<std::tuple<std::string, std::string, double>> out;
  for (const auto& e : g.edges()) {
    auto a = g.label(e.u), b = g.label(e.v);
    if (b < a) std::swap(a, b);
    out.emplace(a, b, e.p);
  }
  return out;
}

}  // namespace

TEST_CASE("parse_edge_list builds the graph") {
  auto loaded = [] {
    std::istringstream in("0 1 0.9\n1 2 0.8");
    return parse_edge_list(in);
  }();
  CHECK(loaded.graph.vertex_count() == 3);
  CHECK(loaded.graph.edge_count() == 2);
  CHECK(loaded.dropped_zero_edges == 0);
}

TEST_CASE("parse_edge_list skips comments and blank lines, accepts tabs") {
  std::istringstream in("# header\n\n  \na\tb   0.5\n# c d 0.1\nb c 1\n");
  auto loaded = parse_edge_list(in);
  CHECK(loaded.graph.vertex_count() == 3);
  CHECK(loaded.graph.edge_count() == 2);
  CHECK(loaded.graph.label(0) == "a");
}

TEST_CASE("zero-probability edges are dropped and counted") {
  std::istringstream in("0 1 0.0\n");
  auto loaded = parse_edge_list(in);
  CHECK(loaded.graph.edge_count() == 0);
  CHECK(loaded.dropped_zero_edges == 1);
}

TEST_CASE("parse errors carry the line number") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      parse_edge_list(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("0 0 0.5\n") == 1);
  CHECK(line_of("0 1 0.5\n1 0 0.4\n") == 2);  // duplicate regardless of orientation
  CHECK(line_of("0 1 0.5\n\n1 2 1.5\n") == 3);
  CHECK(line_of("0 1 -0.1\n") == 1);
  CHECK(line_of("0 1 abc\n") == 1);
  CHECK(line_of("0 1\n") == 1);
  CHECK(line_of("0 1 0.5 7\n") == 1);
  CHECK(line_of("0 1 nan\n") == 1);
}

TEST_CASE("constructor rejects invalid edges") {
  CHECK_THROWS_AS(UncertainGraph(2, {{0, 0, 0.5}}), DataError);
  CHECK_THROWS_AS(UncertainGraph(2, {{0, 1, 0.5}, {1, 0, 0.5}}), DataError);
  CHECK_THROWS_AS(UncertainGraph(2, {{0, 1, 0.0}}), DataError);
  CHECK_THROWS_AS(UncertainGraph(2, {{0, 2, 0.5}}), DataError);
}

TEST_CASE("adjacency is sorted by probability then id") {
  UncertainGraph g(5, {{0, 3, 0.5}, {0, 1, 0.5}, {0, 2, 0.9}, {0, 4, 0.1}});
  auto nb = g.neighbors(0);
  REQUIRE(nb.size() == 4);
  CHECK(nb[0].id == 2);
  CHECK(nb[1].id == 1);
  CHECK(nb[2].id == 3);
  CHECK(nb[3].id == 4);
}

TEST_CASE("k_core examples") {
  auto tri = ucf::testing::triangle(0.3);
  CHECK(k_core(tri, 2) == std::vector<VertexId>{0, 1, 2});
  auto path = parse("a b 0.5\nb c 0.5\n");
  CHECK(k_core(path, 2).empty());
  auto g = ucf::testing::clique4_pendant();
  auto core = k_core(g, 3);
  CHECK(core == std::vector<VertexId>{0, 1, 2, 3});
  CHECK(core == brute_force_k_core(g, 3));
}

TEST_CASE("k_max examples") {
  CHECK(k_max(ucf::testing::triangle()) == 2);
  CHECK(k_max(parse("a b 0.5\nb c 0.5\n")) == 1);
  CHECK(k_max(ucf::testing::clique4_pendant()) == 3);
  CHECK(k_max(UncertainGraph(4, {})) == 0);
}

TEST_CASE("delete_vertex returns alive neighbors in adjacency order") {
  auto tri = ucf::testing::triangle();
  CHECK(tri.delete_vertex(0) == std::vector<VertexId>{1, 2});
  CHECK(tri.degree(1) == 1);
  CHECK_THROWS_AS(tri.delete_vertex(0), std::logic_error);

  UncertainGraph isolated(1, {});
  CHECK(isolated.delete_vertex(0).empty());

  UncertainGraph star(4, {{0, 1, 0.2}, {0, 2, 0.9}, {0, 3, 0.5}});
  CHECK(star.delete_vertex(0) == std::vector<VertexId>{2, 3, 1});
  CHECK(star.alive_count() == 3);
}

TEST_CASE("property: k_core matches brute force, is idempotent and monotone") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = ucf::testing::random_graph(rng, 11, 30);
    std::vector<VertexId> previous;
    for (std::uint32_t k = 1; k <= k_max(g) + 1; ++k) {
      auto core = k_core(g, k);
      REQUIRE(core == brute_force_k_core(g, k));
      if (k > 1) CHECK(std::includes(previous.begin(), previous.end(), core.begin(), core.end()));
      auto sub = g;
      sub.retain(core);
      CHECK(k_core(sub, k) == core);
      previous = core;
    }
  }
}

TEST_CASE("property: deletion decrements each affected degree by one") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = ucf::testing::random_graph(rng, 20, 60);
    while (g.alive_count() > 0) {
      VertexId u = 0;
      while (!g.alive(u)) ++u;
      std::vector<std::size_t> before(g.vertex_count());
      for (VertexId v = 0; v < g.vertex_count(); ++v) before[v] = g.degree(v);
      for (VertexId v : g.delete_vertex(u)) CHECK(g.degree(v) == before[v] - 1);
    }
    g.reset();
    CHECK(g.alive_count() == g.vertex_count());
  }
}

TEST_CASE("property: parse -> write -> parse keeps the edge multiset and ids") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = ucf::testing::random_graph(rng, 30, 80);
    std::ostringstream first;
    write_edge_list(first, g);
    auto reparsed = parse(first.str());
    CHECK(edge_multiset(reparsed) == edge_multiset(g));
    std::ostringstream second;
    write_edge_list(second, reparsed);
    CHECK(second.str() == first.str());
    CHECK(reparsed.fingerprint() == parse(second.str()).fingerprint());
  }
}

TEST_CASE("fingerprint changes with a probability") {
  auto a = parse("a b 0.5\nb c 0.25\n");
  auto b = parse("a b 0.5\nb c 0.2500000001\n");
  CHECK(a.fingerprint() != b.fingerprint());
}

TEST_CASE("induced keeps labels and induced edges only") {
  auto g = parse("a b 0.5\nb c 0.25\nc d 0.75\n");
  std::vector<VertexId> keep{1, 2, 3};
  auto sub = g.induced(keep);
  CHECK(sub.vertex_count() == 3);
  CHECK(sub.edge_count() == 2);
  CHECK(sub.label(0) == "b");
}
