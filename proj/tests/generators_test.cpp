#include <doctest.h>

#include <sstream>

#include "ucf/error.hpp"
#include "ucf/generators.hpp"

using namespace ucf;

namespace {

std::string text_of(const UncertainGraph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

}  // namespace

TEST_CASE("gnm is deterministic under a seed") {
  CHECK(text_of(generate_gnm(10, 15, 7)) == text_of(generate_gnm(10, 15, 7)));
  CHECK(text_of(generate_gnm(10, 15, 7)) != text_of(generate_gnm(10, 15, 8)));
  CHECK(text_of(generate_ba(50, 150, 7)) == text_of(generate_ba(50, 150, 7)));
}

TEST_CASE("gnm has exactly m edges inside the band") {
  for (std::size_t m : {0UL, 10UL, 40UL, 45UL}) {
    auto g = generate_gnm(10, m, 3, {0.99, 0.999});
    CHECK(g.edge_count() == m);
    for (const auto& e : g.edges()) {
      CHECK(e.p > 0.99);
      CHECK(e.p <= 0.999);
    }
  }
  auto g = generate_gnm(100, 300, 3);
  for (const auto& e : g.edges()) {
    CHECK(e.p > 0.0);
    CHECK(e.p <= 1.0);
  }
}

TEST_CASE("gnm rejects m beyond capacity and bad bands") {
  CHECK_THROWS_AS(generate_gnm(10, 46, 1), DataError);
  CHECK_THROWS_AS(generate_gnm(1, 1, 1), DataError);
  CHECK_THROWS_AS(generate_gnm(10, 5, 1, {0.5, 0.5}), DataError);
  CHECK_THROWS_AS(generate_gnm(10, 5, 1, {-0.1, 0.5}), DataError);
}

TEST_CASE("ba attaches round(m / n) edges per new vertex") {
  auto g = generate_ba(100, 300, 5);
  // seed clique on 4 vertices (6 edges) plus 3 per remaining vertex
  CHECK(g.edge_count() == 6 + 3 * 96);
  CHECK(k_max(g) >= 3);
}

TEST_CASE("vertex samples are nested across fractions and keep isolated vertices") {
  auto small = sample_vertices(100, 0.2, 9);
  auto large = sample_vertices(100, 0.6, 9);
  CHECK(small.size() == 20);
  CHECK(large.size() == 60);
  CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  CHECK(sample_vertices(100, 0.0, 9).empty());
  CHECK(sample_vertices(100, 1.0, 9).size() == 100);

  UncertainGraph g(4, {{0, 1, 0.5}});
  auto sub = sample_graph(g, 1.0, 1);
  CHECK(sub.vertex_count() == 4);
  CHECK(sub.edge_count() == 1);
}
