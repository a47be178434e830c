#include "ucf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ucf/decomposition.hpp"
#include "ucf/error.hpp"
#include "ucf/kprob.hpp"
#include "ucf/oracle.hpp"

namespace ucf {

namespace {

constexpr std::size_t kMaxProbesPerTree = 96;

// Every component of `inner` lies inside a single component of `outer`.
bool nested(const CoreResult& inner, const CoreResult& outer, std::size_t n) {
  std::vector<std::size_t> owner(n, SIZE_MAX);
  for (std::size_t c = 0; c < outer.components.size(); ++c) {
    for (VertexId u : outer.components[c]) owner[u] = c;
  }
  for (const auto& comp : inner.components) {
    std::size_t first = owner[comp.front()];
    if (first == SIZE_MAX) return false;
    for (VertexId u : comp) {
      if (owner[u] != first) return false;
    }
  }
  return true;
}

std::string describe(const CoreResult& r) {
  std::ostringstream os;
  os << r.components.size() << " component(s)";
  for (const auto& c : r.components) {
    os << " {";
    for (std::size_t i = 0; i < c.size() && i < 8; ++i) os << (i ? " " : "") << c[i];
    if (c.size() > 8) os << " ...";
    os << "}";
  }
  return os.str();
}

}  // namespace

std::vector<double> probe_etas(const EtaTree& tree) {
  std::vector<double> etas{0.0, 1.0};
  for (const auto& node : tree.nodes()) {
    etas.push_back(node.threshold);
    etas.push_back(node.threshold - 1e-9);
    etas.push_back(node.threshold + 1e-9);
  }
  std::sort(etas.begin(), etas.end());
  etas.erase(std::unique(etas.begin(), etas.end()), etas.end());
  return etas;
}

VerifyReport verify_graph(const UncertainGraph& source, const UcfIndex* index) {
  if (source.vertex_count() > kVerifyMaxVertices) {
    throw DataError("graph too large to verify (" + std::to_string(source.vertex_count()) +
                    " vertices, limit " + std::to_string(kVerifyMaxVertices) + ")");
  }
  UncertainGraph g = source;
  g.reset();
  const std::size_t n = g.vertex_count();
  for (VertexId u = 0; u < n; ++u) {
    if (g.degree(u) > kVerifyMaxDegree) {
      throw DataError("vertex " + g.label(u) + " has degree " + std::to_string(g.degree(u)) +
                      ", beyond the enumeration budget of " + std::to_string(kVerifyMaxDegree));
    }
  }

  VerifyReport report;
  auto fail = [&report](std::string msg) {
    report.pass = false;
    report.failure = std::move(msg);
    return report;
  };

  if (index != nullptr && index->fingerprint != g.fingerprint()) {
    return fail("fingerprint mismatch between index and graph");
  }

  const int kmax = static_cast<int>(k_max(g));
  std::vector<double> probs;
  for (VertexId u = 0; u < n; ++u) {
    probs.clear();
    g.alive_incident_probs(u, probs);
    for (int k = 1; k <= kmax + 1; ++k) {
      ++report.checks;
      double dp = kprob_dp(probs, k).value;
      double en = enumerate_kprob(probs, k);
      if (std::abs(dp - en) > 1e-12) {
        return fail("k-probability of " + g.label(u) + " at k=" + std::to_string(k) +
                    " differs from world enumeration");
      }
      ProbBounds b = bounds(probs, k);
      if (b.lb > dp + 1e-12 || dp > b.ub + 1e-12) {
        return fail("bounds do not sandwich the k-probability of " + g.label(u) +
                    " at k=" + std::to_string(k));
      }
    }
  }

  auto bc = decompose(g, Algorithm::kBaseline);
  auto op = decompose(g, Algorithm::kLazy);
  auto opstar = decompose(g, Algorithm::kOptiUcf);
  for (int k = 1; k <= kmax; ++k) {
    auto ref = dense_thresholds(bc.at(k), n);
    for (const auto* other : {&op, &opstar}) {
      auto got = dense_thresholds(other->at(k), n);
      for (VertexId u = 0; u < n; ++u) {
        ++report.checks;
        if (std::abs(ref[u] - got[u]) > 1e-10) {
          return fail("threshold of " + g.label(u) + " at k=" + std::to_string(k) + " differs: bc " +
                      std::to_string(ref[u]) + " vs " + std::string(algorithm_name(other->algorithm)) +
                      " " + std::to_string(got[u]));
        }
      }
    }
  }

  UcfIndex built = build_index(opstar, g);
  std::vector<const UcfIndex*> indexes{&built};
  if (index != nullptr) indexes.push_back(index);
  for (const UcfIndex* idx : indexes) {
    const std::string tag = idx == &built ? "built index" : "supplied index";
    if (static_cast<int>(idx->k_max()) != kmax) return fail(tag + ": k_max mismatch");
    for (int k = 1; k <= kmax; ++k) {
      auto etas = probe_etas(idx->trees[static_cast<std::size_t>(k - 1)]);
      if (etas.size() > kMaxProbesPerTree) {
        std::vector<double> thinned;
        for (std::size_t i = 0; i < kMaxProbesPerTree; ++i) {
          thinned.push_back(etas[i * (etas.size() - 1) / (kMaxProbesPerTree - 1)]);
        }
        etas = std::move(thinned);
      }
      CoreResult previous;
      for (std::size_t i = 0; i < etas.size(); ++i) {
        ++report.checks;
        CoreResult got = query(*idx, k, etas[i]);
        CoreResult want = direct_core(g, k, etas[i]);
        if (got.components != want.components) {
          std::ostringstream os;
          os.precision(17);
          os << tag << ": query(k=" << k << ", eta=" << etas[i] << ") returned " << describe(got)
             << " but direct peeling gives " << describe(want);
          return fail(os.str());
        }
        if (i > 0 && !nested(got, previous, n)) {
          return fail(tag + ": cores not nested in eta at k=" + std::to_string(k));
        }
        if (k > 1 && !nested(query(*idx, k, etas[i]), query(*idx, k - 1, etas[i]), n)) {
          return fail(tag + ": cores not nested in k at k=" + std::to_string(k));
        }
        previous = std::move(got);
      }
    }
    if (!query(*idx, kmax + 1, 0.0).components.empty()) {
      return fail(tag + ": query above k_max is not empty");
    }
  }
  return report;
}

}  // namespace ucf
