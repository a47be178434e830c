#ifndef UCF_KPROB_HPP
#define UCF_KPROB_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace ucf {

// Lower tail of a vertex's degree distribution: probs[i] = Pr(deg = i) for
// i < k, after folding `source_degree` incident edges.
struct DegreeDistribution {
  std::vector<double> probs;
  int k = 0;
  std::size_t source_degree = 0;
};

struct KProb {
  double value = 0.0;
  DegreeDistribution dist;
};

struct ProbBounds {
  double lb = 0.0;
  double ub = 0.0;
};

// Which lower bounds feed ProbBounds::lb. The upper bound is always the
// beta-function bound.
enum class BoundMode { kBoth, kTopKOnly, kBetaOnly };

// Pr(deg >= k) by folding the incident probabilities one at a time, in the
// given order. Result is clamped to [0, 1]; exactly 0 when fewer than k
// probabilities are given.
KProb kprob_dp(std::span<const double> incident_probs, int k);

// Allocation-free variant; `scratch` is resized as needed.
double kprob_value(std::span<const double> incident_probs, int k, std::vector<double>& scratch);

// Removes one edge of probability p_e from a folded distribution by the
// division-based update. Intentionally unclamped: this is the numerically
// unstable reference update whose error the errstat command measures.
// Throws std::domain_error for p_e = 1.
KProb ec_remove_edge(const DegreeDistribution& dist, double p_e);

// Pr(Binomial(d, z) >= k), i.e. the regularized incomplete beta I_z(k, d-k+1).
double beta_tail(double z, int k, std::size_t d);

// Bounds on kprob_dp for a probability list sorted non-increasing.
ProbBounds bounds(std::span<const double> sorted_desc_probs, int k,
                  BoundMode mode = BoundMode::kBoth);

// What the bounds need from an incident list: its length, extremes and the
// product of its k largest entries. Lets callers skip materializing the list.
struct IncidentSummary {
  std::size_t degree = 0;
  double p_max = 0.0;
  double p_min = 0.0;
  double top_k_product = 0.0;
};

double upper_bound(const IncidentSummary& s, int k);
// Not clamped to the upper bound; bounds() does that.
double lower_bound(const IncidentSummary& s, int k, BoundMode mode = BoundMode::kBoth);

// Product of the first k probabilities (0 if fewer than k).
double top_k_product(std::span<const double> sorted_desc_probs, int k);

}  // namespace ucf

#endif  // UCF_KPROB_HPP
