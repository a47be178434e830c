#include "ucf/kprob.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ucf {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// x^n by squaring; a few multiplications instead of exp and log.
double int_pow(double x, std::size_t n) {
  double result = 1.0;
  while (n > 0) {
    if (n & 1U) result *= x;
    x *= x;
    n >>= 1U;
  }
  return result;
}

// Below this a binomial term has lost relative precision to subnormals.
constexpr double kTinyTerm = 1e-290;

// Fold incident edges into X[0..k-1]; X must have size k.
void fold_lower_tail(std::span<const double> probs, std::span<double> x) {
  const std::size_t k = x.size();
  std::fill(x.begin(), x.end(), 0.0);
  x[0] = 1.0;
  std::size_t h = 0;
  for (double p : probs) {
    ++h;
    const double q = 1.0 - p;
    for (std::size_t i = std::min(h, k - 1); i >= 1; --i) x[i] = p * x[i - 1] + q * x[i];
    x[0] *= q;
  }
}

// Stirling series remainder: log(n!) - ((n + 1/2) log n - n + log sqrt(2 pi)).
double stirlerr(double n) {
  constexpr double kHalfLog2Pi = 0.918938533204672741780329736406;
  if (n <= 15.0) {
    double fact = 1.0;
    for (int i = 2; i <= static_cast<int>(n); ++i) fact *= i;
    return std::log(fact) - (n + 0.5) * std::log(n) + n - kHalfLog2Pi;
  }
  constexpr double s0 = 1.0 / 12, s1 = 1.0 / 360, s2 = 1.0 / 1260, s3 = 1.0 / 1680,
                   s4 = 1.0 / 1188;
  const double nn = n * n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x log(x / np) + np - x, evaluated without cancellation.
double bd0(double x, double np) {
  if (std::abs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2 * x * v;
    const double v2 = v * v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v2;
      double next = s + ej / (2 * j + 1);
      if (next == s) return next;
      s = next;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

// Binomial pmf via the saddle-point expansion (relative error near 1e-15).
double binomial_pmf(std::size_t x, std::size_t n, double p) {
  const double q = 1.0 - p;
  const double dn = static_cast<double>(n);
  if (x == 0) {
    if (n == 0) return 1.0;
    double lc = p < 0.1 ? -bd0(dn, dn * q) - dn * p : dn * std::log(q);
    return std::exp(lc);
  }
  if (x == n) {
    double lc = q < 0.1 ? -bd0(dn, dn * p) - dn * q : dn * std::log(p);
    return std::exp(lc);
  }
  const double dx = static_cast<double>(x);
  const double dy = dn - dx;
  double lc = stirlerr(dn) - stirlerr(dx) - stirlerr(dy) - bd0(dx, dn * p) - bd0(dy, dn * q);
  double lf = std::log(2 * std::numbers::pi) + std::log(dx) + std::log1p(-dx / dn);
  return std::exp(lc - 0.5 * lf);
}

}  // namespace

double kprob_value(std::span<const double> incident_probs, int k, std::vector<double>& scratch) {
  if (k <= 0) return 1.0;
  if (incident_probs.size() < static_cast<std::size_t>(k)) return 0.0;
  scratch.resize(static_cast<std::size_t>(k));
  fold_lower_tail(incident_probs, scratch);
  double lower = 0.0;
  for (double v : scratch) lower += v;
  return clamp01(1.0 - lower);
}

KProb kprob_dp(std::span<const double> incident_probs, int k) {
  KProb out;
  out.dist.k = k;
  out.dist.source_degree = incident_probs.size();
  if (k <= 0) {
    out.value = 1.0;
    return out;
  }
  out.dist.probs.assign(static_cast<std::size_t>(k), 0.0);
  fold_lower_tail(incident_probs, out.dist.probs);
  if (incident_probs.size() < static_cast<std::size_t>(k)) {
    out.value = 0.0;
    return out;
  }
  double lower = 0.0;
  for (double v : out.dist.probs) lower += v;
  out.value = clamp01(1.0 - lower);
  return out;
}

KProb ec_remove_edge(const DegreeDistribution& dist, double p_e) {
  if (p_e == 1.0) throw std::domain_error("ec_remove_edge: division by 1 - p_e = 0");
  if (!(p_e > 0.0 && p_e < 1.0)) throw std::invalid_argument("ec_remove_edge: p_e outside (0, 1)");
  KProb out;
  out.dist.k = dist.k;
  out.dist.source_degree = dist.source_degree > 0 ? dist.source_degree - 1 : 0;
  out.dist.probs.resize(dist.probs.size());
  const double q = 1.0 - p_e;
  double lower = 0.0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    double prev = i == 0 ? 0.0 : out.dist.probs[i - 1];
    out.dist.probs[i] = (dist.probs[i] - p_e * prev) / q;
    lower += out.dist.probs[i];
  }
  out.value = 1.0 - lower;
  return out;
}

double beta_tail(double z, int k, std::size_t d) {
  if (k <= 0) return 1.0;
  const auto kk = static_cast<std::size_t>(k);
  if (d < kk) return 0.0;
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 1.0;

  const double odds = z / (1.0 - z);
  const double dd = static_cast<double>(d);
  if (static_cast<double>(kk) > dd * z) {
    // Upper tail carries the smaller mass. Walking up from the extreme term
    // z^d sums increasing terms; it falls back to the
    // saddle-point start at k when z^d underflows.
    double extreme = int_pow(z, d);
    if (extreme > kTinyTerm) {
      double term = extreme;
      double sum = term;
      for (std::size_t i = d; i > kk; --i) {
        term *= static_cast<double>(i) / static_cast<double>(d - i + 1) / odds;
        sum += term;
      }
      return clamp01(sum);
    }
    double term = binomial_pmf(kk, d, z);
    double sum = term;
    for (std::size_t i = kk; i < d && term > sum * 1e-17; ++i) {
      term *= static_cast<double>(d - i) / static_cast<double>(i + 1) * odds;
      sum += term;
    }
    return clamp01(sum);
  }
  // Lower tail is the smaller one, same two strategies mirrored.
  double extreme = int_pow(1.0 - z, d);
  if (extreme > kTinyTerm) {
    double term = extreme;
    double sum = term;
    for (std::size_t i = 0; i + 1 < kk; ++i) {
      term *= static_cast<double>(d - i) / static_cast<double>(i + 1) * odds;
      sum += term;
    }
    return clamp01(1.0 - sum);
  }
  double term = binomial_pmf(kk - 1, d, z);
  double sum = term;
  for (std::size_t i = kk - 1; i >= 1 && term > sum * 1e-17; --i) {
    term *= static_cast<double>(i) / static_cast<double>(d - i + 1) / odds;
    sum += term;
  }
  return clamp01(1.0 - sum);
}

double top_k_product(std::span<const double> sorted_desc_probs, int k) {
  if (k <= 0) return 1.0;
  if (sorted_desc_probs.size() < static_cast<std::size_t>(k)) return 0.0;
  double prod = 1.0;
  for (int i = 0; i < k; ++i) prod *= sorted_desc_probs[static_cast<std::size_t>(i)];
  return prod;
}

double upper_bound(const IncidentSummary& s, int k) {
  if (k <= 0) return 1.0;
  if (s.degree < static_cast<std::size_t>(k)) return 0.0;
  return beta_tail(s.p_max, k, s.degree);
}

double lower_bound(const IncidentSummary& s, int k, BoundMode mode) {
  if (k <= 0) return 1.0;
  if (s.degree < static_cast<std::size_t>(k)) return 0.0;
  double beta_lb = mode == BoundMode::kTopKOnly ? 0.0 : beta_tail(s.p_min, k, s.degree);
  double topk_lb = mode == BoundMode::kBetaOnly ? 0.0 : s.top_k_product;
  return std::max(beta_lb, topk_lb);
}

ProbBounds bounds(std::span<const double> sorted_desc_probs, int k, BoundMode mode) {
  IncidentSummary s;
  s.degree = sorted_desc_probs.size();
  if (!sorted_desc_probs.empty()) {
    s.p_max = sorted_desc_probs.front();
    s.p_min = sorted_desc_probs.back();
  }
  s.top_k_product = top_k_product(sorted_desc_probs, k);
  ProbBounds b;
  b.ub = upper_bound(s, k);
  b.lb = std::min(lower_bound(s, k, mode), b.ub);
  return b;
}

}  // namespace ucf
