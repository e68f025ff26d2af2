#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "commbench/rng.hpp"

namespace commbench {

// Bounded discrete power law P(k) proportional to k^(-exponent) on [min, max].
struct PowerLawSpec {
  double exponent = 3.0;
  int min = 2;
  int max = 1000;

  void validate() const {
    if (min < 1) throw std::invalid_argument("power law: min must be >= 1");
    if (min > max) throw std::invalid_argument("power law: min > max");
    if (exponent <= 1.0) throw std::invalid_argument("power law: exponent must be > 1");
  }
};

namespace detail {

inline std::vector<double> power_law_weights(const PowerLawSpec& spec) {
  spec.validate();
  std::vector<double> w(spec.max - spec.min + 1);
  for (int k = spec.min; k <= spec.max; ++k)
    w[k - spec.min] = std::pow(static_cast<double>(k), -spec.exponent);
  return w;
}

}  // namespace detail

// Exact truncated mean by direct summation.
inline double power_law_mean(const PowerLawSpec& spec) {
  auto w = detail::power_law_weights(spec);
  double z = 0.0, s = 0.0;
  for (int k = spec.min; k <= spec.max; ++k) {
    z += w[k - spec.min];
    s += k * w[k - spec.min];
  }
  return s / z;
}

// Exact CDF table; entry i is P(K <= min + i).
inline std::vector<double> power_law_cdf(const PowerLawSpec& spec) {
  auto w = detail::power_law_weights(spec);
  std::vector<double> cdf(w.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    cdf[i] = acc;
  }
  for (auto& c : cdf) c /= acc;
  cdf.back() = 1.0;
  return cdf;
}

// Smallest-|E[K] - target| integer k_min for a power law truncated to
// [k_min, k_max]. The truncated mean is strictly increasing in k_min, so a
// binary search brackets the target and the closer neighbor wins (ties go to
// the smaller k_min). Infeasible when even k_min = k_max - 1 undershoots.
inline int solve_k_min(double target_mean, double gamma, int k_max) {
  if (k_max < 2) throw std::invalid_argument("solve_k_min: k_max must be >= 2");
  if (!(target_mean > 1.0) || !(target_mean < k_max))
    throw std::invalid_argument("solve_k_min: target mean must be in (1, k_max)");
  if (gamma <= 1.0) throw std::invalid_argument("solve_k_min: gamma must be > 1");

  auto mean_at = [&](int k_min) { return power_law_mean({gamma, k_min, k_max}); };
  if (mean_at(k_max - 1) < target_mean)
    throw std::runtime_error("solve_k_min: infeasible, k_min = k_max - 1 undershoots target mean " +
                             std::to_string(target_mean));

  int lo = 1, hi = k_max - 1;  // find smallest k_min with mean >= target
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (mean_at(mid) >= target_mean)
      hi = mid;
    else
      lo = mid + 1;
  }
  if (lo > 1 && std::abs(mean_at(lo - 1) - target_mean) <= std::abs(mean_at(lo) - target_mean))
    return lo - 1;
  return lo;
}

// i.i.d. draws by inverse transform over the exact discrete CDF.
inline std::vector<int> sample_power_law(int count, const PowerLawSpec& spec, Rng& rng) {
  auto cdf = power_law_cdf(spec);
  std::vector<int> out(count);
  for (int i = 0; i < count; ++i) {
    double u = rng.real01();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    out[i] = spec.min + static_cast<int>(it - cdf.begin());
  }
  return out;
}

// Community sizes drawn from the power law until they cover n, with the
// final draw shrunk to close the gap. A shrunken value below the floor is
// dropped and its deficit redistributed by incrementing the smallest
// communities, which keeps every size inside [min, max]. The effective
// floor is 2: a size-1 community cannot host any internal degree.
inline std::vector<int> sample_community_sizes(int n, const PowerLawSpec& spec, Rng& rng) {
  PowerLawSpec eff = spec;
  eff.min = std::max(spec.min, 2);
  if (eff.min > eff.max)
    throw std::invalid_argument("community sizes: max bound below the effective floor of 2");
  if (n < eff.min)
    throw std::invalid_argument("community sizes: n = " + std::to_string(n) +
                                " is below the minimum community size " + std::to_string(eff.min));

  auto cdf = power_law_cdf(eff);
  std::vector<int> sizes;
  long long cum = 0;
  while (cum < n) {
    double u = rng.real01();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    int s = eff.min + static_cast<int>(it - cdf.begin());
    sizes.push_back(s);
    cum += s;
  }
  if (cum > n) {
    int shrunk = sizes.back() - static_cast<int>(cum - n);
    if (shrunk >= eff.min) {
      sizes.back() = shrunk;
    } else {
      sizes.pop_back();
      int deficit = shrunk;  // >= 1 because the previous cumulative sum was < n
      while (deficit > 0) {
        auto smallest = sizes.end();
        for (auto it2 = sizes.begin(); it2 != sizes.end(); ++it2)
          if (*it2 < eff.max && (smallest == sizes.end() || *it2 < *smallest)) smallest = it2;
        if (smallest == sizes.end())
          throw std::runtime_error("community sizes: cannot redistribute remainder within bounds");
        ++*smallest;
        --deficit;
      }
    }
  }
  return sizes;
}

// Per-node mixing coefficient distribution. `constant` reproduces the
// classic single-mu benchmark; `uniform` spreads mu over a range;
// `quantile_table` maps cumulative probability to mu by linear
// interpolation, allowing arbitrary empirical distributions.
struct MixingSpec {
  enum class Kind { Constant, UniformRange, QuantileTable };

  Kind kind = Kind::Constant;
  double value = 0.0;                             // Constant
  double low = 0.0, high = 1.0;                   // UniformRange
  std::vector<std::pair<double, double>> table;   // QuantileTable: (quantile, mu)

  static MixingSpec constant(double v) {
    MixingSpec s;
    s.kind = Kind::Constant;
    s.value = v;
    return s;
  }
  static MixingSpec uniform(double lo, double hi) {
    MixingSpec s;
    s.kind = Kind::UniformRange;
    s.low = lo;
    s.high = hi;
    return s;
  }
  static MixingSpec quantile_table(std::vector<std::pair<double, double>> pts) {
    MixingSpec s;
    s.kind = Kind::QuantileTable;
    s.table = std::move(pts);
    return s;
  }

  void validate() const {
    switch (kind) {
      case Kind::Constant:
        if (value < 0.0 || value > 1.0)
          throw std::invalid_argument("mixing: constant mu must lie in [0,1]");
        break;
      case Kind::UniformRange:
        if (low < 0.0 || high > 1.0 || low > high)
          throw std::invalid_argument("mixing: uniform range must satisfy 0 <= low <= high <= 1");
        break;
      case Kind::QuantileTable: {
        if (table.size() < 2) throw std::invalid_argument("mixing: quantile table needs >= 2 points");
        if (table.front().first != 0.0 || table.back().first != 1.0)
          throw std::invalid_argument("mixing: quantile table must span quantiles 0 to 1");
        for (std::size_t i = 0; i < table.size(); ++i) {
          auto [q, v] = table[i];
          if (v < 0.0 || v > 1.0) throw std::invalid_argument("mixing: table values must lie in [0,1]");
          if (i > 0 && (q < table[i - 1].first || v < table[i - 1].second))
            throw std::invalid_argument("mixing: quantile table must be nondecreasing");
        }
        break;
      }
    }
  }
};

inline std::vector<double> sample_mixing(int count, const MixingSpec& spec, Rng& rng) {
  spec.validate();
  std::vector<double> out(count);
  switch (spec.kind) {
    case MixingSpec::Kind::Constant:
      std::fill(out.begin(), out.end(), spec.value);
      break;
    case MixingSpec::Kind::UniformRange:
      for (auto& x : out) x = rng.real_in(spec.low, spec.high);
      break;
    case MixingSpec::Kind::QuantileTable:
      for (auto& x : out) {
        double u = rng.real01();
        std::size_t i = 1;
        while (i + 1 < spec.table.size() && spec.table[i].first < u) ++i;
        auto [q0, v0] = spec.table[i - 1];
        auto [q1, v1] = spec.table[i];
        x = (q1 > q0) ? v0 + (v1 - v0) * (u - q0) / (q1 - q0) : v0;
      }
      break;
  }
  return out;
}

// A configuration-model wiring needs an even stub count; bump the lowest-id
// node that still has headroom (or trim it, in the degenerate case where
// every node already sits at the cap).
inline void ensure_even_degree_sum(std::vector<int>& degrees, int k_max) {
  long long sum = 0;
  for (int d : degrees) sum += d;
  if (sum % 2 == 0) return;
  for (auto& d : degrees)
    if (d < k_max) {
      ++d;
      return;
    }
  if (!degrees.empty()) --degrees.front();
}

}  // namespace commbench
