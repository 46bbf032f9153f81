#include "ilprior/numerics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "ilprior/errors.hpp"

namespace ilprior {

namespace {

struct RankedPool {
  std::vector<long> doubled_ranks;  // 2 * midrank, per pooled element, in input order
  double tie_term = 0.0;            // sum over tie groups of t^3 - t
};

RankedPool rank_pool(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() + b.size();
  std::vector<std::pair<double, std::size_t>> pool;
  pool.reserve(n);
  for (std::size_t i = 0; i < a.size(); ++i) pool.emplace_back(a[i], i);
  for (std::size_t i = 0; i < b.size(); ++i) pool.emplace_back(b[i], a.size() + i);
  std::sort(pool.begin(), pool.end());

  RankedPool out;
  out.doubled_ranks.assign(n, 0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && pool[j].first == pool[i].first) ++j;
    // positions i..j-1 (0-based) share midrank (i + 1 + j) / 2
    const long doubled = static_cast<long>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) out.doubled_ranks[pool[k].second] = doubled;
    const double t = static_cast<double>(j - i);
    out.tie_term += t * t * t - t;
    i = j;
  }
  return out;
}

// Counts subsets of size n1 by doubled rank sum and returns the share whose
// sum lies at least as far from its null mean as the observed one.
double exact_p_value(const std::vector<long>& doubled_ranks, std::size_t n1, long observed) {
  const long max_sum = std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), 0L);
  std::vector<std::vector<double>> ways(n1 + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
  ways[0][0] = 1.0;
  std::size_t seen = 0;
  for (long r : doubled_ranks) {
    ++seen;
    for (std::size_t m = std::min(n1, seen); m >= 1; --m) {
      auto& dst = ways[m];
      const auto& src = ways[m - 1];
      for (long s = max_sum; s >= r; --s) dst[static_cast<std::size_t>(s)] += src[static_cast<std::size_t>(s - r)];
    }
  }
  // Null mean of the doubled sum is n1 * (N + 1); compare on the doubled
  // scale so the arithmetic stays integral.
  const long n = static_cast<long>(doubled_ranks.size());
  const long centre = static_cast<long>(n1) * (n + 1);
  const long observed_dev = std::labs(observed - centre);
  double extreme = 0.0, total = 0.0;
  for (long s = 0; s <= max_sum; ++s) {
    const double c = ways[n1][static_cast<std::size_t>(s)];
    total += c;
    if (std::labs(s - centre) >= observed_dev) extreme += c;
  }
  return std::min(1.0, extreme / total);
}

}  // namespace

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("mann_whitney_u: empty sample");
  const RankedPool ranked = rank_pool(a, b);
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double total_n = n1 + n2;

  long doubled_sum_a = 0;
  for (std::size_t i = 0; i < a.size(); ++i) doubled_sum_a += ranked.doubled_ranks[i];
  const double u = static_cast<double>(doubled_sum_a) / 2.0 - n1 * (n1 + 1.0) / 2.0;

  MannWhitneyResult result;
  result.u = u;

  if (a.size() + b.size() <= kMannWhitneyExactMaxTotal) {
    // Swapping a and b maps each subset to its complement, whose sum is
    // equally far from its own mean; the counts, and so p, are identical.
    result.p_value = exact_p_value(ranked.doubled_ranks, a.size(), doubled_sum_a);
    return result;
  }

  const double mu = n1 * n2 / 2.0;
  const double var = n1 * n2 / 12.0 * ((total_n + 1.0) - ranked.tie_term / (total_n * (total_n - 1.0)));
  if (!(var > 0.0)) {
    result.p_value = 1.0;
    return result;
  }
  const double z = (std::fabs(u - mu) - 0.5) / std::sqrt(var);
  result.p_value = z <= 0.0 ? 1.0 : std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return result;
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("pearson_r: length mismatch");
  if (x.size() < 2) throw InvalidArgument("pearson_r: need at least 2 points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw InvalidArgument("pearson_r: undefined correlation for constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double rmsd(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("rmsd: length mismatch");
  if (x.empty()) throw InvalidArgument("rmsd: empty input");
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) ss += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(ss / static_cast<double>(x.size()));
}

double mean(std::span<const double> x) {
  if (x.empty()) throw InvalidArgument("mean: empty input");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double median(std::span<const double> x) {
  if (x.empty()) throw InvalidArgument("median: empty input");
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double ks_distance_binned(std::span<const std::size_t> indices,
                          std::span<const double> reference_masses) {
  if (indices.empty()) throw InvalidArgument("ks_distance: empty sample");
  std::vector<double> counts(reference_masses.size(), 0.0);
  for (std::size_t i : indices) {
    if (i >= counts.size()) throw InvalidArgument("ks_distance: bin index out of range");
    counts[i] += 1.0;
  }
  const double n = static_cast<double>(indices.size());
  double emp = 0.0, ref = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    emp += counts[i] / n;
    ref += reference_masses[i];
    worst = std::max(worst, std::fabs(emp - ref));
  }
  return worst;
}

double ks_distance(std::span<const double> samples, const Density1D& reference) {
  std::vector<std::size_t> idx;
  idx.reserve(samples.size());
  for (double s : samples) idx.push_back(reference.bin_of(s));
  return ks_distance_binned(idx, reference.masses());
}

}  // namespace ilprior
