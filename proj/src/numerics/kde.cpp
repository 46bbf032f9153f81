#include "ilprior/numerics/kde.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ilprior/errors.hpp"

namespace ilprior {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double resolve_bandwidth(std::span<const double> samples, std::optional<double> explicit_bw,
                         double min_width) {
  if (explicit_bw) {
    if (!(*explicit_bw > 0.0)) throw InvalidArgument("kde: bandwidth must be > 0");
    return *explicit_bw;
  }
  return silverman_bandwidth(samples, min_width);
}

// Adds one kernel's mass over consecutive intervals [edges[i], edges[i+1]].
void accumulate_kernel(double x, double h, std::span<const double> edges, std::vector<double>& out) {
  double prev = normal_cdf((edges[0] - x) / h);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double next = normal_cdf((edges[i + 1] - x) / h);
    out[i] += next - prev;
    prev = next;
  }
}

// Cell edges for grid points 0, 1/(r-1), ..., 1.
std::vector<double> grid_cell_edges(std::size_t resolution) {
  std::vector<double> edges(resolution + 1);
  const double step = 1.0 / static_cast<double>(resolution - 1);
  for (std::size_t i = 0; i <= resolution; ++i) {
    edges[i] = std::clamp((static_cast<double>(i) - 0.5) * step, 0.0, 1.0);
  }
  return edges;
}

}  // namespace

double silverman_bandwidth(std::span<const double> samples, double min_width) {
  if (samples.empty()) throw InvalidArgument("silverman_bandwidth: empty sample");
  const double n = static_cast<double>(samples.size());
  double sd = 0.0;
  if (samples.size() > 1) {
    double m = 0.0;
    for (double s : samples) m += s;
    m /= n;
    double ss = 0.0;
    for (double s : samples) ss += (s - m) * (s - m);
    sd = std::sqrt(ss / (n - 1.0));
  }
  return std::max(1.06 * sd * std::pow(n, -0.2), min_width);
}

Density1D kde_gaussian(std::span<const double> samples, double lo, double hi, std::size_t bins,
                       std::optional<double> bandwidth) {
  if (samples.empty()) throw InvalidArgument("kde_gaussian: empty sample");
  if (!(lo < hi) || bins < 2) throw InvalidArgument("kde_gaussian: invalid support");
  const double width = (hi - lo) / static_cast<double>(bins);
  const double h = resolve_bandwidth(samples, bandwidth, width);

  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) edges[i] = lo + static_cast<double>(i) * width;
  edges[bins] = hi;

  std::vector<double> mass(bins, 0.0);
  for (double x : samples) accumulate_kernel(x, h, edges, mass);
  for (double& m : mass) m = std::max(m, 0.0);
  return Density1D(lo, hi, std::move(mass));
}

DensityGrid2D kde_gaussian_2d(std::span<const std::pair<double, double>> samples,
                              std::size_t resolution, std::optional<double> bandwidth_w0,
                              std::optional<double> bandwidth_w1) {
  if (samples.empty()) throw InvalidArgument("kde_gaussian_2d: empty sample");
  if (resolution < 2) throw InvalidArgument("kde_gaussian_2d: resolution must be >= 2");
  std::vector<double> xs, ys;
  xs.reserve(samples.size());
  ys.reserve(samples.size());
  for (const auto& [x, y] : samples) {
    xs.push_back(x);
    ys.push_back(y);
  }
  const double spacing = 1.0 / static_cast<double>(resolution - 1);
  const double hx = resolve_bandwidth(xs, bandwidth_w0, spacing);
  const double hy = resolve_bandwidth(ys, bandwidth_w1, spacing);
  const std::vector<double> edges = grid_cell_edges(resolution);

  std::vector<double> grid(resolution * resolution, 0.0);
  std::vector<double> mx(resolution), my(resolution);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    std::fill(mx.begin(), mx.end(), 0.0);
    std::fill(my.begin(), my.end(), 0.0);
    accumulate_kernel(xs[s], hx, edges, mx);
    accumulate_kernel(ys[s], hy, edges, my);
    for (std::size_t i = 0; i < resolution; ++i) {
      const double a = std::max(mx[i], 0.0);
      if (a == 0.0) continue;
      double* row = grid.data() + i * resolution;
      for (std::size_t j = 0; j < resolution; ++j) row[j] += a * std::max(my[j], 0.0);
    }
  }
  return DensityGrid2D(resolution, std::move(grid));
}

}  // namespace ilprior
