#include "ilprior/numerics/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/beta.hpp>

#include "ilprior/errors.hpp"

namespace ilprior {

namespace {

void normalize_in_place(std::vector<double>& w, const char* who) {
  double total = 0.0;
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) {
      throw InvalidArgument(std::string(who) + ": weights must be finite and non-negative");
    }
    total += x;
  }
  if (!(total > 0.0)) throw InvalidArgument(std::string(who) + ": total weight is zero");
  for (double& x : w) x /= total;
}

}  // namespace

Density1D::Density1D(double lo, double hi, std::vector<double> weights)
    : lo_(lo), hi_(hi), masses_(std::move(weights)) {
  if (!(lo_ < hi_)) throw InvalidArgument("Density1D: requires lo < hi");
  if (masses_.size() < 2) throw InvalidArgument("Density1D: requires at least 2 bins");
  normalize_in_place(masses_, "Density1D");
}

Density1D Density1D::uniform(double lo, double hi, std::size_t bins) {
  return Density1D(lo, hi, std::vector<double>(bins, 1.0));
}

Density1D Density1D::beta(double a, double b, double lo, double hi, std::size_t bins) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("Density1D::beta: shape parameters must be > 0");
  std::vector<double> w(bins);
  double prev = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    const double x = static_cast<double>(i + 1) / static_cast<double>(bins);
    const double c = (i + 1 == bins) ? 1.0 : boost::math::ibeta(a, b, x);
    w[i] = std::max(0.0, c - prev);
    prev = c;
  }
  return Density1D(lo, hi, std::move(w));
}

double Density1D::center(std::size_t i) const noexcept {
  return lo_ + (static_cast<double>(i) + 0.5) * width();
}

double Density1D::edge(std::size_t i) const noexcept {
  if (i >= masses_.size()) return hi_;
  return lo_ + static_cast<double>(i) * width();
}

std::size_t Density1D::bin_of(double x) const noexcept {
  if (!(x > lo_)) return 0;
  const auto i = static_cast<std::size_t>((x - lo_) / width());
  return std::min(i, masses_.size() - 1);
}

double Density1D::cdf(std::size_t i) const {
  if (i >= masses_.size()) throw InvalidArgument("Density1D::cdf: bin out of range");
  return std::accumulate(masses_.begin(), masses_.begin() + static_cast<std::ptrdiff_t>(i) + 1, 0.0);
}

double Density1D::mean() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < masses_.size(); ++i) m += masses_[i] * center(i);
  return m;
}

DensityGrid2D::DensityGrid2D(std::size_t resolution, std::vector<double> weights)
    : resolution_(resolution), masses_(std::move(weights)) {
  if (resolution_ < 2) throw InvalidArgument("DensityGrid2D: resolution must be >= 2");
  if (masses_.size() != resolution_ * resolution_) {
    throw InvalidArgument("DensityGrid2D: weight count does not match resolution^2");
  }
  normalize_in_place(masses_, "DensityGrid2D");
}

DensityGrid2D DensityGrid2D::uniform(std::size_t resolution) {
  return DensityGrid2D(resolution, std::vector<double>(resolution * resolution, 1.0));
}

std::size_t DensityGrid2D::index_of(double w) const noexcept {
  const double scaled = std::clamp(w, 0.0, 1.0) * static_cast<double>(resolution_ - 1);
  return static_cast<std::size_t>(std::lround(scaled));
}

std::vector<double> DensityGrid2D::marginal_w0() const {
  std::vector<double> m(resolution_, 0.0);
  for (std::size_t i = 0; i < resolution_; ++i)
    for (std::size_t j = 0; j < resolution_; ++j) m[i] += masses_[i * resolution_ + j];
  return m;
}

std::vector<double> DensityGrid2D::marginal_w1() const {
  std::vector<double> m(resolution_, 0.0);
  for (std::size_t i = 0; i < resolution_; ++i)
    for (std::size_t j = 0; j < resolution_; ++j) m[j] += masses_[i * resolution_ + j];
  return m;
}

}  // namespace ilprior
