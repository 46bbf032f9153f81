#include "ilprior/likelihoods/likelihoods.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

#include "ilprior/errors.hpp"

namespace ilprior {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// m * log(x) with the convention 0 * log(0) = 0.
double mlog(int m, double log_x) { return m == 0 ? 0.0 : m * log_x; }

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

std::string format_bound(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

template <class T>
const T& expect(const auto& variant, const char* what) {
  if (const T* p = std::get_if<T>(&variant)) return *p;
  throw InvalidArgument(std::string("log_likelihood: expected ") + what);
}

}  // namespace

std::string LikelihoodSpec::describe() const {
  switch (family) {
    case LikelihoodFamily::NoisyOr:
      return "noisy-OR";
    case LikelihoodFamily::NoisyAndNot:
      return "noisy-AND-NOT";
    case LikelihoodFamily::Binomial:
      return "Bin(" + std::to_string(trials) + ", h)";
    case LikelihoodFamily::UniformInteger:
    case LikelihoodFamily::UniformReal:
      return "U[" + format_bound(lower) + ", h]";
  }
  return "?";
}

const char* to_string(CausalDirection dir) noexcept {
  return dir == CausalDirection::Generative ? "generative" : "preventive";
}

CausalDirection parse_direction(const std::string& text) {
  if (text == "generative") return CausalDirection::Generative;
  if (text == "preventive") return CausalDirection::Preventive;
  throw InvalidArgument("unknown causal direction '" + text + "'");
}

const char* to_string(LikelihoodFamily family) noexcept {
  switch (family) {
    case LikelihoodFamily::NoisyOr: return "noisy-or";
    case LikelihoodFamily::NoisyAndNot: return "noisy-and-not";
    case LikelihoodFamily::Binomial: return "binomial";
    case LikelihoodFamily::UniformInteger: return "uniform-integer";
    case LikelihoodFamily::UniformReal: return "uniform-real";
  }
  return "?";
}

LikelihoodFamily parse_likelihood_family(const std::string& text) {
  for (auto f : {LikelihoodFamily::NoisyOr, LikelihoodFamily::NoisyAndNot, LikelihoodFamily::Binomial,
                 LikelihoodFamily::UniformInteger, LikelihoodFamily::UniformReal}) {
    if (text == to_string(f)) return f;
  }
  throw InvalidArgument("unknown likelihood family '" + text + "'");
}

double effect_probability(const CausalHypothesis& h, CausalDirection dir, bool c_present) noexcept {
  if (!c_present) return h.w0;
  if (dir == CausalDirection::Generative) return 1.0 - (1.0 - h.w0) * (1.0 - h.w1);
  return h.w0 * (1.0 - h.w1);
}

double log_binomial_pmf(int k, int n, double p) {
  if (k < 0 || k > n) return kNegInf;
  if (p <= 0.0) return k == 0 ? 0.0 : kNegInf;
  if (p >= 1.0) return k == n ? 0.0 : kNegInf;
  return log_choose(n, k) + k * std::log(p) + (n - k) * std::log1p(-p);
}

double causal_log_likelihood(const CausalObservation& d, const CausalHypothesis& h, CausalDirection dir) {
  const double present = log_binomial_pmf(d.k_plus, d.n_c_plus, effect_probability(h, dir, true));
  if (present == kNegInf) return kNegInf;
  return present + log_binomial_pmf(d.k_minus, d.n_c_minus, effect_probability(h, dir, false));
}

std::vector<double> causal_log_likelihood_grid(const CausalObservation& d, CausalDirection dir,
                                               std::size_t resolution) {
  if (resolution < 2) throw InvalidArgument("causal_log_likelihood_grid: resolution must be >= 2");
  std::vector<double> out(resolution * resolution, kNegInf);
  if (d.k_plus < 0 || d.k_plus > d.n_c_plus || d.k_minus < 0 || d.k_minus > d.n_c_minus) return out;

  std::vector<double> w(resolution), log_w(resolution), log_1mw(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    w[i] = static_cast<double>(i) / static_cast<double>(resolution - 1);
    log_w[i] = safe_log(w[i]);
    log_1mw[i] = safe_log(1.0 - w[i]);
  }
  const double constant = log_choose(d.n_c_plus, d.k_plus) + log_choose(d.n_c_minus, d.k_minus);
  const int miss_plus = d.n_c_plus - d.k_plus;
  const int miss_minus = d.n_c_minus - d.k_minus;

  for (std::size_t i = 0; i < resolution; ++i) {
    const double absent = mlog(d.k_minus, log_w[i]) + mlog(miss_minus, log_1mw[i]);
    if (absent == kNegInf) continue;
    double* row = out.data() + i * resolution;
    for (std::size_t j = 0; j < resolution; ++j) {
      double present;
      if (dir == CausalDirection::Generative) {
        // p(e+|C+) = 1 - q with q = (1 - w0)(1 - w1)
        const double q = (1.0 - w[i]) * (1.0 - w[j]);
        present = mlog(d.k_plus, q < 1.0 ? std::log1p(-q) : kNegInf) + mlog(miss_plus, log_1mw[i] + log_1mw[j]);
      } else {
        const double p = w[i] * (1.0 - w[j]);
        present = mlog(d.k_plus, log_w[i] + log_1mw[j]) + mlog(miss_plus, p < 1.0 ? std::log1p(-p) : kNegInf);
      }
      if (present == kNegInf) continue;
      row[j] = constant + absent + present;
    }
  }
  return out;
}

CausalObservation sample_causal_observation(RandomStream& rng, const CausalHypothesis& h,
                                            CausalDirection dir, int n_c_plus, int n_c_minus) {
  CausalObservation d;
  d.n_c_plus = n_c_plus;
  d.n_c_minus = n_c_minus;
  d.k_plus = sample_binomial(rng, n_c_plus, effect_probability(h, dir, true));
  d.k_minus = sample_binomial(rng, n_c_minus, effect_probability(h, dir, false));
  return d;
}

Observation sample_scalar_observation(RandomStream& rng, double h, const LikelihoodSpec& spec) {
  switch (spec.family) {
    case LikelihoodFamily::Binomial:
      if (!(h >= 0.0 && h <= 1.0)) throw DegenerateHypothesis("coin hypothesis outside [0, 1]");
      return CoinObservation{spec.trials, sample_binomial(rng, spec.trials, h)};
    case LikelihoodFamily::UniformInteger: {
      if (!(h >= spec.lower)) throw DegenerateHypothesis("hypothesis below the likelihood's lower bound");
      const auto lo = static_cast<std::int64_t>(std::ceil(spec.lower));
      const auto hi = std::max(lo, static_cast<std::int64_t>(std::floor(h)));
      return ProbeObservation{static_cast<double>(sample_uniform_int(rng, lo, hi))};
    }
    case LikelihoodFamily::UniformReal:
      if (!(h >= spec.lower)) throw DegenerateHypothesis("hypothesis below the likelihood's lower bound");
      return ProbeObservation{sample_uniform_real(rng, spec.lower, h)};
    case LikelihoodFamily::NoisyOr:
    case LikelihoodFamily::NoisyAndNot:
      break;
  }
  throw InvalidArgument("sample_scalar_observation: causal family needs a causal hypothesis");
}

Observation sample_observation(RandomStream& rng, const LikelihoodSpec& spec, const Hypothesis& h) {
  if (spec.is_causal()) {
    const auto& ch = expect<CausalHypothesis>(h, "a causal hypothesis");
    return sample_causal_observation(rng, ch, spec.direction(), spec.n_c_plus, spec.n_c_minus);
  }
  return sample_scalar_observation(rng, expect<double>(h, "a scalar hypothesis"), spec);
}

double log_likelihood(const LikelihoodSpec& spec, const Observation& d, const Hypothesis& h) {
  switch (spec.family) {
    case LikelihoodFamily::NoisyOr:
    case LikelihoodFamily::NoisyAndNot:
      return causal_log_likelihood(expect<CausalObservation>(d, "a causal observation"),
                                   expect<CausalHypothesis>(h, "a causal hypothesis"), spec.direction());
    case LikelihoodFamily::Binomial: {
      const auto& c = expect<CoinObservation>(d, "a coin observation");
      return log_binomial_pmf(c.k_heads, c.n_flips, expect<double>(h, "a scalar hypothesis"));
    }
    case LikelihoodFamily::UniformInteger: {
      const double x = expect<ProbeObservation>(d, "a probe observation").probe;
      const double hv = expect<double>(h, "a scalar hypothesis");
      const double lo = std::ceil(spec.lower);
      if (!(hv >= spec.lower)) return kNegInf;
      const double top = std::max(lo, std::floor(hv));
      if (x != std::floor(x) || x < lo || x > top) return kNegInf;
      return -std::log(top - lo + 1.0);
    }
    case LikelihoodFamily::UniformReal: {
      const double x = expect<ProbeObservation>(d, "a probe observation").probe;
      const double hv = expect<double>(h, "a scalar hypothesis");
      if (!(hv >= spec.lower) || x < spec.lower || x > hv) return kNegInf;
      if (hv == spec.lower) return 0.0;
      return -std::log(hv - spec.lower);
    }
  }
  return kNegInf;
}

}  // namespace ilprior
