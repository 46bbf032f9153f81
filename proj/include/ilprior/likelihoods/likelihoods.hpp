#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ilprior/numerics/random.hpp"

namespace ilprior {

/// Strengths of the background cause (w0) and the candidate cause (w1).
struct CausalHypothesis {
  double w0 = 0.0;
  double w1 = 0.0;
  friend bool operator==(const CausalHypothesis&, const CausalHypothesis&) = default;
};

enum class CausalDirection { Generative, Preventive };

/// Effect counts among items with the candidate cause present (plus) and absent (minus).
struct CausalObservation {
  int n_c_plus = 0;
  int n_c_minus = 0;
  int k_plus = 0;
  int k_minus = 0;
  friend bool operator==(const CausalObservation&, const CausalObservation&) = default;
};

struct CoinObservation {
  int n_flips = 0;
  int k_heads = 0;
  friend bool operator==(const CoinObservation&, const CoinObservation&) = default;
};

/// A scalar probe: current age, earnings so far, first-stage year, ...
struct ProbeObservation {
  double probe = 0.0;
  friend bool operator==(const ProbeObservation&, const ProbeObservation&) = default;
};

using Observation = std::variant<CausalObservation, CoinObservation, ProbeObservation>;

/// Scalar hypotheses (proportions, quantities, years) are plain doubles.
using Hypothesis = std::variant<double, CausalHypothesis>;

enum class LikelihoodFamily {
  NoisyOr,         // generative causal strengths
  NoisyAndNot,     // preventive causal strengths
  Binomial,        // Bin(trials, h)
  UniformInteger,  // integer probe uniform on [lower, floor(h)]
  UniformReal,     // real probe uniform on [lower, h]
};

struct LikelihoodSpec {
  LikelihoodFamily family = LikelihoodFamily::UniformReal;
  double lower = 0.0;  // uniform families
  int trials = 10;     // binomial
  int n_c_plus = 16;   // causal sample sizes
  int n_c_minus = 16;

  bool is_causal() const noexcept {
    return family == LikelihoodFamily::NoisyOr || family == LikelihoodFamily::NoisyAndNot;
  }
  CausalDirection direction() const noexcept {
    return family == LikelihoodFamily::NoisyAndNot ? CausalDirection::Preventive
                                                   : CausalDirection::Generative;
  }
  /// Short label, e.g. "U[1, h]", "Bin(10, h)", "noisy-OR".
  std::string describe() const;
};

const char* to_string(CausalDirection dir) noexcept;
CausalDirection parse_direction(const std::string& text);
const char* to_string(LikelihoodFamily family) noexcept;
LikelihoodFamily parse_likelihood_family(const std::string& text);

/// p(e+ | C present/absent) under noisy-OR (generative) or noisy-AND-NOT (preventive).
double effect_probability(const CausalHypothesis& h, CausalDirection dir, bool c_present) noexcept;

/// log Bin(k | n, p); -infinity when the count is impossible.
double log_binomial_pmf(int k, int n, double p);

/// Sum of the two group log-likelihoods; -infinity when an observed count
/// has probability zero.
double causal_log_likelihood(const CausalObservation& d, const CausalHypothesis& h,
                             CausalDirection dir);

/// causal_log_likelihood at every point of a resolution x resolution grid
/// over [0, 1]^2 (row-major, w0 rows).
std::vector<double> causal_log_likelihood_grid(const CausalObservation& d, CausalDirection dir,
                                               std::size_t resolution);

CausalObservation sample_causal_observation(RandomStream& rng, const CausalHypothesis& h,
                                            CausalDirection dir, int n_c_plus, int n_c_minus);

/// Coin: k ~ Bin(trials, h). Uniform families: probe on [lower, h].
/// Throws DegenerateHypothesis when h is outside the family's support.
Observation sample_scalar_observation(RandomStream& rng, double h, const LikelihoodSpec& spec);

/// Draws the next observation for any family.
Observation sample_observation(RandomStream& rng, const LikelihoodSpec& spec, const Hypothesis& h);

/// log p(d | h) for any family (mass for discrete observations, density for
/// UniformReal). Returns -infinity for impossible data. Throws
/// InvalidArgument on a family/observation/hypothesis kind mismatch.
double log_likelihood(const LikelihoodSpec& spec, const Observation& d, const Hypothesis& h);

}  // namespace ilprior
