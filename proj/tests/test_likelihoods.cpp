#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ilprior/errors.hpp"
#include "ilprior/likelihoods/likelihoods.hpp"

using namespace ilprior;

TEST(EffectProbability, Arithmetic) {
  EXPECT_NEAR(effect_probability({0.3, 0.7}, CausalDirection::Generative, true), 0.79, 1e-15);
  EXPECT_NEAR(effect_probability({0.7, 0.3}, CausalDirection::Preventive, true), 0.49, 1e-15);
  for (auto dir : {CausalDirection::Generative, CausalDirection::Preventive})
    EXPECT_DOUBLE_EQ(effect_probability({0.42, 0.9}, dir, false), 0.42);
}

TEST(EffectProbability, Monotonicity) {
  for (int j = 0; j <= 10; ++j) {
    const double w1 = j / 10.0;
    for (auto dir : {CausalDirection::Generative, CausalDirection::Preventive}) {
      for (bool present : {true, false}) {
        double prev = -1;
        for (int i = 0; i <= 10; ++i) {
          const double p = effect_probability({i / 10.0, w1}, dir, present);
          EXPECT_GE(p, prev - 1e-15);
          prev = p;
        }
      }
    }
  }
  for (int i = 0; i <= 10; ++i) {
    double prev = 2;
    for (int j = 0; j <= 10; ++j) {
      const double p = effect_probability({i / 10.0, j / 10.0}, CausalDirection::Preventive, true);
      EXPECT_LE(p, prev + 1e-15);
      prev = p;
    }
  }
}

TEST(CausalLogLikelihood, CertainOutcomes) {
  EXPECT_DOUBLE_EQ(causal_log_likelihood({16, 16, 0, 0}, {0, 0}, CausalDirection::Generative), 0.0);
  EXPECT_DOUBLE_EQ(causal_log_likelihood({16, 16, 16, 0}, {0, 1}, CausalDirection::Generative), 0.0);
  EXPECT_EQ(causal_log_likelihood({16, 16, 1, 0}, {0, 0}, CausalDirection::Generative),
            -std::numeric_limits<double>::infinity());
}

TEST(CausalLogLikelihood, ExactRationalOracle) {
  // Bin(4|8, 5/8) * Bin(2|8, 1/4) = 9041878125 / 137438953472 exactly.
  const double v = causal_log_likelihood({8, 8, 4, 2}, {0.25, 0.5}, CausalDirection::Generative);
  EXPECT_NEAR(v, -2.721312933755751, 1e-9);
  EXPECT_NEAR(v, std::log(9041878125.0 / 137438953472.0), 1e-12);
}

TEST(CausalLogLikelihood, SumsToOne) {
  for (auto dir : {CausalDirection::Generative, CausalDirection::Preventive}) {
    for (const CausalHypothesis h : {CausalHypothesis{0.2, 0.9}, CausalHypothesis{0.0, 0.5}, CausalHypothesis{1, 1},
                                     CausalHypothesis{0.5, 0.0}}) {
      double total = 0;
      for (int kp = 0; kp <= 5; ++kp)
        for (int km = 0; km <= 6; ++km) total += std::exp(causal_log_likelihood({5, 6, kp, km}, h, dir));
      EXPECT_NEAR(total, 1.0, 1e-9);
    }
  }
}

TEST(CausalLogLikelihood, GridMatchesPointwise) {
  for (auto dir : {CausalDirection::Generative, CausalDirection::Preventive}) {
    for (const CausalObservation d : {CausalObservation{16, 16, 8, 8}, CausalObservation{8, 32, 0, 32},
                                      CausalObservation{32, 8, 32, 0}, CausalObservation{0, 0, 0, 0}}) {
      const auto grid = causal_log_likelihood_grid(d, dir, 21);
      for (std::size_t i = 0; i < 21; ++i) {
        for (std::size_t j = 0; j < 21; ++j) {
          const double expect = causal_log_likelihood(d, {i / 20.0, j / 20.0}, dir);
          const double got = grid[i * 21 + j];
          if (std::isinf(expect)) {
            EXPECT_TRUE(std::isinf(got) && got < 0) << i << ',' << j;
          } else {
            EXPECT_NEAR(got, expect, 1e-9 * std::max(1.0, std::abs(expect))) << i << ',' << j;
          }
        }
      }
    }
  }
}

TEST(SampleCausalObservation, DegenerateHypotheses) {
  RandomStream r(1);
  for (int i = 0; i < 200; ++i) {
    const auto d = sample_causal_observation(r, {0, 0}, CausalDirection::Generative, 16, 16);
    EXPECT_EQ(d.k_plus, 0);
    EXPECT_EQ(d.k_minus, 0);
    for (auto dir : {CausalDirection::Generative, CausalDirection::Preventive})
      EXPECT_EQ(sample_causal_observation(r, {1, 0}, dir, 16, 16).k_minus, 16);
  }
}

TEST(SampleCausalObservation, MeanWithinThreeSigma) {
  RandomStream r(2);
  double s = 0;
  for (int i = 0; i < 10000; ++i) s += sample_causal_observation(r, {0.3, 0.7}, CausalDirection::Generative, 16, 16).k_plus;
  EXPECT_NEAR(s / 10000, 12.64, 0.15);
}

TEST(SampleCausalObservation, AgreesWithDensity) {
  // Empirical cell frequencies against exp(log-likelihood), 3 sigma per cell.
  constexpr int kDraws = 100000;
  RandomStream r(3);
  const CausalHypothesis h{0.35, 0.6};
  for (auto dir : {CausalDirection::Generative, CausalDirection::Preventive}) {
    std::vector<int> counts(81, 0);
    for (int i = 0; i < kDraws; ++i) {
      const auto d = sample_causal_observation(r, h, dir, 8, 8);
      ++counts[static_cast<std::size_t>(d.k_plus * 9 + d.k_minus)];
    }
    for (int kp = 0; kp <= 8; ++kp) {
      for (int km = 0; km <= 8; ++km) {
        const double p = std::exp(causal_log_likelihood({8, 8, kp, km}, h, dir));
        const double sigma = std::sqrt(kDraws * p * (1 - p));
        EXPECT_LE(std::abs(counts[static_cast<std::size_t>(kp * 9 + km)] - kDraws * p), 3 * sigma + 1.5);
      }
    }
  }
}

TEST(SampleScalarObservation, Examples) {
  RandomStream r(4);
  LikelihoodSpec lifespan{LikelihoodFamily::UniformInteger, 1};
  LikelihoodSpec mars{LikelihoodFamily::UniformInteger, 2024};
  LikelihoodSpec coin{LikelihoodFamily::Binomial, 0, 10};
  double s = 0;
  for (int i = 0; i < 10000; ++i) {
    EXPECT_DOUBLE_EQ(std::get<ProbeObservation>(sample_scalar_observation(r, 1, lifespan)).probe, 1.0);
    EXPECT_DOUBLE_EQ(std::get<ProbeObservation>(sample_scalar_observation(r, 2024, mars)).probe, 2024.0);
    s += std::get<CoinObservation>(sample_scalar_observation(r, 0.5, coin)).k_heads;
  }
  EXPECT_NEAR(s / 10000, 5.0, 0.05);
}

TEST(SampleScalarObservation, SupportAndErrors) {
  RandomStream r(5);
  LikelihoodSpec integer{LikelihoodFamily::UniformInteger, 1};
  LikelihoodSpec real{LikelihoodFamily::UniformReal, 0};
  for (int i = 0; i < 10000; ++i) {
    const double h = 1 + r.uniform01() * 149;
    const double p = std::get<ProbeObservation>(sample_scalar_observation(r, h, integer)).probe;
    EXPECT_GE(p, 1);
    EXPECT_LE(p, h);
    EXPECT_EQ(p, std::floor(p));
    const double q = std::get<ProbeObservation>(sample_scalar_observation(r, h, real)).probe;
    EXPECT_GE(q, 0);
    EXPECT_LE(q, h);
  }
  EXPECT_THROW(sample_scalar_observation(r, 0.5, integer), DegenerateHypothesis);
  EXPECT_THROW(sample_scalar_observation(r, -1, real), DegenerateHypothesis);
}

TEST(LogLikelihood, UniformFamilies) {
  LikelihoodSpec integer{LikelihoodFamily::UniformInteger, 1};
  EXPECT_NEAR(log_likelihood(integer, ProbeObservation{30}, 80.0), -std::log(80.0), 1e-12);
  EXPECT_EQ(log_likelihood(integer, ProbeObservation{30}, 20.0), -std::numeric_limits<double>::infinity());
  LikelihoodSpec real{LikelihoodFamily::UniformReal, 0};
  EXPECT_NEAR(log_likelihood(real, ProbeObservation{10.5}, 40.0), -std::log(40.0), 1e-12);
  EXPECT_THROW(log_likelihood(real, CoinObservation{10, 3}, 40.0), InvalidArgument);
}

TEST(Names, RoundTrip) {
  for (auto f : {LikelihoodFamily::NoisyOr, LikelihoodFamily::NoisyAndNot, LikelihoodFamily::Binomial,
                 LikelihoodFamily::UniformInteger, LikelihoodFamily::UniformReal})
    EXPECT_EQ(parse_likelihood_family(to_string(f)), f);
  EXPECT_EQ(parse_direction("preventive"), CausalDirection::Preventive);
  EXPECT_THROW(parse_direction("sideways"), InvalidArgument);
  EXPECT_EQ((LikelihoodSpec{LikelihoodFamily::UniformInteger, 1}).describe(), "U[1, h]");
  EXPECT_EQ((LikelihoodSpec{LikelihoodFamily::Binomial, 0, 10}).describe(), "Bin(10, h)");
}
