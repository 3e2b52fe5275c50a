// Copyright 2026 The lassorw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lassorw/penalty.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <random>

#include "lassorw/errors.hpp"

namespace lassorw {

void PrintTo(const PenaltySpec& spec, std::ostream* os) {
  *os << to_string(spec.kind());
}

namespace {

using Big = boost::multiprecision::cpp_dec_float_50;

const PenaltySpec kLog = PenaltySpec::log(0.1);
const PenaltySpec kLq = PenaltySpec::lq(0.1, 0.5);
const PenaltySpec kMcp = PenaltySpec::mcp(2.0);

TEST(PenaltyValue, LogAtOneIsZero) {
  EXPECT_DOUBLE_EQ(g_value(kLog, 0.9), std::log(1.0));
  EXPECT_NEAR(g_value(kLog, 0.9), 0.0, 1e-15);
}

TEST(PenaltyValue, McpAtAlpha) {
  const Big s = 2, alpha = 2;
  const Big expect = alpha * s - s * s / 2;
  EXPECT_NEAR(g_value(kMcp, 2.0), expect.convert_to<double>(), 1e-15);
}

TEST(PenaltyValue, LqAtZero) {
  const Big expect = boost::multiprecision::pow(Big("0.1"), Big("0.5"));
  EXPECT_NEAR(g_value(kLq, 0.0), expect.convert_to<double>(), 1e-15);
  EXPECT_NEAR(g_value(kLq, 0.0), 0.3162278, 5e-8);
}

TEST(PenaltyWeight, Examples) {
  EXPECT_DOUBLE_EQ(weight(kLog, 0.0), 10.0);
  EXPECT_DOUBLE_EQ(weight(kMcp, 2.0), 0.0);
  const Big expect = Big("0.5") * boost::multiprecision::pow(Big("0.1"), Big("-0.5"));
  EXPECT_NEAR(weight(kLq, 0.0), expect.convert_to<double>(), 1e-14);
  EXPECT_NEAR(weight(kLq, 0.0), 1.5811388, 5e-8);
}

TEST(PenaltyWeight, McpClampsBeyondAlpha) {
  EXPECT_DOUBLE_EQ(weight(kMcp, 5.0), 0.0);
  EXPECT_DOUBLE_EQ(weight(kMcp, 0.5), 1.5);
}

TEST(PenaltyH, Examples) {
  EXPECT_DOUBLE_EQ(h_value(kMcp, 2.0), 0.0);
  const Big log_expect = Big("0.1") * 10 - boost::multiprecision::log(Big(10));
  EXPECT_NEAR(h_value(kLog, 10.0), log_expect.convert_to<double>(), 1e-14);
  EXPECT_NEAR(h_value(kLog, 10.0), -1.3025851, 5e-8);
  // With q = 1/2 the closed form reduces to eps w + q^2 / w.
  EXPECT_NEAR(h_value(kLq, 0.5), 0.1 * 0.5 + 0.25 / 0.5, 1e-15);
  EXPECT_NEAR(h_value(kLq, 0.5), 0.55, 1e-15);
}

TEST(PenaltyHPrime, Examples) {
  EXPECT_NEAR(h_prime(kLog, 10.0), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(h_prime(kMcp, 0.5), -1.5);
  EXPECT_NEAR(h_prime(kLq, 0.5), -(0.25 / 0.25 - 0.1), 1e-15);
}

TEST(PenaltyBounds, Examples) {
  const auto log_b = weight_bounds(PenaltySpec::log(0.1, 0.9));
  EXPECT_NEAR(log_b.lo, 1.0, 1e-15);
  EXPECT_NEAR(log_b.hi, 10.0, 1e-14);
  const auto mcp_b = weight_bounds(kMcp);
  EXPECT_EQ(mcp_b.lo, 0.0);
  EXPECT_EQ(mcp_b.hi, 2.0);
  const auto lq_b = weight_bounds(PenaltySpec::lq(0.1, 0.5, 0.9));
  EXPECT_NEAR(lq_b.lo, 0.5, 1e-15);
  EXPECT_NEAR(lq_b.hi, 0.5 / std::sqrt(0.1), 1e-14);
}

TEST(PenaltyH, OutsideBoxThrows) {
  EXPECT_THROW(h_value(kMcp, 2.5), DomainError);
  EXPECT_THROW(h_value(kMcp, -0.1), DomainError);
  EXPECT_THROW(h_value(kLog, 11.0), DomainError);
  EXPECT_THROW(h_prime(kLog, 0.0), DomainError);
}

TEST(PenaltySpec, RejectsBadParameters) {
  EXPECT_THROW(PenaltySpec::log(0.0), ConfigError);
  EXPECT_THROW(PenaltySpec::lq(0.1, 1.0), ConfigError);
  EXPECT_THROW(PenaltySpec::lq(0.1, 0.0), ConfigError);
  EXPECT_THROW(PenaltySpec::mcp(-1.0), ConfigError);
  EXPECT_THROW(parse_penalty_kind("scad"), ConfigError);
  EXPECT_EQ(parse_penalty_kind("lq"), PenaltyKind::Lq);
}

class PenaltyProperty : public ::testing::TestWithParam<PenaltySpec> {};

// h' = -(g')^{-1} on the interior of the weight box.
TEST_P(PenaltyProperty, InverseIdentity) {
  const auto& spec = GetParam();
  const auto [lo, hi] = weight_bounds(spec);
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(lo, hi);
  for (int i = 0; i < 100; ++i) {
    const double w = u(gen);
    ASSERT_LT(std::abs(weight(spec, -h_prime(spec, w)) - w), 1e-10) << w;
  }
}

// h equals sup_s [g(s) - w s] up to an additive constant. The oracle finds
// the supremum by golden-section search.
TEST_P(PenaltyProperty, ConjugateUpToConstant) {
  const auto& spec = GetParam();
  const auto [lo, hi] = weight_bounds(spec);
  const double s_max = spec.kind() == PenaltyKind::Mcp ? spec.alpha() : spec.beta();
  auto conjugate = [&](double w) {
    // Golden-section search on the concave function g(s) - w s.
    double a = 0.0, b = s_max;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 0; i < 200; ++i) {
      const double c = b - r * (b - a), d = a + r * (b - a);
      if (g_value(spec, c) - w * c > g_value(spec, d) - w * d) b = d; else a = c;
    }
    const double s = 0.5 * (a + b);
    return g_value(spec, s) - w * s;
  };
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(lo + 1e-3 * (hi - lo), hi - 1e-3 * (hi - lo));
  const double w0 = u(gen);
  const double offset = h_value(spec, w0) - conjugate(w0);
  for (int i = 0; i < 50; ++i) {
    const double w = u(gen);
    EXPECT_NEAR(h_value(spec, w) - conjugate(w), offset, 1e-8) << w;
  }
}

TEST_P(PenaltyProperty, WeightsDecreaseAndStayInBox) {
  const auto& spec = GetParam();
  const auto [lo, hi] = weight_bounds(spec);
  double prev = weight(spec, 0.0);
  EXPECT_NEAR(prev, hi, 1e-12);
  for (double s = 0.01; s < 20.0; s += 0.01) {
    const double w = weight(spec, s);
    EXPECT_LE(w, prev);
    EXPECT_GE(w, lo - 1e-15);
    prev = w;
  }
}

TEST_P(PenaltyProperty, HPrimeMatchesFiniteDifference) {
  const auto& spec = GetParam();
  const auto [lo, hi] = weight_bounds(spec);
  for (int i = 1; i < 20; ++i) {
    const double w = lo + (hi - lo) * i / 20.0;
    const double d = 1e-6 * (hi - lo);
    const double fd = (h_value(spec, w + d) - h_value(spec, w - d)) / (2 * d);
    EXPECT_NEAR(fd, h_prime(spec, w), 1e-5 * (1.0 + std::abs(fd))) << w;
  }
}

INSTANTIATE_TEST_SUITE_P(Reference, PenaltyProperty,
                         ::testing::Values(kLog, kLq, kMcp),
                         [](const auto& info) {
                           return std::string(to_string(info.param.kind()));
                         });

}  // namespace
}  // namespace lassorw
