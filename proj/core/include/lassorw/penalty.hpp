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

#pragma once

#include <string>
#include <string_view>

namespace lassorw {

enum class PenaltyKind { Log, Lq, Mcp };

std::string_view to_string(PenaltyKind kind);
PenaltyKind parse_penalty_kind(std::string_view name);

/// Concave sparsity penalty g(|x|) together with its weight function g'(|x|)
/// and the convex companion h with h' = -(g')^{-1}.
///
///   Log: g(s) = log(s + eps)           w in [1/(beta+eps), 1/eps]
///   Lq:  g(s) = (s + eps)^q            w in [q/(beta+eps)^(1-q), q/eps^(1-q)]
///   Mcp: g(s) = alpha*s - s^2/2        w in [0, alpha], beta = alpha
///
/// beta bounds the magnitude domain [0, beta]; arguments above beta are
/// clamped to beta, so the weight never leaves the box. Immutable once built.
class PenaltySpec {
 public:
  static constexpr double kDefaultBeta = 1e3;

  static PenaltySpec log(double eps, double beta = kDefaultBeta);
  static PenaltySpec lq(double eps, double q, double beta = kDefaultBeta);
  static PenaltySpec mcp(double alpha);

  PenaltyKind kind() const { return kind_; }
  double eps() const { return eps_; }
  double q() const { return q_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  friend bool operator==(const PenaltySpec&, const PenaltySpec&) = default;

 private:
  PenaltySpec(PenaltyKind kind, double eps, double q, double alpha,
              double beta);

  PenaltyKind kind_;
  double eps_ = 0.0;
  double q_ = 0.0;
  double alpha_ = 0.0;
  double beta_ = 0.0;
};

struct WeightBounds {
  double lo;
  double hi;
};

/// g(s). Throws DomainError for s < 0.
double g_value(const PenaltySpec& spec, double s);

/// g'(s), the reweighting rule; right derivative at 0. Throws DomainError
/// for s < 0.
double weight(const PenaltySpec& spec, double s);

/// h(w) with zero integration constant. w must lie in weight_bounds(spec).
double h_value(const PenaltySpec& spec, double w);

/// h'(w) = -(g')^{-1}(w), defined strictly inside weight_bounds(spec).
double h_prime(const PenaltySpec& spec, double w);

/// Scalar interval whose n-fold product is the weight box:
/// [weight(beta), weight(0)].
WeightBounds weight_bounds(const PenaltySpec& spec);

}  // namespace lassorw
