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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lassorw/errors.hpp"

namespace lassorw {
namespace {

// Relative slack when testing membership in the weight box, so that weights
// produced by weight() at the clamped endpoints are always accepted.
constexpr double kBoxSlack = 1e-12;

void require_nonnegative(double s, const char* what) {
  if (!(s >= 0.0)) {
    std::ostringstream msg;
    msg << what << ": magnitude must be nonnegative, got " << s;
    throw DomainError(msg.str());
  }
}

void require_in_box(const PenaltySpec& spec, double w, const char* what) {
  const WeightBounds b = weight_bounds(spec);
  const double slack = kBoxSlack * std::max(1.0, b.hi);
  const bool positive_needed = spec.kind() != PenaltyKind::Mcp;
  if (!(w >= b.lo - slack && w <= b.hi + slack) ||
      (positive_needed && !(w > 0.0))) {
    std::ostringstream msg;
    msg << what << ": weight " << w << " outside [" << b.lo << ", " << b.hi
        << "] for " << to_string(spec.kind()) << " penalty";
    throw DomainError(msg.str());
  }
}

}  // namespace

std::string_view to_string(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::Log:
      return "log";
    case PenaltyKind::Lq:
      return "lq";
    case PenaltyKind::Mcp:
      return "mcp";
  }
  return "?";
}

PenaltyKind parse_penalty_kind(std::string_view name) {
  if (name == "log") return PenaltyKind::Log;
  if (name == "lq") return PenaltyKind::Lq;
  if (name == "mcp") return PenaltyKind::Mcp;
  throw ConfigError("unknown penalty '" + std::string(name) +
                    "' (expected log, lq or mcp)");
}

PenaltySpec::PenaltySpec(PenaltyKind kind, double eps, double q, double alpha,
                         double beta)
    : kind_(kind), eps_(eps), q_(q), alpha_(alpha), beta_(beta) {
  if (!(beta_ > 0.0) || !std::isfinite(beta_))
    throw ConfigError("penalty: beta must be positive and finite");
  switch (kind_) {
    case PenaltyKind::Lq:
      if (!(q_ > 0.0 && q_ < 1.0))
        throw ConfigError("penalty: q must lie in (0, 1)");
      [[fallthrough]];
    case PenaltyKind::Log:
      if (!(eps_ > 0.0) || !std::isfinite(eps_))
        throw ConfigError("penalty: eps must be positive");
      break;
    case PenaltyKind::Mcp:
      if (!(alpha_ > 0.0) || !std::isfinite(alpha_))
        throw ConfigError("penalty: alpha must be positive");
      break;
  }
}

PenaltySpec PenaltySpec::log(double eps, double beta) {
  return PenaltySpec(PenaltyKind::Log, eps, 0.0, 0.0, beta);
}

PenaltySpec PenaltySpec::lq(double eps, double q, double beta) {
  return PenaltySpec(PenaltyKind::Lq, eps, q, 0.0, beta);
}

PenaltySpec PenaltySpec::mcp(double alpha) {
  return PenaltySpec(PenaltyKind::Mcp, 0.0, 0.0, alpha, alpha);
}

double g_value(const PenaltySpec& spec, double s) {
  require_nonnegative(s, "g_value");
  switch (spec.kind()) {
    case PenaltyKind::Log:
      return std::log(s + spec.eps());
    case PenaltyKind::Lq:
      return std::pow(s + spec.eps(), spec.q());
    case PenaltyKind::Mcp: {
      const double c = std::min(s, spec.alpha());
      return spec.alpha() * c - 0.5 * c * c;
    }
  }
  return 0.0;
}

double weight(const PenaltySpec& spec, double s) {
  require_nonnegative(s, "weight");
  const double c = std::min(s, spec.beta());
  switch (spec.kind()) {
    case PenaltyKind::Log:
      return 1.0 / (c + spec.eps());
    case PenaltyKind::Lq:
      return spec.q() * std::pow(c + spec.eps(), spec.q() - 1.0);
    case PenaltyKind::Mcp:
      return spec.alpha() - c;
  }
  return 0.0;
}

double h_value(const PenaltySpec& spec, double w) {
  require_in_box(spec, w, "h_value");
  switch (spec.kind()) {
    case PenaltyKind::Log:
      return spec.eps() * w - std::log(w);
    case PenaltyKind::Lq: {
      const double q = spec.q();
      return spec.eps() * w + (1.0 - q) / std::pow(w / q, q / (1.0 - q));
    }
    case PenaltyKind::Mcp: {
      const double d = spec.alpha() - w;
      return 0.5 * d * d;
    }
  }
  return 0.0;
}

double h_prime(const PenaltySpec& spec, double w) {
  require_in_box(spec, w, "h_prime");
  switch (spec.kind()) {
    case PenaltyKind::Log:
      return spec.eps() - 1.0 / w;
    case PenaltyKind::Lq: {
      const double q = spec.q();
      return spec.eps() - std::pow(q / w, 1.0 / (1.0 - q));
    }
    case PenaltyKind::Mcp:
      return w - spec.alpha();
  }
  return 0.0;
}

WeightBounds weight_bounds(const PenaltySpec& spec) {
  // Endpoints written out rather than via weight() to avoid recursion
  // through require_in_box; they agree with weight(beta) and weight(0).
  switch (spec.kind()) {
    case PenaltyKind::Log:
      return {1.0 / (spec.beta() + spec.eps()), 1.0 / spec.eps()};
    case PenaltyKind::Lq:
      return {spec.q() * std::pow(spec.beta() + spec.eps(), spec.q() - 1.0),
              spec.q() * std::pow(spec.eps(), spec.q() - 1.0)};
    case PenaltyKind::Mcp:
      return {0.0, spec.alpha()};
  }
  return {0.0, 0.0};
}

}  // namespace lassorw
