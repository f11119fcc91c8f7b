#pragma once

#include <stdexcept>
#include <string>

namespace rictube {

/// A requested evaluation point lies outside a profile's domain.
struct OutOfDomain : std::runtime_error {
  explicit OutOfDomain(const std::string& msg) : std::runtime_error(msg) {}
};

/// An argument violates a documented precondition.
struct InvalidParam : std::invalid_argument {
  explicit InvalidParam(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A constructive search (profile design, radius ladder, bridge anchor)
/// exhausted its options without meeting the required sign conditions.
struct DesignFailure : std::runtime_error {
  explicit DesignFailure(const std::string& msg) : std::runtime_error(msg) {}
};

/// A curvature formula was evaluated where the metric degenerates
/// (nonpositive warp value, singular coordinate metric).
struct Singular : std::runtime_error {
  explicit Singular(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requested tube parameters violate a hard feasibility bound.  The message
/// names the violated constraint.
struct InfeasibleParams : std::runtime_error {
  explicit InfeasibleParams(const std::string& msg) : std::runtime_error(msg) {}
};

/// An assembly configuration is structurally inconsistent
/// (unmatched boundaries, duplicate tube attachments, bad kinds).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rictube
