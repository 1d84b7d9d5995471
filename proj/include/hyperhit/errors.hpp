// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace hyperhit {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A request whose memory or work estimate exceeds the configured budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, double required)
      : std::runtime_error(what), required_(required) {}

  /// Estimated work (state updates) or bytes the request would have needed.
  double required() const { return required_; }

 private:
  double required_;
};

}  // namespace hyperhit
