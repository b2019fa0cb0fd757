// Copyright 2026 The swipt-capacity Authors.
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

#include <stdexcept>
#include <string>

namespace swipt {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (negative
/// amplitude, non-finite input, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Violated structural precondition: mismatched lengths, weights that do not
/// sum to one, unsupported state cardinality.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// The constraint set admits no distribution. `constraint()` names the one
/// that cannot be met.
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::string constraint, const std::string& what)
      : Error(what), constraint_(std::move(constraint)) {}
  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

/// A numerical procedure stopped before reaching its accuracy target.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best_estimate, double residual)
      : Error(what), best_(best_estimate), residual_(residual) {}
  double best_estimate() const noexcept { return best_; }
  double residual() const noexcept { return residual_; }

 private:
  double best_;
  double residual_;
};

/// Bracketing search whose predicate is not monotone across the bracket.
class SearchError : public Error {
 public:
  SearchError(const std::string& what, double lo, double hi)
      : Error(what), lo_(lo), hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// Support-cardinality escalation ran out of candidate points before the
/// optimality conditions were met. Carries the best rate reached.
class EscalationError : public Error {
 public:
  EscalationError(const std::string& what, double best_rate, std::size_t support_size)
      : Error(what), best_rate_(best_rate), support_size_(support_size) {}
  double best_rate() const noexcept { return best_rate_; }
  std::size_t support_size() const noexcept { return support_size_; }

 private:
  double best_rate_;
  std::size_t support_size_;
};

/// Configuration document that cannot be parsed or validated.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written. `path()` names the file.
class IoError : public Error {
 public:
  IoError(std::string path, const std::string& what)
      : Error(what + ": " + path), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace swipt
