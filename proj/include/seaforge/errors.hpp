// Copyright 2026 The seaforge Authors
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

#ifndef SEAFORGE_ERRORS_HPP_
#define SEAFORGE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace seaforge {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A physical parameter or option lies outside its domain. `field()` names it.
class ParameterError : public Error {
 public:
  ParameterError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// The gain-criterion solver stopped without meeting its tolerances.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

// The criterion has a solution only with a negative gain at this frequency.
class InfeasibleFrequencyError : public Error {
 public:
  InfeasibleFrequencyError(double natural_frequency_hz, const std::string& what)
      : Error(what), natural_frequency_hz_(natural_frequency_hz) {}
  double natural_frequency_hz() const { return natural_frequency_hz_; }

 private:
  double natural_frequency_hz_;
};

// |L(jw)| never crosses 1 in the search band.
class NoCrossoverError : public Error {
 public:
  using Error::Error;
};

// Pointwise evaluation failed (singular loop algebra, non-finite value).
class EvaluationError : public Error {
 public:
  EvaluationError(double omega, const std::string& what)
      : Error(what), omega_(omega) {}
  double omega() const { return omega_; }

 private:
  double omega_;
};

// Inconsistent simulation or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace seaforge

#endif  // SEAFORGE_ERRORS_HPP_
