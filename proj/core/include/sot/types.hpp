// Copyright 2026 The sot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOT_TYPES_HPP_
#define SOT_TYPES_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sot {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// All randomness in the library flows through explicitly passed engines of
/// this type so that runs are reproducible from a seed and can be
/// checkpointed (the engine state round-trips through text).
using Rng = std::mt19937_64;

/// Error hierarchy. Callers distinguish configuration mistakes (bad
/// arguments, impossible setups) from failures that happen while running.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotFoundError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class NotReadyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UnsupportedOperationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DuplicatePointError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string rng_state(const Rng& rng);
void set_rng_state(Rng& rng, const std::string& state);

/// Derives an independent stream seed from a base seed (splitmix64 step).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace sot

#endif  // SOT_TYPES_HPP_
