// Copyright 2026 The gravimean Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gravimean {

/// Invalid argument to a pure function (negative mass, p outside [0,1], ...).
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Configuration rejected while loading; carries the offending key path.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(std::string key_path, const std::string &what)
        : std::runtime_error(key_path.empty() ? what : key_path + ": " + what), key_path_(std::move(key_path)) {}

    const std::string &key_path() const noexcept { return key_path_; }

   private:
    std::string key_path_;
};

/// Grid or packet placement that cannot be simulated faithfully.
class SetupError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A state whose invariants (normalization) no longer hold on entry.
class ConsistencyError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Integration went wrong mid-run: norm drift, density reaching the domain edge.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A Monte Carlo trial failed; wraps the underlying message with the trial index.
class TrialError : public NumericalError {
   public:
    TrialError(std::size_t index, const std::string &what)
        : NumericalError("trial " + std::to_string(index) + ": " + what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

   private:
    std::size_t index_;
};

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace gravimean
