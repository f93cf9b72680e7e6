// Copyright 2026 The photonctx Authors
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
#include <vector>

namespace photonctx {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

/// A state or factor violated a normalization precondition.
class NormalizationError : public Error {
  public:
    using Error::Error;
};

/// Operator and state (or two states) live in different frames.
class FrameMismatchError : public Error {
  public:
    using Error::Error;
};

/// Structural problem in an optical network (cycle, dangling port, ...).
class NetworkError : public Error {
  public:
    using Error::Error;
};

/// Internal numerical consistency check failed (residue above 1e-9).
class ConsistencyError : public Error {
  public:
    using Error::Error;
};

/// One or more configuration problems. Carries every issue found, not
/// only the first.
class ConfigError : public Error {
  public:
    explicit ConfigError(std::vector<std::string> issues)
        : Error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string> &issues() const { return issues_; }

  private:
    static std::string join(const std::vector<std::string> &issues) {
        std::string out = "configuration error";
        for (const auto &i : issues) {
            out += "\n  - " + i;
        }
        return out;
    }
    std::vector<std::string> issues_;
};

/// A context produced zero detected counts; averages are undefined.
class InsufficientDataError : public Error {
  public:
    using Error::Error;
};

} // namespace photonctx
