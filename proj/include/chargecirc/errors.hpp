// Copyright 2026 The chargecirc Authors
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

namespace chargecirc {

/// Thrown when a fit has too few usable points.
class FitUnavailable : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {
[[noreturn]] inline void invalid(const std::string &what) {
    throw std::invalid_argument(what);
}
inline void require(bool cond, const std::string &what) {
    if (!cond) {
        invalid(what);
    }
}
} // namespace detail

} // namespace chargecirc
