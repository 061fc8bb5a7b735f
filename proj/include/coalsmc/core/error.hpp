/*
 * Copyright 2026 The coalsmc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace coalsmc {

/// Malformed caller input (bad indices, mismatched lengths, unparsable files).
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the supported domain (e.g. N too small, a < 1).
class ParameterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Index or time outside the stored range.
class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// All potentials vanished in one generation; the run cannot continue.
class DegenerateWeightsError : public std::runtime_error {
 public:
  DegenerateWeightsError(int generation, const std::string& what)
      : std::runtime_error(what), generation_(generation) {}
  int generation() const { return generation_; }

 private:
  int generation_;
};

}  // namespace coalsmc
