/* Copyright 2026 The fslossy Authors
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

namespace fslossy {

// Error classes map one-to-one onto CLI exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameters: length mismatches, divisibility, out-of-range symbols.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed files or bitstreams.
class FormatError : public Error {
 public:
  using Error::Error;
};

// An enumeration or state budget was exceeded. The caller should reduce k or D.
class LimitError : public Error {
 public:
  using Error::Error;
};

// A self-check failed (chain ordering, d-semifaithfulness, IL undecided, ...).
class VerificationError : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw UsageError(what);
}

}  // namespace fslossy
