/* Copyright 2026 The seeood Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SEEOOD_ERROR_HPP_
#define SEEOOD_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace seeood {

enum class ErrorKind {
  kShape,     // dimension mismatch between tensors, inputs or files
  kDomain,    // argument outside the operation's domain
  kNumeric,   // non-finite value produced
  kParse,     // malformed config, CSV or weight text
  kIo,        // file system failure
  kContract,  // caller broke a documented precondition (e.g. stale cache)
};

const char* error_kind_name(ErrorKind kind) noexcept;

/// Every failure raised by the library is an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_shape(const std::string& message) {
  throw Error(ErrorKind::kShape, message);
}
[[noreturn]] inline void throw_domain(const std::string& message) {
  throw Error(ErrorKind::kDomain, message);
}
[[noreturn]] inline void throw_numeric(const std::string& message) {
  throw Error(ErrorKind::kNumeric, message);
}
[[noreturn]] inline void throw_parse(const std::string& message) {
  throw Error(ErrorKind::kParse, message);
}
[[noreturn]] inline void throw_io(const std::string& message) {
  throw Error(ErrorKind::kIo, message);
}
[[noreturn]] inline void throw_contract(const std::string& message) {
  throw Error(ErrorKind::kContract, message);
}

}  // namespace seeood

#endif  // SEEOOD_ERROR_HPP_
