// Copyright 2026 The holoq Authors
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

#ifndef HOLOQ_ERRORS_HPP_
#define HOLOQ_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace holoq {

// Values mirror holoq_status in the C header.
enum class ErrorCode {
  kInvalidArgument = 1,
  kDimension = 2,
  kNotCanonical = 3,
  kIsometry = 4,
  kDegenerate = 5,
  kCapacity = 6,
  kNoAcceptance = 7,
  kNonConvergence = 8,
  kIo = 9,
  kConfig = 10,
  kVerification = 11,
  kUnsupported = 12,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class IsometryError : public Error {
 public:
  IsometryError(double defect, const std::string& what)
      : Error(ErrorCode::kIsometry, what), defect_(defect) {}
  // Max-norm of sum_s V_s V_s^dag - 1.
  double defect() const { return defect_; }

 private:
  double defect_;
};

class CapacityError : public Error {
 public:
  CapacityError(int requested, int cap, const std::string& what)
      : Error(ErrorCode::kCapacity, what), requested_(requested), cap_(cap) {}
  int requested() const { return requested_; }
  int cap() const { return cap_; }

 private:
  int requested_;
  int cap_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace holoq

#endif  // HOLOQ_ERRORS_HPP_
