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

// Whitespace-separated token files with hexadecimal floating point numbers,
// shared by the MPS and spec containers.

#ifndef HOLOQ_TEXTIO_HPP_
#define HOLOQ_TEXTIO_HPP_

#include <filesystem>
#include <sstream>
#include <string>

#include "holoq/linalg.hpp"

namespace holoq::textio {

std::string format_double(double x);
// Round-trip decimal ("%.17g") for CSV output.
std::string format_decimal(double x);
std::string format_complex(cplx z);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

// All failures throw Error(kIo).
class Reader {
 public:
  explicit Reader(const std::string& text) : in_(text) {}

  std::string read_word();
  int read_int();
  double read_double();
  cplx read_complex();

  void expect_word(const std::string& word);
  void expect_header(const std::string& magic, int version);
  void expect_end();

  int keyword_int(const std::string& key);
  std::string keyword_word(const std::string& key);
  // "key n" followed by n complex numbers.
  Vector keyword_vector(const std::string& key);
  // "key rows cols" followed by rows*cols complex numbers, row-major.
  Matrix keyword_matrix(const std::string& key);

 private:
  std::istringstream in_;
};

}  // namespace holoq::textio

#endif  // HOLOQ_TEXTIO_HPP_
