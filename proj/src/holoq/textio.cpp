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

#include "holoq/textio.hpp"

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "holoq/errors.hpp"

namespace holoq::textio {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

std::string format_decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(cplx z) {
  return format_double(z.real()) + " " + format_double(z.imag());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorCode::kIo,
          "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorCode::kIo,
          "cannot write '" + path.string() + "'");
  f << text;
  require(static_cast<bool>(f), ErrorCode::kIo,
          "write failed for '" + path.string() + "'");
}

std::string Reader::read_word() {
  std::string w;
  require(static_cast<bool>(in_ >> w), ErrorCode::kIo,
          "unexpected end of input");
  return w;
}

int Reader::read_int() {
  const std::string w = read_word();
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(w.c_str(), &end, 10);
  require(errno == 0 && end != w.c_str() && *end == '\0' && v >= INT32_MIN &&
              v <= INT32_MAX,
          ErrorCode::kIo, "expected an integer, got '" + w + "'");
  return static_cast<int>(v);
}

double Reader::read_double() {
  const std::string w = read_word();
  char* end = nullptr;
  const double v = std::strtod(w.c_str(), &end);
  require(end != w.c_str() && *end == '\0', ErrorCode::kIo,
          "expected a number, got '" + w + "'");
  return v;
}

cplx Reader::read_complex() {
  const double re = read_double();
  const double im = read_double();
  return {re, im};
}

void Reader::expect_word(const std::string& word) {
  const std::string w = read_word();
  require(w == word, ErrorCode::kIo,
          "expected '" + word + "', got '" + w + "'");
}

void Reader::expect_header(const std::string& magic, int version) {
  expect_word(magic);
  const int v = read_int();
  require(v == version, ErrorCode::kIo,
          "unsupported " + magic + " version " + std::to_string(v));
}

void Reader::expect_end() {
  std::string w;
  require(!(in_ >> w), ErrorCode::kIo, "trailing content '" + w + "'");
}

int Reader::keyword_int(const std::string& key) {
  expect_word(key);
  return read_int();
}

std::string Reader::keyword_word(const std::string& key) {
  expect_word(key);
  return read_word();
}

Vector Reader::keyword_vector(const std::string& key) {
  const int n = keyword_int(key);
  require(n >= 1, ErrorCode::kIo, key + " must have positive length");
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = read_complex();
  return v;
}

Matrix Reader::keyword_matrix(const std::string& key) {
  expect_word(key);
  const int rows = read_int();
  const int cols = read_int();
  require(rows >= 1 && cols >= 1, ErrorCode::kIo,
          key + " must have positive shape");
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = read_complex();
  }
  return m;
}

}  // namespace holoq::textio
