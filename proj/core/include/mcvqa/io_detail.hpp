// Copyright 2026 The mcvqa Authors
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

#ifndef MCVQA_IO_DETAIL_HPP_
#define MCVQA_IO_DETAIL_HPP_

#include <charconv>
#include <stdexcept>
#include <string>

namespace mcvqa::detail {

// Shortest round-trip decimal form, locale independent.  Used for CSV output
// so that identical runs produce byte-identical files.
inline std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf, ptr);
}

}  // namespace mcvqa::detail

#endif  // MCVQA_IO_DETAIL_HPP_
