// Copyright 2026 The Tomocast Authors
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

#ifndef TOMOCAST_IO_HPP_
#define TOMOCAST_IO_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "tomocast/numkernel.hpp"

namespace tomocast {

using json = nlohmann::json;

// Matrices travel as row-major nested arrays of [re, im] pairs.
json matrix_to_json(const CMatrix &m);
CMatrix matrix_from_json(const json &j, const std::string &context = "matrix");

// Parses text as JSON, mapping syntax errors to ParseError.
json parse_json(const std::string &text, const std::string &context);

// Shortest round-trip representation of a double, as used in CSV output.
std::string format_double(double x);

}  // namespace tomocast

#endif  // TOMOCAST_IO_HPP_
