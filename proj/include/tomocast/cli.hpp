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

#ifndef TOMOCAST_CLI_HPP_
#define TOMOCAST_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tomocast::cli {

// Runs one subcommand. args excludes the program name. Returns the process
// exit code: 0 success, 1 usage/config/I-O failure, 2 the input data failed
// validation (JSON diagnostic on err).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// "start:step:stop" (inclusive), a comma list, or a single value.
std::vector<double> parse_time_grid(const std::string &spec);

// n evenly spaced points on [0, t_max]; n = 1 gives {0}.
std::vector<double> uniform_grid(std::size_t n, double t_max);

}  // namespace tomocast::cli

#endif  // TOMOCAST_CLI_HPP_
