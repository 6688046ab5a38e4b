// Copyright 2026 The Authors.
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

#ifndef FDC_TOOLS_CLI_H_
#define FDC_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace fdc::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kFailure = 2;

// fdc <verb> [flags]; verbs gen, transform, decompose, learn, eval.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// fdc_study [flags]: the bit-width study as CSV.
int run_study(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// key=value lines; '#' starts a comment. Throws fdc::Error on bad lines.
std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text);

}  // namespace fdc::cli

#endif  // FDC_TOOLS_CLI_H_
