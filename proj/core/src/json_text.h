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


#ifndef FDC_JSON_TEXT_H_
#define FDC_JSON_TEXT_H_

#include <string>

#include <json.hpp>

namespace fdc {

// Serializes with every floating value printed to 17 significant digits.
std::string dump_json(const nlohmann::json& j, int indent = 2);

}  // namespace fdc

#endif  // FDC_JSON_TEXT_H_
