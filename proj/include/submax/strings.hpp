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

#ifndef SUBMAX_STRINGS_HPP_
#define SUBMAX_STRINGS_HPP_

#include <string>
#include <vector>

namespace submax {

// "%.<precision>g" rendering; 17 significant digits round-trip a double.
// Non-finite values render as "nan", "inf", "-inf".
std::string format_double(double value, int precision = 17);

std::string trim(const std::string& text);

// Splits on the separator without quoting rules; fields keep surrounding
// whitespace. An empty input yields one empty field.
std::vector<std::string> split(const std::string& line, char separator);

// Strict numeric parsing of a whole (trimmed) field. Throws ConfigError
// mentioning `context` on empty or trailing garbage. parse_double accepts
// "nan" and "inf".
double parse_double(const std::string& text, const std::string& context);
int parse_int(const std::string& text, const std::string& context);

}  // namespace submax

#endif  // SUBMAX_STRINGS_HPP_
