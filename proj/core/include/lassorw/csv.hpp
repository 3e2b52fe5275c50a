// Copyright 2026 The lassorw Authors
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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lassorw::csv {

/// Real with 17 significant digits ("%.17g"); inf/nan spelled inf, -inf, nan.
std::string format_real(double v);

/// Parses a real written by format_real (or any strtod-compatible token).
double parse_real(std::string_view token);

/// RFC 4180 field quoting: fields containing a comma, quote, CR or LF are
/// wrapped in double quotes with embedded quotes doubled.
std::string quote_field(std::string_view field);

/// Splits one RFC 4180 record. The input must not contain the record
/// terminator; quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_record(std::string_view line);

}  // namespace lassorw::csv
