// Copyright 2026 The chanres Authors
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

#include "chanres/channel.hpp"
#include "chanres/monotones.hpp"

// Channel files:
//
//   {"dim_in": 2, "dim_out": 2,
//    "kraus": [ [[[re, im], [re, im]], [[re, im], [re, im]]], ... ]}
//
// Each Kraus operator is an array of dim_out rows of dim_in [re, im] pairs.
namespace chanres::io {

// Throws ParseError naming the offending field (e.g. "kraus[1][0][2]") and
// ValidationError when the operators do not form a CPTP map.
QChannel parse_channel_json(std::string_view text);
QChannel load_channel_json(const std::string& path);

std::string channel_to_json(const QChannel& n);
void save_channel_json(const QChannel& n, const std::string& path);

// Report with the full search configuration. Monotones use 6 decimals,
// witness amplitudes 10.
std::string report_to_json(const monotones::MonotoneReport& r);
// Human-readable "key: value" lines, 6 decimals.
std::string report_to_text(const monotones::MonotoneReport& r);

// Writes `contents` to `path` through a temporary file and rename.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace chanres::io
