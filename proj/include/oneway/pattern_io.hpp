// Copyright 2026 The oneway Authors
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

#pragma once

#include <iosfwd>
#include <string>

#include "oneway/pattern.hpp"

namespace oneway {

/// Versioned text serialization of a MeasurementPattern.
///
///   oneway-pattern 1
///   grid xmin ymin xmax ymax
///   sites N
///   site x y role basis          (sorted by (y, x))
///   edges E
///   edge x1 y1 x2 y2
///   relabels R
///   relabel x y const n x1 y1 ...
///   frame_rules F
///   rule x y outcome qubit x|z
///   end
///
/// role is "-", "in:k", "out:k" or "in:k,out:j". basis is X, Y, Z, "-" for
/// outputs, or "EQ theta offset n x1 y1 ..." with theta printed as %.17g so
/// that a round trip is exact.
std::string write_pattern(const MeasurementPattern& pattern);
void write_pattern(std::ostream& out, const MeasurementPattern& pattern);

/// Throws ParseError carrying the 1-based line number.
MeasurementPattern read_pattern(const std::string& text);
MeasurementPattern read_pattern(std::istream& in);

MeasurementPattern load_pattern_file(const std::string& path);
void save_pattern_file(const std::string& path, const MeasurementPattern& pattern);

}  // namespace oneway
