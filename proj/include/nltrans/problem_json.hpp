// Copyright 2026-present the nltrans project
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

#include "nltrans/errors.hpp"
#include "nltrans/problem.hpp"

namespace nltrans {

/// Raised for malformed problem documents; the message carries the byte
/// position reported by the JSON parser when available.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Problem document:
///   {"supply":[...], "demand":[...], "costs":[[cell, ...], ...]}
/// with one cost object per cell, row-major:
///   {"kind":"linear","c":1.0}
///   {"kind":"quadratic","c":0.0,"q":1.0}
///   {"kind":"power","c":1.0,"p":0.5}
///   {"kind":"discount","breaks":[0,2],"rates":[3,1]}
Problem parse_problem(const std::string& text);

Problem load_problem(const std::string& path);

std::string serialize_problem(const Problem& problem, int indent = 2);

/// Nearest double with at most 12 significant decimal digits; all numbers in
/// emitted documents go through this so round-trips are bit-stable.
double round_12sig(double value);

}  // namespace nltrans
