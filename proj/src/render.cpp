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

#include "nltrans/render.hpp"

#include <cstdio>
#include <string>

namespace nltrans {

namespace {

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void pad_to(std::string& line, std::size_t width) {
    if (line.size() < width) line.append(width - line.size(), ' ');
}

}  // namespace

std::string render_tableau(const Problem& problem, const Allocation& x,
                           const Basis& basis) {
    const int m = problem.rows();
    const int n = problem.cols();
    const Matrix deriv = derivative_matrix(problem, x);
    constexpr std::size_t kCellWidth = 22;
    constexpr std::size_t kHeadWidth = 8;

    std::string out;
    std::string line(kHeadWidth, ' ');
    for (int j = 0; j < n; ++j) {
        line += "d" + std::to_string(j);
        pad_to(line, kHeadWidth + (static_cast<std::size_t>(j) + 1) * kCellWidth);
    }
    line += "supply";
    out += line + "\n";

    for (int i = 0; i < m; ++i) {
        line = "s" + std::to_string(i);
        pad_to(line, kHeadWidth);
        for (int j = 0; j < n; ++j) {
            std::string cell = fixed(x.at(i, j));
            cell += basis.contains({i, j}) ? "*" : " ";
            cell += " @" + fixed(deriv.at(i, j));
            line += cell;
            pad_to(line, kHeadWidth + (static_cast<std::size_t>(j) + 1) * kCellWidth);
        }
        line += fixed(problem.supply()[i]);
        out += line + "\n";
    }

    line = "demand";
    pad_to(line, kHeadWidth);
    for (int j = 0; j < n; ++j) {
        line += fixed(problem.demand()[j]);
        if (j + 1 < n) {
            pad_to(line, kHeadWidth + (static_cast<std::size_t>(j) + 1) * kCellWidth);
        }
    }
    out += line + "\n";
    return out;
}

}  // namespace nltrans
