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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nltrans {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class NegativeQuantity : public Error {
public:
    NegativeQuantity(const std::string& where, double value)
        : Error(where + ": negative quantity " + std::to_string(value)),
          value(value) {}
    double value;
};

class Unbalanced : public Error {
public:
    explicit Unbalanced(double gap)
        : Error("unbalanced problem: total supply - total demand = " +
                std::to_string(gap)),
          gap(gap) {}
    double gap;  // total supply minus total demand
};

class InvalidCostModel : public Error {
public:
    InvalidCostModel(int row, int col, const std::string& rule)
        : Error("invalid cost model at cell (" + std::to_string(row) + "," +
                std::to_string(col) + "): " + rule),
          row(row), col(col), rule(rule) {}
    int row, col;
    std::string rule;
};

class NegativeArgument : public Error {
public:
    explicit NegativeArgument(double x)
        : Error("cost function argument must be nonnegative, got " +
                std::to_string(x)),
          value(x) {}
    double value;
};

class RowSumViolation : public Error {
public:
    RowSumViolation(int row, double gap)
        : Error("row " + std::to_string(row) + " sum differs from supply by " +
                std::to_string(gap)),
          row(row), gap(gap) {}
    int row;
    double gap;
};

class ColSumViolation : public Error {
public:
    ColSumViolation(int col, double gap)
        : Error("column " + std::to_string(col) +
                " sum differs from demand by " + std::to_string(gap)),
          col(col), gap(gap) {}
    int col;
    double gap;
};

class NegativeCell : public Error {
public:
    NegativeCell(int row, int col, double value)
        : Error("negative allocation " + std::to_string(value) + " at cell (" +
                std::to_string(row) + "," + std::to_string(col) + ")"),
          row(row), col(col), value(value) {}
    int row, col;
    double value;
};

class OutOfRangeCell : public Error {
public:
    OutOfRangeCell(int row, int col)
        : Error("cell (" + std::to_string(row) + "," + std::to_string(col) +
                ") is outside the tableau"),
          row(row), col(col) {}
    int row, col;
};

class NotATree : public Error {
public:
    explicit NotATree(const std::string& what) : Error(what) {}
};

class EnteringIsBasic : public Error {
public:
    EnteringIsBasic(int row, int col)
        : Error("entering cell (" + std::to_string(row) + "," +
                std::to_string(col) + ") is already basic"),
          row(row), col(col) {}
    int row, col;
};

class EmptyLoop : public Error {
public:
    EmptyLoop() : Error("pivot loop is empty") {}
};

class ThetaTooLarge : public Error {
public:
    ThetaTooLarge(double theta, double limit)
        : Error("theta " + std::to_string(theta) +
                " exceeds the pivot limit " + std::to_string(limit)),
          theta(theta), limit(limit) {}
    double theta, limit;
};

class InfeasibleEndpoint : public Error {
public:
    explicit InfeasibleEndpoint(const std::string& what) : Error(what) {}
};

class TooLarge : public Error {
public:
    TooLarge(std::uint64_t count, std::uint64_t cap)
        : Error("spanning tree count " + std::to_string(count) +
                " exceeds the enumeration cap " + std::to_string(cap)),
          count(count), cap(cap) {}
    std::uint64_t count, cap;
};

class NotConvex : public Error {
public:
    explicit NotConvex(const std::string& what) : Error(what) {}
};

}  // namespace nltrans
