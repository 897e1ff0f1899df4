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

#include <compare>
#include <cstdint>
#include <vector>

namespace nltrans {

struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell&) const = default;
};

/// Dense row-major grid of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& at(int i, int j) { return data_[index(i, j)]; }
    double at(int i, int j) const { return data_[index(i, j)]; }
    double& at(Cell c) { return at(c.row, c.col); }
    double at(Cell c) const { return at(c.row, c.col); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    const std::vector<double>& values() const { return data_; }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(j);
    }

    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

/// Flow matrix x. Feasibility (margins + nonnegativity) is checked by
/// check_feasible, not enforced by the type.
using Allocation = Matrix;

/// The m+n-1 basic cells of a tableau, kept sorted by (row, col), plus a
/// byte mask per cell for O(1) membership and for the masked reductions.
class Basis {
public:
    Basis(int rows, int cols, std::vector<Cell> cells);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int size() const { return static_cast<int>(cells_.size()); }
    const std::vector<Cell>& cells() const { return cells_; }

    bool contains(Cell c) const {
        return basic_[flat(c)] != 0;
    }

    void add(Cell c);
    void remove(Cell c);
    /// remove(leaving) + add(entering) in one step.
    void swap(Cell leaving, Cell entering);

    /// 1 where the cell is basic.
    const std::vector<std::uint8_t>& basic_mask() const { return basic_; }
    /// 1 where the cell is nonbasic.
    const std::vector<std::uint8_t>& nonbasic_mask() const { return nonbasic_; }

private:
    std::size_t flat(Cell c) const {
        return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(c.col);
    }

    int rows_ = 0, cols_ = 0;
    std::vector<Cell> cells_;
    std::vector<std::uint8_t> basic_;
    std::vector<std::uint8_t> nonbasic_;
};

/// Row and column potentials (u, v) with u[0] anchored at zero.
struct Duals {
    std::vector<double> u;
    std::vector<double> v;
};

}  // namespace nltrans
