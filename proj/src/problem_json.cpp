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

#include "nltrans/problem_json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nltrans {

using nlohmann::json;

double round_12sig(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return std::strtod(buf, nullptr);
}

namespace {

std::vector<double> number_array(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_array()) {
        throw ParseError(std::string("missing or non-array \"") + field + "\"");
    }
    std::vector<double> out;
    out.reserve(j[field].size());
    for (const json& v : j[field]) {
        if (!v.is_number()) {
            throw ParseError(std::string("\"") + field + "\" must contain numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

double number_field(const json& cell, const char* field) {
    if (!cell.contains(field) || !cell[field].is_number()) {
        throw ParseError(std::string("cost cell needs numeric \"") + field + "\"");
    }
    return cell[field].get<double>();
}

CostModel parse_cell(const json& cell) {
    if (!cell.is_object() || !cell.contains("kind") || !cell["kind"].is_string()) {
        throw ParseError("cost cell must be an object with a \"kind\" string");
    }
    const std::string kind = cell["kind"].get<std::string>();
    if (kind == "linear") {
        return LinearCost{number_field(cell, "c")};
    }
    if (kind == "quadratic") {
        return QuadraticCost{number_field(cell, "c"), number_field(cell, "q")};
    }
    if (kind == "power") {
        return PowerCost{number_field(cell, "c"), number_field(cell, "p")};
    }
    if (kind == "discount") {
        DiscountCost d;
        json copy = cell;
        d.breaks = number_array(copy, "breaks");
        d.rates = number_array(copy, "rates");
        return d;
    }
    throw ParseError("unknown cost kind \"" + kind + "\"");
}

json cell_to_json(const CostModel& model) {
    json out;
    std::visit(
        [&out](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LinearCost>) {
                out = {{"kind", "linear"}, {"c", round_12sig(m.rate)}};
            } else if constexpr (std::is_same_v<T, QuadraticCost>) {
                out = {{"kind", "quadratic"},
                       {"c", round_12sig(m.linear)},
                       {"q", round_12sig(m.quadratic)}};
            } else if constexpr (std::is_same_v<T, PowerCost>) {
                out = {{"kind", "power"},
                       {"c", round_12sig(m.coefficient)},
                       {"p", round_12sig(m.exponent)}};
            } else {
                json breaks = json::array();
                json rates = json::array();
                for (double b : m.breaks) breaks.push_back(round_12sig(b));
                for (double r : m.rates) rates.push_back(round_12sig(r));
                out = {{"kind", "discount"}, {"breaks", breaks}, {"rates", rates}};
            }
        },
        model);
    return out;
}

}  // namespace

Problem parse_problem(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ParseError("problem document must be a JSON object");

    std::vector<double> supply = number_array(doc, "supply");
    std::vector<double> demand = number_array(doc, "demand");
    if (!doc.contains("costs") || !doc["costs"].is_array()) {
        throw ParseError("missing or non-array \"costs\"");
    }
    const json& rows = doc["costs"];
    if (rows.size() != supply.size()) {
        throw ParseError("\"costs\" must have one row per supply entry");
    }
    std::vector<CostModel> costs;
    costs.reserve(supply.size() * demand.size());
    for (const json& row : rows) {
        if (!row.is_array() || row.size() != demand.size()) {
            throw ParseError("every \"costs\" row must have one cell per demand entry");
        }
        for (const json& cell : row) costs.push_back(parse_cell(cell));
    }
    return Problem(std::move(supply), std::move(demand), std::move(costs));
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem(buffer.str());
}

std::string serialize_problem(const Problem& problem, int indent) {
    json doc;
    json supply = json::array();
    json demand = json::array();
    for (double s : problem.supply()) supply.push_back(round_12sig(s));
    for (double d : problem.demand()) demand.push_back(round_12sig(d));
    json rows = json::array();
    for (int i = 0; i < problem.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < problem.cols(); ++j) {
            row.push_back(cell_to_json(problem.cost(i, j)));
        }
        rows.push_back(row);
    }
    doc["supply"] = supply;
    doc["demand"] = demand;
    doc["costs"] = rows;
    return doc.dump(indent);
}

}  // namespace nltrans
