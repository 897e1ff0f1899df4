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

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nltrans/kernels.hpp"
#include "nltrans/problem_json.hpp"
#include "nltrans/render.hpp"
#include "nltrans/solvers.hpp"
#include "testutil.hpp"

using nlohmann::json;
using namespace nltrans;

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_cli(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string(NLTRANS_CLI_PATH) + " " + args +
                            (merge_stderr ? " 2>&1" : " 2>/dev/null");
    CommandResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        result.output.append(buffer, got);
    }
    const int rc = pclose(pipe);
    result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

std::string fixture(const std::string& name) {
    return std::string(NLTRANS_FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("solve emits the expected fields on the linear fixture") {
    const CommandResult r =
        run_cli("solve " + fixture("linear2x2.json") + " --algorithm auto --emit-kkt");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["status"] == "optimal");
    CHECK(doc["objective"].get<double>() == doctest::Approx(2.0));
    CHECK(doc["cost_class"] == "linear");
    CHECK(doc["kkt"]["satisfied"].get<bool>());
    CHECK(doc["kkt"]["w"][1][0].get<double>() == doctest::Approx(2.0));
    CHECK(doc["allocation"][0][0].get<double>() == doctest::Approx(1.0));
    CHECK(doc["basis"].size() == 3);
}

TEST_CASE("missing input files exit with code 1") {
    const CommandResult r = run_cli("solve /nonexistent/missing.json", true);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("cannot open file") != std::string::npos);
}

TEST_CASE("malformed documents exit with code 1 and a diagnostic") {
    const std::string path = "/tmp/nltrans_bad_fixture.json";
    std::ofstream(path) << "{\"supply\": [1,";
    const CommandResult r = run_cli("solve " + path, true);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("error") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("oracle flag reports a small gap on the quadratic fixture") {
    const CommandResult r =
        run_cli("solve " + fixture("quad2x2.json") + " --oracle");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(std::abs(doc["oracle_gap"].get<double>()) <= 1e-5);
    CHECK(doc["oracle"]["optimum"].get<double>() == doctest::Approx(3.5).epsilon(1e-5));
}

TEST_CASE("oracle cap honors the environment override") {
    const std::string cmd = "NLTRANS_ORACLE_CAP=1 " + std::string(NLTRANS_CLI_PATH) +
                            " solve " + fixture("linear2x2.json") + " --oracle 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) output.append(buffer, got);
    const int rc = pclose(pipe);
    CHECK(WEXITSTATUS(rc) == 1);
    CHECK(output.find("exceeds the enumeration cap") != std::string::npos);
}

TEST_CASE("iteration limit maps to exit code 2") {
    const std::string path = "/tmp/nltrans_limit_fixture.json";
    std::ofstream(path) << serialize_problem(Problem(
        {5, 7, 3}, {6, 4, 5},
        {LinearCost{2}, LinearCost{7}, LinearCost{4}, LinearCost{3}, LinearCost{3},
         LinearCost{1}, LinearCost{5}, LinearCost{4}, LinearCost{7}}));
    const CommandResult r = run_cli("solve " + path + " --max-iters 1");
    CHECK(r.exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("unbalanced inputs are repaired with a dummy line") {
    const std::string path = "/tmp/nltrans_unbalanced_fixture.json";
    std::ofstream(path) << R"({"supply":[3],"demand":[1,1],
        "costs":[[{"kind":"linear","c":2},{"kind":"linear","c":3}]]})";
    const CommandResult r = run_cli("solve " + path);
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["allocation"][0].size() == 3);  // dummy destination added
    CHECK(doc["objective"].get<double>() == doctest::Approx(5.0));
    std::remove(path.c_str());
}

TEST_CASE("golden fixtures are byte-identical across runs and match the files") {
    const struct {
        const char* input;
        const char* golden;
    } cases[] = {
        {"linear2x2.json", "golden/linear2x2.out.json"},
        {"quad2x2.json", "golden/quad2x2.out.json"},
        {"concave2x2.json", "golden/concave2x2.out.json"},
    };
    for (const auto& c : cases) {
        const std::string args = "solve " + fixture(c.input) + " --emit-kkt";
        const CommandResult first = run_cli(args);
        const CommandResult second = run_cli(args);
        REQUIRE(first.exit_code == 0);
        CHECK(first.output == second.output);
        CHECK(first.output == read_file(fixture(c.golden)));
    }
}

TEST_CASE("kernel backends produce byte-identical solve output") {
    if (!nltrans::kernels::avx2_available()) return;
    for (const char* name : {"linear2x2.json", "quad2x2.json", "concave2x2.json"}) {
        const std::string tail = std::string(NLTRANS_CLI_PATH) + " solve " +
                                 fixture(name) + " --emit-kkt --trace 2>/dev/null";
        std::string outputs[2];
        int k = 0;
        for (const char* backend : {"scalar", "avx2"}) {
            const std::string cmd = std::string("NLTRANS_KERNELS=") + backend + " " + tail;
            FILE* pipe = popen(cmd.c_str(), "r");
            REQUIRE(pipe != nullptr);
            char buffer[4096];
            std::size_t got;
            while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
                outputs[k].append(buffer, got);
            }
            pclose(pipe);
            ++k;
        }
        CHECK(outputs[0] == outputs[1]);
        CHECK(!outputs[0].empty());
    }
}

TEST_CASE("text format renders the tableau") {
    const CommandResult r =
        run_cli("solve " + fixture("linear2x2.json") + " --format text");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("objective:  2") != std::string::npos);
    CHECK(r.output.find("demand") != std::string::npos);
    CHECK(r.output.find('*') != std::string::npos);
}

TEST_CASE("trace output records the quadratic line search") {
    const CommandResult r =
        run_cli("solve " + fixture("quad2x2.json") + " --trace");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.output);
    REQUIRE(doc["trace"].is_array());
    REQUIRE(!doc["trace"].empty());
    const json& first = doc["trace"][0];
    CHECK(first["case"].get<int>() == 2);
    CHECK(first["lambda"].get<double>() == doctest::Approx(0.25).epsilon(1e-5));
    CHECK(first["objective_before"].get<double>() == doctest::Approx(8.0));
}

TEST_CASE("render_tableau marks basic cells and margins") {
    const Problem p = testutil::linear_2x2();
    const Allocation x = testutil::make_allocation(2, 2, {1, 0, 0, 1});
    const Basis basis(2, 2, {{0, 0}, {0, 1}, {1, 1}});
    const std::string text = render_tableau(p, x, basis);
    const std::string expected =
        "        d0                    d1                    supply\n"
        "s0      1* @1                 0* @2                 1\n"
        "s1      0  @2                 1* @1                 1\n"
        "demand  1                     1\n";
    CHECK(text == expected);
}

TEST_CASE("render_tableau keeps the marker on zero-valued basic cells") {
    const Problem p({1}, {1}, {LinearCost{1}});
    const std::string text =
        render_tableau(p, testutil::make_allocation(1, 1, {1}), Basis(1, 1, {{0, 0}}));
    CHECK(text.find("1* @1") != std::string::npos);
}
