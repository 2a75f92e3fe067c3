// SPDX-License-Identifier: Apache-2.0
//
// lharq: truncated L-HARQ status-update simulator and age analytics
// Copyright (C) 2026 The lharq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;  // stdout and stderr interleaved
};

Run lharq(const std::string& args) {
    const std::string cmd = std::string(LHARQ_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = ::popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
    const int status = ::pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("lharq_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& s) const { return (path / s).string(); }
};

const std::string samples = LHARQ_SAMPLES_DIR;

}  // namespace

TEST_CASE("analyze", "[cli]") {
    auto r = lharq("analyze --pff 0.5 --pbt 0.2 --mode all");
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("E{B}=0.04 Delta=1.54"));
    CHECK_THAT(r.out, ContainsSubstring("DISAGREEMENT"));
    r = lharq("analyze --pff 0.5 --pbt 0.2 --k 1 --mode corrected --json");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("reports")[0].at("delta_e") == 1.5);
    CHECK(lharq("analyze --pff 1 --pbt 0.2").code == 2);
    CHECK(lharq("analyze --pbt 0.2").code == 2);
    CHECK(lharq("analyze --pff 0.5 --pbt 0.2 --mode fancy").code == 2);
}

TEST_CASE("usage errors", "[cli]") {
    CHECK(lharq("").code == 2);
    CHECK(lharq("--bogus").code == 2);
    CHECK(lharq("simulate " + samples + "/minimal.cfg --frobnicate").code == 2);
    const auto h = lharq("simulate --help");
    CHECK(h.code == 0);
    CHECK_THAT(h.out, ContainsSubstring("delta_e_empirical"));
}

TEST_CASE("simulate writes reproducible outputs", "[cli]") {
    const TempDir tmp;
    const auto a = lharq("simulate " + samples + "/minimal.cfg --out " + (tmp / "a") + " --trace 5");
    REQUIRE(a.code == 0);
    const auto b = lharq("simulate " + samples + "/minimal.cfg --out " + (tmp / "b") + " --threads 2");
    REQUIRE(b.code == 0);
    CHECK(slurp(tmp / "a/results.csv") == slurp(tmp / "b/results.csv"));
    CHECK_THAT(slurp(tmp / "a/results.csv"), ContainsSubstring("delta_e_empirical"));
    const auto m = nlohmann::json::parse(slurp(tmp / "a/manifest.json"));
    CHECK(m.at("master_seed") == 42);
    CHECK(fs::exists(tmp / "a/trace.jsonl"));
    CHECK_FALSE(fs::exists(tmp / "b/trace.jsonl"));
    const auto s = lharq("simulate " + samples + "/minimal.cfg --out " + (tmp / "c") + " --seed 7");
    REQUIRE(s.code == 0);
    CHECK(nlohmann::json::parse(slurp(tmp / "c/manifest.json")).at("master_seed") == 7);
}

TEST_CASE("simulate rejects bad configs", "[cli]") {
    const TempDir tmp;
    {
        std::ofstream(tmp / "bad.cfg") << "[harq]\nmax_rounds = 2\ncoding_rate = 0.5\nmixing_rate = 0.9\n";
        const auto r = lharq("simulate " + (tmp / "bad.cfg") + " --out " + (tmp / "o"));
        CHECK(r.code == 2);
        CHECK_THAT(r.out, ContainsSubstring("bad.cfg:4:15"));
    }
    {
        std::ofstream(tmp / "dead.cfg") << "[experiment]\ntrials = 1\ndepartures_per_trial = 100\nbank_size = 1000\n"
                                           "[link]\nmean_snr_db = -60\n";
        const auto r = lharq("simulate " + (tmp / "dead.cfg") + " --out " + (tmp / "d"));
        CHECK(r.code == 1);
        CHECK_THAT(r.out, ContainsSubstring("failed:"));
        CHECK(fs::exists(tmp / "d/results.csv"));
    }
    CHECK(lharq("simulate /nonexistent.cfg").code == 2);
}

TEST_CASE("sweeps", "[cli]") {
    const TempDir tmp;
    auto r = lharq("sweep " + samples + "/minimal.cfg --axis k --values 1,2,3 --out " + (tmp / "k"));
    REQUIRE(r.code == 0);
    const auto csv = slurp(tmp / "k/results.csv");
    CHECK(csv.rfind("k,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    r = lharq("sweep --sensitivity --omega 2 --beta 0.5 --out " + (tmp / "s"));
    REQUIRE(r.code == 0);
    CHECK_THAT(slurp(tmp / "s/sensitivity.csv"), ContainsSubstring("freshness"));
    CHECK(lharq("sweep " + samples + "/minimal.cfg --axis warp --values 1 --out " + (tmp / "w")).code == 2);
}

TEST_CASE("pdf-check", "[cli]") {
    auto r = lharq("pdf-check --preset average --draws 20000");
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("chi-square"));
    r = lharq("pdf-check --b 0.1 --m 2 --omega 0 --draws 20000");
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("exponential special case"));
    r = lharq("pdf-check --b 0.1 --m 500 --omega 1 --draws 20000");
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("is large"));
    CHECK(lharq("pdf-check --b -1").code == 2);
}

TEST_CASE("validate", "[cli]") {
    const auto r = lharq("validate --quick --only 1,8");
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("[PASS] 1 "));
    CHECK_THAT(r.out, ContainsSubstring("[PASS] 8 "));
}
