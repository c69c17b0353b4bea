#include "moebius/cache.hpp"
#include "moebius/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
    json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = moebius::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("moebius-test-" + name + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("gram reproduces the n = 1 rook matrix")
    {
        auto r = run({"--stable", "gram", "--family", "rook", "--n", "1", "--lambda", "0", "--alpha0", "2", "--beta0", "0",
                      "--gamma0", "1"});
        REQUIRE(r.code == 0);
        auto d = r.doc();
        CHECK(d["format_version"] == 1);
        CHECK(d["command"] == "gram");
        CHECK(d["input"]["family"] == "Rook");
        CHECK(d["result"]["matrix"] == json::parse(R"([["2","0","1"],["0","1","0"],["1","0","1"]])"));
        CHECK(d["result"]["rank"] == 3);
        CHECK(d["result"]["det"] == "1");
        CHECK_FALSE(d.contains("timing_ms"));
    }

    TEST_CASE("params file input")
    {
        auto dir = scratch_dir("params");
        auto file = dir / "a1b1g0.json";
        std::ofstream(file) << R"({"p_alpha":["1"], "p_beta":["1"], "p_gamma":["0"], "q":["1","-1"]})";
        auto r = run({"--stable", "gram", "--family", "rook", "--n", "3", "--lambda", "1", "--params", file.string(),
                      "--summary"});
        REQUIRE(r.code == 0);
        CHECK(r.doc()["result"]["rank"] == 27);
        CHECK_FALSE(r.doc()["result"].contains("matrix"));
        CHECK(run({"gram", "--family", "rook", "--n", "1", "--lambda", "0", "--params", (dir / "missing.json").string()})
                  .code == 3);
        std::ofstream(dir / "bad.json") << "{";
        CHECK(run({"gram", "--family", "rook", "--n", "1", "--lambda", "0", "--params", (dir / "bad.json").string()}).code ==
              2);
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("timing is present unless --stable")
    {
        auto r = run({"deligne", "--alpha0", "19", "--beta0", "4", "--gamma0", "10"});
        REQUIRE(r.code == 0);
        CHECK(r.doc().contains("timing_ms"));
        auto res = r.doc()["result"];
        CHECK(res["delta"] == "9");
        CHECK(res["delta_plus"] == "7");
        CHECK(res["delta_minus"] == "3");
    }

    TEST_CASE("stable output is byte-identical across runs")
    {
        for (const auto& args : std::vector<std::vector<std::string>>{
                 {"--stable", "gram", "--family", "tl", "--n", "4", "--lambda", "2"},
                 {"--stable", "monoid-m", "--K", "6", "--r", "5"},
                 {"--stable", "conjugacy", "--K", "2", "--r", "1", "--wreath-lambda", "2"},
                 {"--stable", "--seed", "9", "selftest"},
             }) {
            auto a = run(args), b = run(args);
            CHECK(a.code == 0);
            CHECK(a.out == b.out);
        }
    }

    TEST_CASE("dims")
    {
        auto tl = run({"--stable", "dims", "--family", "tl", "--n", "3", "--K", "2", "--check"});
        REQUIRE(tl.code == 0);
        CHECK(tl.doc()["result"]["rows"] ==
              json::parse(R"([{"lambda":3,"count":1,"enumerated":1,"match":true},{"lambda":1,"count":12,"enumerated":12,"match":true}])"));
        auto rook = run({"dims", "--family", "rook", "--n", "2", "--output", "csv"});
        CHECK(rook.code == 0);
        CHECK(rook.out == "lambda,count\n2,1\n1,6\n0,9\n");
        auto sym = run({"--stable", "dims", "--family", "symmetric", "--n", "4"});
        CHECK(sym.doc()["result"]["rows"] == json::parse(R"([{"lambda":4,"count":1}])"));
    }

    TEST_CASE("exit codes")
    {
        CHECK(run({"compose", "--d1", "1;1;{1,1'}", "--d2", "1;1;{1,1'}[0,0]"}).code == 2);
        CHECK(run({"compose", "--d1", "2;2;{1,1'}[0,0]|{2,2'}[0,0]", "--d2", "1;1;{1,1'}[0,0]"}).code == 3);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({}).code == 2);
        CHECK(run({"dims", "--n", "x"}).code == 2);
        CHECK(run({"dims", "--family", "octopus", "--n", "2"}).code == 2);
        CHECK(run({"dims", "--n", "2"}).code == 3);
        CHECK(run({"gram", "--family", "tl", "--n", "3", "--lambda", "2"}).code == 3);
        CHECK(run({"monoid-m", "--K", "4", "--r", "2"}).code == 3);
        auto guard = run({"dims", "--family", "partition", "--n", "9", "--K", "2", "--check"});
        CHECK(guard.code == 4);
        CHECK(guard.out.empty());
        CHECK(run({"conjugacy", "--K", "2", "--r", "1", "--wreath-lambda", "3"}).code == 4);
        CHECK(run({"--output", "csv", "deligne"}).code == 3);
        CHECK(run({"--help"}).code == 0);
    }

    // The closed form disagrees with the brute-force determinant from n = 3 on,
    // which the command reports as a failed self-check.
    TEST_CASE("gram-det compares against the brute-force determinant")
    {
        auto two = run({"--stable", "gram-det", "--n", "2", "--alpha0", "2", "--beta0", "3", "--gamma0", "5"});
        CHECK(two.code == 0);
        CHECK(two.doc()["result"]["match"] == true);
        auto three = run({"--stable", "gram-det", "--n", "3", "--alpha0", "2", "--beta0", "3", "--gamma0", "5"});
        CHECK(three.code == 5);
        CHECK(three.doc()["result"]["match"] == false);
    }

    TEST_CASE("diagram commands")
    {
        auto c = run({"--stable", "compose", "--d1", "6;6;{1,2'}[0,0]|{2,4,5}[0,0]|{3,3'}[0,0]|{6,1',4',6'}[0,0]|{5'}[0,0]",
                      "--d2", "6;6;{1,1'}[0,0]|{2,4,5}[0,0]|{3}[0,0]|{6,2',4',6'}[0,0]|{3'}[0,0]|{5'}[0,0]"});
        REQUIRE(c.code == 0);
        CHECK(c.doc()["result"]["terms"] ==
              json::parse(R"([["6;6;{1,2'}[0,0]|{2,4,5}[0,0]|{3}[0,0]|{6,1',4',6'}[0,0]|{3'}[0,0]|{5'}[0,0]","1"]])"));
        auto id = run({"--stable", "compose", "--d1", "2;2;{1,1'}[0,0]|{2,2'}[0,0]", "--d2", "2;2;{1,1'}[0,0]|{2,2'}[0,0]"});
        CHECK(id.doc()["result"]["terms"] == json::parse(R"([["2;2;{1,1'}[0,0]|{2,2'}[0,0]","1"]])"));
        CHECK(run({"--stable", "normalize", "--diagram", "1;1;{1,1'}[0,5]"}).doc()["result"]["diagram"] == "1;1;{1,1'}[2,1]");
        CHECK(run({"--stable", "star", "--diagram", "2;0;{1,2}[0,0]"}).doc()["result"]["diagram"] == "0;2;{1',2'}[0,0]");
        CHECK(run({"--stable", "tensor", "--d1", "1;1;{1,1'}[0,0]", "--d2", "1;1;{1,1'}[0,0]"}).doc()["result"]["diagram"] ==
              "2;2;{1,1'}[0,0]|{2,2'}[0,0]");
        auto m = run({"--stable", "member", "--diagram", "2;2;{1,2'}[0,0]|{2,1'}[0,0]"}).doc()["result"];
        CHECK(m["families"]["Symmetric"] == true);
        CHECK(m["families"]["TemperleyLieb"] == false);
        auto f = run({"--stable", "factorize", "--diagram", "1;1;{1,1'}[1,2]", "--K", "4", "--r", "3"});
        CHECK(f.code == 0);
        CHECK(f.doc()["result"]["middle"] == "(ab^2;1)");
        auto cell = run({"--stable", "cells", "--family", "partition", "--diagram", "2;2;{1,1'}[0,0]|{2,2'}[0,0]"});
        CHECK(cell.doc()["result"]["lambda"] == 2);
    }

    TEST_CASE("structure commands")
    {
        auto m = run({"--stable", "monoid-m", "--K", "4", "--r", "3"});
        REQUIRE(m.code == 0);
        CHECK(m.doc()["result"]["j_cells"][3] == json::parse(R"(["a","a^2","a^3"])"));
        CHECK(m.doc()["result"]["ok"] == true);
        CHECK(run({"--stable", "conjugacy", "--group", "s3"}).doc()["result"]["count"] == 3);
        CHECK(run({"--stable", "conjugacy", "--K", "6", "--r", "5"}).doc()["result"]["count"] == 16);
        auto w = run({"--stable", "wreath-types", "--K", "2", "--r", "1", "--lambda", "2"}).doc()["result"];
        CHECK(w["distinct_types"] == 14);
        CHECK(w["fibers_match"] == true);
        auto s = run({"--stable", "count-simples", "--family", "rook", "--n", "3", "--lambda", "2"}).doc()["result"];
        CHECK(s["count"] == 14);
        auto a = run({"--stable", "apex", "--family", "motzkin", "--n", "2", "--alpha0", "0", "--beta0", "0", "--gamma0", "0"});
        CHECK(a.doc()["result"]["apexes"] == json::parse("[2]"));
        auto i = run({"--stable", "idempotents", "--family", "motzkin", "--n", "2", "--alpha0", "0", "--beta0", "0",
                      "--gamma0", "0"});
        CHECK(i.code == 0);
        CHECK(i.doc()["result"]["agrees_with_apex_set"] == true);
        auto c = run({"--stable", "cells", "--family", "rook", "--n", "2"});
        CHECK(c.code == 0);
        CHECK(c.doc()["result"]["ok"] == true);
        auto st = run({"--stable", "selftest"});
        CHECK(st.code == 0);
        CHECK(st.doc()["result"]["failed"] == 0);
    }

    TEST_CASE("rank of a CSV matrix")
    {
        auto dir = scratch_dir("rank");
        std::ofstream(dir / "m.csv") << "1,2\n2,4\n";
        auto r = run({"--stable", "rank", "--matrix", (dir / "m.csv").string()});
        REQUIRE(r.code == 0);
        CHECK(r.doc()["result"]["rank"] == 1);
        CHECK(r.doc()["result"]["det"] == "0");
        auto csv = run({"--output", "csv", "gram", "--family", "rook", "--n", "1", "--lambda", "0", "--alpha0", "2",
                        "--beta0", "0", "--gamma0", "1"});
        CHECK(csv.out == "2,0,1\n0,1,0\n1,0,1\n");
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("enumeration cache")
    {
        auto dir = scratch_dir("cache");
        std::vector<std::string> args{"--cache-dir", dir.string(), "gram", "--family", "rook", "--n", "3", "--lambda", "1"};
        auto first = run(args);
        REQUIRE(first.code == 0);
        CHECK(first.doc()["meta"]["cache"] == "miss");
        auto second = run(args);
        CHECK(second.doc()["meta"]["cache"] == "hit");
        CHECK(second.doc()["result"] == first.doc()["result"]);

        auto file = moebius::cache_file(dir, moebius::Family::Rook, 3, 1, 1);
        REQUIRE(std::filesystem::exists(file));
        auto text = [&] {
            std::ifstream in(file);
            std::stringstream s;
            s << in.rdbuf();
            return s.str();
        }();
        auto doc = json::parse(text);
        CHECK(doc["format_version"] == moebius::kCacheFormatVersion);
        doc["diagrams"][0] = "3;1;{1,2,3,1'}[0,0]";
        std::ofstream(file) << doc.dump();
        auto third = run(args);
        CHECK(third.doc()["meta"]["cache"] == "regenerated");
        CHECK(third.doc()["result"] == first.doc()["result"]);

        std::ofstream(file) << "not json";
        CHECK(run(args).doc()["meta"]["cache"] == "regenerated");
        CHECK(run(args).doc()["meta"]["cache"] == "hit");

        auto off = run({"--cache-dir", dir.string(), "--no-cache", "gram", "--family", "rook", "--n", "3", "--lambda", "1"});
        CHECK(off.doc()["meta"]["cache"] == "disabled");
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("cache directory from the environment")
    {
        auto dir = scratch_dir("env");
        ::setenv("MOEBIUS_CACHE_DIR", dir.string().c_str(), 1);
        auto r = run({"gram", "--family", "tl", "--n", "2", "--lambda", "0"});
        ::unsetenv("MOEBIUS_CACHE_DIR");
        REQUIRE(r.code == 0);
        CHECK(r.doc()["meta"]["cache"] == "miss");
        CHECK(std::filesystem::exists(moebius::cache_file(dir, moebius::Family::TemperleyLieb, 2, 0, 1)));
        CHECK(moebius::resolve_cache_dir(std::string("/x")) == std::filesystem::path("/x"));
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("unwritable cache directory is ignored")
    {
        auto dir = scratch_dir("ro");
        std::ofstream(dir / "file") << "x";
        auto r = run({"--cache-dir", (dir / "file" / "sub").string(), "gram", "--family", "rook", "--n", "1", "--lambda", "0"});
        CHECK(r.code == 0);
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("checksums")
    {
        CHECK(moebius::checksum_hex("") == "cbf29ce484222325");
        CHECK(moebius::checksum_hex("a") == "af63dc4c8601ec8c");
    }
}
