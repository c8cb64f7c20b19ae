#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "edsp/cli.hpp"
#include "edsp/report_json.hpp"

using namespace edsp;

namespace {

const std::string data_dir = EDSP_DATA_DIR;
const std::string ell7 = data_dir + "/sample_ell7.json";
const std::string ell2 = data_dir + "/sample_ell2.json";

struct Run {
    int code;
    std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "edsp");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string line; std::getline(is, line);)
        if (!line.empty())
            out.push_back(line);
    return out;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("edsp_cli_" + name)).string();
}

std::string write_config(const std::string& name, const nlohmann::json& doc) {
    const std::string path = temp_path(name);
    std::ofstream(path) << doc.dump();
    return path;
}

}  // namespace

TEST_CASE("gen") {
    Run r = run_cli({"gen", "--config", ell7, "--format", "text"});
    REQUIRE(r.code == cli::ok);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 12);
    CHECK(ls.back() == "12 128");
    r = run_cli({"gen", "--config", ell7, "--max-n", "1", "--format", "text"});
    CHECK(lines(r.out) == std::vector<std::string>{"1 1"});
    r = run_cli({"gen", "--config", ell7, "--max-n", "12"});
    ls = lines(r.out);
    const auto last = nlohmann::json::parse(ls.back());
    CHECK(last["n"] == 12);
    CHECK(last["B"] == "128");
}

TEST_CASE("powers") {
    Run r = run_cli({"powers", "--config", ell7, "--ell", "7", "--max-n", "12"});
    REQUIRE(r.code == cli::ok);
    auto doc = nlohmann::json::parse(lines(r.out).at(0));
    CHECK(doc["indices"] == std::vector<int>{1, 2, 3, 4, 7, 12});
    r = run_cli({"powers", "--config", ell7, "--ell", "2", "--max-n", "12"});
    doc = nlohmann::json::parse(lines(r.out).at(0));
    CHECK(doc["indices"] == std::vector<int>{1, 2, 3, 4, 7});
    r = run_cli({"powers", "--config", ell7, "--ell", "5", "--max-n", "1"});
    doc = nlohmann::json::parse(lines(r.out).at(0));
    CHECK(doc["indices"] == std::vector<int>{1});
}

TEST_CASE("solve emits solutions and a report") {
    Run r = run_cli({"solve", "--config", ell7});
    REQUIRE(r.code == cli::ok);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 17);
    std::vector<Solution> sols;
    for (std::size_t i = 0; i + 1 < ls.size(); ++i)
        sols.push_back(solution_from_json(nlohmann::json::parse(ls[i])));
    for (const auto& s : sols) {
        CHECK(s.ell == 7);
        CHECK(nlohmann::json::parse(to_json(s).dump()) == to_json(s));
    }
    CHECK(sols.back() == Solution{1, 1, 4, 1, 7});
    CHECK(sols[sols.size() - 2] == Solution{2, 5, 3, 2, 7});
    const auto report = nlohmann::json::parse(ls.back());
    CHECK(report.contains("report"));

    r = run_cli({"solve", "--config", ell2});
    CHECK(r.code == cli::ok);
    CHECK(lines(r.out).size() == 14);

    r = run_cli({"solve", "--config", ell7, "--ell", "2", "--power-set", "1,2,3,4,7", "--assume-complete",
                 "--format", "text"});
    CHECK(r.code == cli::ok);
    CHECK(r.out.find("13 solutions, complete") != std::string::npos);
}

TEST_CASE("verify") {
    Run r = run_cli({"verify", "--config", ell7, "--max-n", "30", "--max-p", "50", "--rs-max", "200",
                     "--format", "text"});
    CHECK(r.code == cli::verification_failure);
    CHECK(r.out.find("VIOLATION " + std::string("rank bound")) != std::string::npos);

    r = run_cli({"verify", "--config", ell7, "--max-n", "30", "--max-p", "1", "--rs-max", "200"});
    CHECK(r.code == cli::ok);

    r = run_cli({"verify", "--config", ell7, "--max-n", "1", "--rs-max", "0"});
    CHECK(r.code == cli::ok);
    CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("config errors") {
    auto doc = nlohmann::json::parse(std::ifstream(ell7));
    doc["curve"] = {{"a1", "0"}, {"a2", "0"}, {"a3", "0"}, {"a4", "-1"}, {"a6", "0"}};
    doc["point"] = {{"x", "0"}, {"y", "0"}};
    const std::string torsion = write_config("torsion.json", doc);
    Run r = run_cli({"gen", "--config", torsion});
    CHECK(r.code == cli::config_error);
    CHECK(r.err.find("error") != std::string::npos);
    std::filesystem::remove(torsion);

    r = run_cli({"gen", "--config", temp_path("does_not_exist.json")});
    CHECK(r.code == cli::config_error);
    r = run_cli({"gen", "--config", ell7, "--format", "xml"});
    CHECK(r.code == cli::config_error);
    r = run_cli({"solve", "--config", ell7, "--power-set", "1,5", "--ell", "2"});
    CHECK(r.code == cli::config_error);
    r = run_cli({"frobnicate"});
    CHECK(r.code == cli::config_error);
}

TEST_CASE("cache resume and corruption") {
    const std::string cache = temp_path("cache.json");
    std::filesystem::remove(cache);
    Run r = run_cli({"gen", "--config", ell7, "--max-n", "20", "--cache", cache});
    REQUIRE(r.code == cli::ok);
    REQUIRE(std::filesystem::exists(cache));
    r = run_cli({"verify", "--config", ell7, "--max-n", "20", "--max-p", "1", "--rs-max", "0", "--cache", cache});
    CHECK(r.code == cli::ok);

    auto doc = nlohmann::json::parse(std::ifstream(cache));
    doc["terms"]["9"] = "20";
    std::ofstream(cache) << doc.dump();
    r = run_cli({"verify", "--config", ell7, "--max-n", "20", "--max-p", "1", "--rs-max", "0", "--cache", cache,
                 "--format", "text"});
    CHECK(r.code == cli::verification_failure);
    CHECK(r.out.find("VIOLATION cached term equals recomputed B_n") != std::string::npos);

    std::ofstream(cache) << "[]";
    r = run_cli({"gen", "--config", ell7, "--cache", cache});
    CHECK(r.code == cli::config_error);
    std::filesystem::remove(cache);
}
