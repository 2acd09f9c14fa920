#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "partigrowth/cli.hpp"
#include "partigrowth/log_prob.hpp"
#include "partigrowth/measures.hpp"
#include "partigrowth/version.hpp"

using namespace partigrowth;
using nlohmann::json;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "partigrowth");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> result;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) result.push_back(line);
    return result;
}

json summary_of(const std::string& csv) {
    for (const auto& line : lines(csv)) {
        if (line.rfind("# summary=", 0) == 0) return json::parse(line.substr(10));
    }
    return {};
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"bogus"}).code == cli::kExitUsage);
    CHECK(run({"sample"}).code == cli::kExitUsage);                           // --n is required
    CHECK(run({"sample", "--n", "0"}).code == cli::kExitUsage);               // out of range
    CHECK(run({"sample", "--n", "200000", "--method", "rejection"}).code == cli::kExitUsage);
    CHECK(run({"verify", "identities", "--nmax", "5000"}).code == cli::kExitUsage);
    CHECK(run({"flowcheck", "--kind", "strict", "--nmax", "61"}).code == cli::kExitUsage);
    CHECK(run({"sample", "--n", "5", "--out", "xml"}).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitOk);
    CHECK(run({"sample", "--n", "10", "--replicas", "3"}).code == cli::kExitOk);

    // a per-sample tolerance nobody meets is a verification failure, not a crash
    CHECK(run({"shape", "--n", "100", "--samples", "10", "--tolerance", "0.001"}).code == cli::kExitVerificationFailed);
}

TEST_CASE("validation happens before any output") {
    const auto bad = run({"shape", "--n", "0"});
    CHECK(bad.code == cli::kExitUsage);
    CHECK(bad.out.empty());
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("schema header") {
    const auto csv = run({"flowcheck", "--nmax", "4", "--no-timestamp"});
    const auto rows = lines(csv.out);
    REQUIRE(rows.size() >= 3);
    CHECK(rows[0] == "# schema_version=" + std::to_string(kSchemaVersion) + " version=" + kVersion);
    REQUIRE(rows[1].rfind("# config=", 0) == 0);
    const auto config = json::parse(rows[1].substr(9));
    CHECK(config["command"] == "flowcheck");
    CHECK(config["nmax"] == 4);
    CHECK(config["kind"] == "ordinary");

    const auto jl = run({"sample", "--n", "12", "--replicas", "2", "--seed", "4"});
    const auto records = lines(jl.out);
    REQUIRE(records.size() >= 4);
    const auto header = json::parse(records[0]);
    CHECK(header["record"] == "header");
    CHECK(header["schema_version"] == kSchemaVersion);
    CHECK(header["version"] == kVersion);
    CHECK(header["config"]["seed"] == 4);
    CHECK(json::parse(records[1])["record"] == "timestamp");
    for (const auto& r : records) CHECK(json::parse(r).contains("schema_version"));
}

TEST_CASE("reruns are byte-identical without the timestamp") {
    const std::vector<std::vector<std::string>> commands{
        {"sample", "--n", "500", "--replicas", "20", "--seed", "11", "--no-timestamp"},
        {"grow", "--n", "50", "--replicas", "200", "--seed", "11", "--no-timestamp"},
        {"ppp", "--smax", "30", "--replicas", "3", "--seed", "11", "--no-timestamp", "--out", "csv"},
        {"oddeven", "--n", "2000", "--samples", "30", "--seed", "11", "--no-timestamp"},
        {"shape", "--n", "2000", "--samples", "5", "--seed", "11", "--no-timestamp", "--out", "pretty"},
    };
    for (const auto& cmd : commands) {
        CAPTURE(cmd[0]);
        const auto a = run(cmd);
        const auto b = run(cmd);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
    // the thread count changes the recorded config but not the data rows
    auto strip_config = [](const std::string& text) {
        std::string kept;
        for (const auto& line : lines(text)) {
            if (line.rfind("# config=", 0) != 0) kept += line + '\n';
        }
        return kept;
    };
    const auto one = run({"sample", "--n", "300", "--replicas", "40", "--seed", "2", "--no-timestamp", "--out", "csv", "--threads", "1"});
    const auto four = run({"sample", "--n", "300", "--replicas", "40", "--seed", "2", "--no-timestamp", "--out", "csv", "--threads", "4"});
    CHECK(strip_config(one.out) == strip_config(four.out));
}

TEST_CASE("verify identities") {
    const auto r = run({"verify", "identities", "--nmax", "100", "--no-timestamp"});
    CHECK(r.code == cli::kExitOk);
    const auto rows = lines(r.out);
    int data = 0;
    for (const auto& line : rows) {
        if (line.rfind("backward_normalization,", 0) == 0 || line.rfind("divisor_identity,", 0) == 0) {
            ++data;
            CHECK(line.substr(line.rfind(',') + 1) == "true");
        }
    }
    CHECK(data == 2 * 101);  // n = 0..100
    CHECK(run({"verify", "recursions", "--nmax", "300", "--no-timestamp"}).code == cli::kExitOk);
}

TEST_CASE("flowcheck flags the strict staircase levels") {
    const auto r = run({"flowcheck", "--kind", "strict", "--nmax", "21", "--no-timestamp"});
    CHECK(r.code == cli::kExitOk);
    const auto s = summary_of(r.out);
    const auto levels = s["infeasible_levels"].get<std::vector<int>>();
    for (int n : {10, 15, 21}) CHECK(std::find(levels.begin(), levels.end(), n) != levels.end());
    for (const auto& line : lines(r.out)) {
        for (const char* n : {"10,", "15,", "21,"}) {
            if (line.rfind(n, 0) == 0) CHECK(line.find("false,") != std::string::npos);
        }
    }
}

TEST_CASE("grow reports a uniform hit partition") {
    const auto r = run({"grow", "--n", "8", "--replicas", "200000", "--seed", "1", "--summary-only", "--out", "csv", "--no-timestamp"});
    CHECK(r.code == cli::kExitOk);
    const auto s = summary_of(r.out);
    REQUIRE(s.contains("chi_square_p"));
    CHECK(s["chi_square_p"].get<double>() > 1e-3);
    CHECK(s["chi_square_dof"] == 21);
    CHECK(s["pass"] == true);
}

TEST_CASE("pretty probabilities round-trip") {
    const auto r = run({"grow", "--n", "40", "--replicas", "1000", "--seed", "3", "--summary-only", "--out", "pretty", "--no-timestamp"});
    double printed = -1;
    for (const auto& line : lines(r.out)) {
        std::istringstream in(line);
        std::string key;
        in >> key;
        if (key == "gamma_exact") in >> printed;
    }
    const double exact = gamma_visit(40).value();
    CHECK(std::abs(printed - exact) <= 1e-12 * exact);
    CHECK(std::abs(LogProb::from_value(printed).value() - exact) <= 1e-12 * exact);
}

TEST_CASE("installed binary") {
    const char* path = std::getenv("PARTIGROWTH_CLI");
    if (path == nullptr) return;
    auto status = [&](const std::string& args) {
        const int raw = std::system((std::string(path) + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("verify identities --nmax 100") == 0);
    CHECK(status("nonsense") == 1);
    CHECK(status("sample --n 7 --replicas 2 --seed 1") == 0);
}
