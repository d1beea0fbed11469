#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(FVTOOL_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

std::string strip_timestamp(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.find("\"timestamp\"") == std::string::npos) out << line << "\n";
    return out.str();
}

std::string tmp_file(const std::string& name) { return "/tmp/fvtool_test_" + name; }

} // namespace

TEST_CASE("complex build / homology / fundamental-cycle round trip") {
    std::string g2 = tmp_file("g2.json");
    RunResult b = run("complex build --genus 2 --out " + g2);
    CHECK(b.exit_code == 0);
    auto j = nlohmann::json::parse(b.output);
    CHECK(j.at("euler_characteristic") == "-2");
    CHECK(j.at("config").at("model") == "genus");

    RunResult h = run("complex homology --in " + g2 + " --degree 1");
    CHECK(h.exit_code == 0);
    CHECK(nlohmann::json::parse(h.output).at("group") == "Z^4");

    RunResult v = run("complex validate --in " + g2);
    CHECK(v.exit_code == 0);
    CHECK(nlohmann::json::parse(v.output).at("is_closed_pseudo_manifold") == true);

    std::string klein = tmp_file("klein.json");
    CHECK(run("complex build --model klein --out " + klein).exit_code == 0);
    RunResult fc = run("complex fundamental-cycle --in " + klein);
    CHECK(fc.exit_code == 2);
    CHECK(nlohmann::json::parse(fc.output).at("error").at("code") == "NonOrientable");
}

TEST_CASE("fill subcommands on the circle") {
    std::string c3 = tmp_file("c3.json");
    CHECK(run("complex build --model circle --q 3 --out " + c3).exit_code == 0);
    RunResult lp = run("fill lp --complex " + c3 + " --target v1-v0");
    CHECK(lp.exit_code == 0);
    CHECK(nlohmann::json::parse(lp.output).at("value") == "1");
    RunResult ilp = run("fill ilp --complex " + c3 + " --target v1-v0");
    CHECK(nlohmann::json::parse(ilp.output).at("value") == "1");
    RunResult zero = run("fill lp --complex " + c3 + " --target 0 --degree 0");
    CHECK(nlohmann::json::parse(zero.output).at("value") == "0");
    RunResult bad = run("fill lp --complex " + c3 + " --target v0");
    CHECK(bad.exit_code == 2);
    CHECK(nlohmann::json::parse(bad.output).at("status") == "infeasible");
}

TEST_CASE("fv reports and exit codes") {
    RunResult rl = run("fv --matrix 2,1,1,1 --mode z --m-max 20");
    CHECK(rl.exit_code == 0);
    auto j = nlohmann::json::parse(rl.output);
    CHECK(j.at("upper") == "2");
    CHECK(j.at("config").at("mode") == "z");

    RunResult ell = run("fv --matrix 0,-1,1,0 --mode z --m-max 8");
    CHECK(nlohmann::json::parse(ell.output).at("interval") == "[0, 0]");

    RunResult notsl2 = run("fv --matrix 1,0,0,-1 --mode z");
    CHECK(notsl2.exit_code == 2);
    CHECK(nlohmann::json::parse(notsl2.output).at("error").at("code") == "NotSL2");
}

TEST_CASE("identical runs produce byte-identical reports modulo the timestamp") {
    RunResult a = run("fv --matrix 2,1,1,1 --mode z --m-max 15");
    RunResult b = run("fv --matrix 2,1,1,1 --mode z --m-max 15");
    CHECK(a.exit_code == 0);
    CHECK(strip_timestamp(a.output) == strip_timestamp(b.output));
    CHECK(a.output.find("\"timestamp\"") != std::string::npos);
}

TEST_CASE("torsion table flags small traces") {
    RunResult t = run("torsion --matrix 3,2,1,1 --m-max 3");
    auto j = nlohmann::json::parse(t.output);
    CHECK(j.at("rows").at(0).at("trace_minus_2") == "2");
    CHECK(j.at("rows").at(1).at("trace_minus_2") == "12");
    CHECK(j.at("rows").at(2).at("trace_minus_2") == "50");
    CHECK(j.at("all_match") == true);

    RunResult id = run("torsion --matrix 1,0,0,1 --m-max 2");
    auto ji = nlohmann::json::parse(id.output);
    CHECK(ji.at("rows").at(0).at("flag") == "TraceTooSmall");
}
