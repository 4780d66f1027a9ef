#include "qfano/jsonl.hpp"
#include "qfano/search.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>

using namespace qfano;

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout only
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(QFANO_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("JSONL records round-trip", "[cli]") {
    SearchConfig cfg;
    cfg.q = 13;
    for (const auto& rec : search_q(cfg)) {
        auto line = record_to_jsonl(rec);
        CHECK(record_from_jsonl(line) == rec);
    }
    SearchConfig cfg2;
    cfg2.q = 2;
    auto recs = search_q2(cfg2);
    for (std::size_t i = 0; i < recs.size(); i += 97)
        CHECK(record_from_jsonl(record_to_jsonl(recs[i])) == recs[i]);
}

TEST_CASE("hilbert subcommand prints the coefficients", "[cli]") {
    auto res = run_cli("hilbert --q 2 --A3 10/3 --basket \"3,1,1\" --terms 2");
    CHECK(res.exit_code == 0);
    CHECK(res.output == "1 5 16\n");
}

TEST_CASE("search subcommand emits the q = 19 record", "[cli]") {
    auto res = run_cli("search --q 19");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"A3\":\"1/420\"") != std::string::npos);
    auto rec = record_from_jsonl(res.output.substr(0, res.output.find('\n')));
    CHECK(rec.q == 19);
    CHECK(rec.A3 == Rat(1, 420));
}

TEST_CASE("search output is byte-identical across runs", "[cli]") {
    auto a = run_cli("search --q 13 --terms 6");
    auto b = run_cli("search --q 13 --terms 6");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    auto c = run_cli("search --q 13 --terms 6 --partitions 4");
    CHECK(a.output == c.output);
}

TEST_CASE("empty search exits zero", "[cli]") {
    auto res = run_cli("search --q 14");
    CHECK(res.exit_code == 0);
    CHECK(res.output.empty());
}

TEST_CASE("wps subcommand", "[cli]") {
    auto res = run_cli("wps 3,4,5,7");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("q: 19") != std::string::npos);
    CHECK(res.output.find("A3: 1/420") != std::string::npos);
}

TEST_CASE("format subcommand", "[cli]") {
    auto res = run_cli("format \"pf:1/2,1/2,1/2,3/2,3/2@1,1,1,1,2,2,3\" --terms 3");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("1 - 2*t^3 - 3*t^4 + 3*t^5 + 2*t^6 - t^9") != std::string::npos);
    CHECK(res.output.find("gorenstein symmetry: pass") != std::string::npos);
    CHECK(res.output.find("A3: 7/3") != std::string::npos);
    CHECK(res.output.find("coefficients: 1 4 12 27") != std::string::npos);

    auto hyp = run_cli("format hyp:6@1,2,3,4,5 --terms 1");
    CHECK(hyp.exit_code == 0);
    CHECK(hyp.output.find("q: 9") != std::string::npos);
}

TEST_CASE("ledger subcommand", "[cli]") {
    auto res = run_cli(
        "ledger \"blowpt, blowcurve(g=0,kdeg=9), flop, contract:1/2(1,1,1), contract:1/3(1,1,2)\" --start 54");
    CHECK(res.exit_code == 0);
    CHECK(res.output == "54,46,26,26,53/2,80/3\n");
}

TEST_CASE("verify-example passes", "[cli]") {
    auto res = run_cli("verify-example");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("54,46,26,26,53/2,80/3") != std::string::npos);
    CHECK(res.output.find("g = 14") != std::string::npos);
    CHECK(res.output.find("OK") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
    CHECK(run_cli("search --q 19 --no-such-flag").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("search").exit_code == 2);           // missing --q
    CHECK(run_cli("hilbert --q 2 --A3 x --basket \"\"").exit_code == 2);
    CHECK(run_cli("search --q 1").exit_code == 2);     // below the implemented range
}

TEST_CASE("data failures exit with code 1", "[cli]") {
    // chi(qA) non-integral: inconsistent (q, A3, basket)
    CHECK(run_cli("hilbert --q 2 --A3 1/2 --basket \"\" --terms 3").exit_code == 1);
}
