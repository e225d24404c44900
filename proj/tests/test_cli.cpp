#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "randlink/io.hpp"

#ifndef RANDLINK_CLI_PATH
#error "RANDLINK_CLI_PATH must point at the built binary"
#endif

namespace {

struct CliRun {
    int exit_code;
    std::string out;
};

// Runs the real binary through the shell; stderr is dropped so stdout stays
// a clean machine-readable payload (that separation is itself under test).
CliRun run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + RANDLINK_CLI_PATH " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

randlink::Json parse(const CliRun& r) { return randlink::Json::parse(r.out); }

}  // namespace

TEST_CASE("exact subcommand emits enveloped values", "[cli]") {
    auto r = run_cli("exact --n 4 --what stirling");
    REQUIRE(r.exit_code == 0);
    auto j = parse(r);
    CHECK(j["schema"] == 1);
    CHECK(j["manifest"]["command"] == "exact");
    CHECK(j["manifest"]["parameters"]["n"] == 4);
    CHECK(j["result"]["values"].dump() == R"(["6","11","6","1"])");

    r = run_cli("exact --n 4 --what harmonic");
    REQUIRE(r.exit_code == 0);
    CHECK(parse(r)["result"]["value"] == "25/12");

    r = run_cli("exact --n 3 --what distribution");
    REQUIRE(r.exit_code == 0);
    CHECK(parse(r)["result"]["values"].dump() == R"(["1/3","1/2","1/6"])");

    r = run_cli("exact --n 3 --what mode");
    REQUIRE(r.exit_code == 0);
    j = parse(r);
    CHECK(j["result"]["K"] == 2);
    CHECK(j["result"]["unique"] == true);

    r = run_cli("exact --n 2 --what mode");  // the one genuine tie
    REQUIRE(r.exit_code == 0);
    j = parse(r);
    CHECK(j["result"]["K"] == 1);
    CHECK(j["result"]["unique"] == false);
}

TEST_CASE("verify partition reports the near-identity class", "[cli]") {
    const auto r = run_cli("verify --target partition --n 5");
    REQUIRE(r.exit_code == 0);
    const auto row = parse(r)["result"]["rows"][0];
    CHECK(row["argmax"].dump() == "[4,1]");
    CHECK(row["class_size"] == "30");
    CHECK(row["probability"] == "1/4");
    CHECK(row["unique"] == true);
    CHECK(row["pass"] == true);
}

TEST_CASE("verify lemma exposes centralizer rows", "[cli]") {
    const auto r = run_cli("verify --target lemma --n 5");
    REQUIRE(r.exit_code == 0);
    const auto rep = parse(r)["result"]["rows"][0];
    CHECK(rep["pass"] == true);
    bool found = false;
    for (const auto& row : rep["rows"]) {
        if (row["type"].dump() == "[2,2,1]") {
            found = true;
            CHECK(row["centralizer"].is_number());
            CHECK(row["centralizer"] == 8);
        }
    }
    CHECK(found);
}

TEST_CASE("verify erdos passes on ranges below the first violation", "[cli]") {
    const auto r = run_cli("verify --target erdos --from 189 --to 200");
    REQUIRE(r.exit_code == 0);
    const auto res = parse(r)["result"];
    CHECK(res["violations"] == 0);
    CHECK(res["pass"] == true);
}

TEST_CASE("verify erdos reports violations honestly past n = 203", "[cli]") {
    const auto r = run_cli("verify --target erdos --from 189 --to 210");
    CHECK(r.exit_code == 1);  // verification failure, loudly
    const auto res = parse(r)["result"];
    CHECK(res["violations"] == 7);
    CHECK(res["violations_passing_at_K_minus_1"] == 7);
    CHECK(res["pass"] == false);
    for (const auto& row : res["rows"]) {
        if (row["n"] == 189) CHECK(row["pass"] == true);
        if (row["n"] == 203) CHECK(row["pass"] == true);
        if (row["n"] == 204) {
            CHECK(row["pass"] == false);
            CHECK(row["pass_shifted"] == true);
            CHECK(row["K"] == 6);
            CHECK(row["lower"] == 4);
            CHECK(row["upper"] == 5);
        }
    }
}

TEST_CASE("verify ranges may end exactly at the row cap", "[cli]") {
    // Regression: the sweep must stop at --to; one row past it would trip the
    // n = 2000 resource cap even though no row beyond 2000 is needed.
    const auto r = run_cli("verify --target erdos --from 1999 --to 2000");
    CHECK((r.exit_code == 0 || r.exit_code == 1));  // a verdict, not a cap error
    CHECK(parse(r)["result"]["to"] == 2000);
}

TEST_CASE("verify hammersley: reported below 189, asserted from 189 up", "[cli]") {
    auto r = run_cli("verify --target hammersley --from 3 --to 100");
    REQUIRE(r.exit_code == 0);  // nothing asserted in this range
    auto res = parse(r)["result"];
    CHECK(res["violations"] == 0);
    CHECK(res["rows"][0]["asserted"] == false);

    r = run_cli("verify --target hammersley --n 189");
    REQUIRE(r.exit_code == 0);
    res = parse(r)["result"];
    CHECK(res["rows"][0]["asserted"] == true);
    CHECK(res["rows"][0]["in_band"] == true);
}

TEST_CASE("simulate output is reproducible and thread-invariant", "[cli]") {
    const std::string args = "simulate --n 4 --k 50 --walks 2000 --seed 7";
    const auto a = run_cli(args + " --threads 1");
    const auto b = run_cli(args + " --threads 1");
    const auto c = run_cli(args + " --threads 4");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    REQUIRE(c.exit_code == 0);
    using randlink::canonical_for_comparison;
    CHECK(canonical_for_comparison(a.out) == canonical_for_comparison(b.out));
    CHECK(canonical_for_comparison(a.out) == canonical_for_comparison(c.out));

    const auto j = parse(a);
    CHECK_FALSE(j["manifest"]["parameters"].contains("threads"));  // execution detail
    const auto& res = j["result"];
    CHECK(res["n"] == 4);
    CHECK(res["distribution"] == "mu_c");
    CHECK(res.contains("empirical_mode"));
    CHECK(res["modal_partition"].is_array());
    CHECK(res["knot_frequency"].is_number());
    CHECK(res["tv_components_vs_exact"].is_number());
    std::uint64_t total = 0;
    for (const auto& [key, value] : res["component_counts"].items())
        total += value.get<std::uint64_t>();
    CHECK(total == 2000);
}

TEST_CASE("simulate --out writes byte-identical payload", "[cli]") {
    const std::string path = "/tmp/randlink_cli_out.json";
    const auto r = run_cli("simulate --n 3 --k 5 --walks 100 --seed 1 --out " + path);
    REQUIRE(r.exit_code == 0);
    std::ifstream in(path);
    const std::string file((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(file == r.out);
    std::remove(path.c_str());
}

TEST_CASE("simulate supports the oracle step distribution", "[cli]") {
    const auto r = run_cli("simulate --n 4 --k 0 --walks 500 --seed 2 --dist uniform_permutation");
    REQUIRE(r.exit_code == 0);
    CHECK(parse(r)["result"]["distribution"] == "uniform_permutation");
}

TEST_CASE("converge emits the CSV contract", "[cli]") {
    const auto r = run_cli("converge --n 4 --steps 0,2,10 --walks 500 --seed 9");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("# schema: 1\n", 0) == 0);
    CHECK(r.out.find("k,tv_components,tv_uniform,mean_components\n") != std::string::npos);
    CHECK(r.out.find("\n0,") != std::string::npos);
    CHECK(r.out.find("\n2,") != std::string::npos);
    CHECK(r.out.find("\n10,") != std::string::npos);

    const auto again = run_cli("converge --n 4 --steps 0,2,10 --walks 500 --seed 9 --threads 3");
    using randlink::canonical_for_comparison;
    CHECK(canonical_for_comparison(r.out) == canonical_for_comparison(again.out));
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
    CHECK(run_cli("exact --n 4").exit_code == 2);                          // missing --what
    CHECK(run_cli("exact --n 4 --what nope").exit_code == 2);              // bad enum
    CHECK(run_cli("verify --target nope --n 5").exit_code == 2);           // bad target
    CHECK(run_cli("verify --target partition").exit_code == 2);            // no n, no range
    CHECK(run_cli("verify --target partition --from 5").exit_code == 2);   // --from without --to
    CHECK(run_cli("verify --target partition --from 9 --to 5").exit_code == 2);
    CHECK(run_cli("verify --target erdos --n 100").exit_code == 2);        // below claim range
    CHECK(run_cli("simulate --n 1 --k 1 --walks 1 --seed 1").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("resource caps exit with code 3", "[cli]") {
    CHECK(run_cli("exact --n 11 --what stirling", "RANDLINK_MAX_STIRLING_N=10 ").exit_code == 3);
    CHECK(run_cli("simulate --n 3 --k 1 --walks 100 --seed 1", "RANDLINK_MAX_WALKS=10 ").exit_code ==
          3);
}

TEST_CASE("io failures exit with code 4", "[cli]") {
    const auto r =
        run_cli("simulate --n 3 --k 1 --walks 10 --seed 1 --out /no-such-dir-randlink/x.json");
    CHECK(r.exit_code == 4);
}
