#pragma once

// Serialization boundary: run manifests, JSON payloads, and the convergence
// CSV. Everything that leaves the library goes through here, with the
// stability rules the consumers rely on:
//   - top-level "schema": 1 on every JSON payload;
//   - big integers as decimal strings, rationals as "p/q" strings (survives
//     any consumer's numeric limits);
//   - partitions as arrays of integers, largest part first;
//   - ordered keys and shortest round-trip doubles, so equal runs produce
//     byte-identical output (the timestamp is the single exempt field).

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <string>
#include <vector>

#include "randlink/errors.hpp"
#include "randlink/exact.hpp"
#include "randlink/numeric.hpp"
#include "randlink/partition.hpp"
#include "randlink/rng.hpp"
#include "randlink/walk.hpp"

namespace randlink {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

inline std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Shortest decimal string that round-trips the double (deterministic and
// locale-independent; also what the JSON serializer emits).
inline std::string double_str(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

// Embedded verbatim in every output artifact. Outputs whose manifests agree
// outside `timestamp` are bit-identical; worker counts are an execution
// detail and deliberately absent.
struct RunManifest {
    std::string command;
    Json parameters = Json::object();
    std::uint64_t master_seed = 0;

    Json to_json() const {
        Json j;
        j["command"] = command;
        j["parameters"] = parameters;
        j["master_seed"] = master_seed;
        j["version"] = kToolVersion;
        j["generator"] = kGeneratorId;
        j["timestamp"] = utc_timestamp();
        return j;
    }
};

inline Json envelope(const RunManifest& manifest, Json result) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["manifest"] = manifest.to_json();
    j["result"] = std::move(result);
    return j;
}

// ---- value -> JSON ---------------------------------------------------------

inline Json json_of(const Partition& p) {
    Json a = Json::array();
    for (auto v : p.parts) a.push_back(v);
    return a;
}

inline std::string partition_key(const Partition& p) { return json_of(p).dump(); }  // "[3,1]"

inline Json json_of(const StirlingRow& row) {
    Json a = Json::array();
    for (const auto& v : row.values) a.push_back(v.str());
    return a;
}

inline Json json_of(const std::vector<Rational>& dist) {
    Json a = Json::array();
    for (const auto& r : dist) a.push_back(to_fraction_string(r));
    return a;
}

inline Json json_of(const ModeResult& m) {
    Json j;
    j["K"] = m.K;
    j["unique"] = m.unique;
    return j;
}

inline Json json_of(const HammersleyEstimate& e, bool asserted) {
    Json j;
    j["n"] = e.n;
    j["K"] = e.K;
    j["base"] = e.base;
    j["correction"] = e.correction;
    j["h_low"] = e.h_low;
    j["h_high"] = e.h_high;
    j["h_mid"] = e.h_mid;
    j["in_band"] = e.in_band;
    j["asserted"] = asserted;
    return j;
}

inline Json json_of(const ErdosResult& r) {
    Json j;
    j["n"] = r.n;
    j["K"] = r.K;
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    j["pass"] = r.pass;
    j["pass_shifted"] = r.pass_shifted;
    return j;
}

inline Json json_of(const ClassRecord& c) {
    Json j;
    j["partition"] = json_of(c.partition);
    j["class_size"] = c.class_size.str();
    j["centralizer"] = c.centralizer_size.str();
    j["probability"] = to_fraction_string(c.probability);
    return j;
}

inline Json json_of(const LemmaReport& rep) {
    Json j;
    j["n"] = rep.n;
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
        Json r;
        r["type"] = json_of(row.type);
        // Plain numbers here: centralizers in the exhaustive regime are at
        // most 8!, far below any consumer's numeric limits.
        r["centralizer"] = row.centralizer_formula.convert_to<std::uint64_t>();
        r["centralizer_bruteforce"] = row.centralizer_bruteforce;
        r["class_size"] = row.class_size.str();
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["min_centralizer"] = rep.min_centralizer;
    Json mins = Json::array();
    for (const auto& t : rep.min_types) mins.push_back(json_of(t));
    j["min_types"] = std::move(mins);
    j["formula_matches_bruteforce"] = rep.formula_matches_bruteforce;
    j["min_is_n_minus_1"] = rep.min_is_n_minus_1;
    j["equality_only_at_n_minus_1_cycles"] = rep.equality_only_at_n_minus_1_cycles;
    j["product_sum_holds"] = rep.product_sum_holds;
    j["equality_cases"] = rep.equality_cases;
    j["failures"] = rep.failures;
    j["pass"] = rep.pass;
    return j;
}

inline Json json_of(const BraidWord& w) {
    Json j;
    j["n"] = w.n;
    j["word"] = w.letters;
    return j;
}

inline Json json_of(const EmpiricalDistribution& emp) {
    Json j;
    j["n"] = emp.n;
    j["k"] = emp.k;
    j["walks"] = emp.walks;
    j["master_seed"] = emp.master_seed;
    j["distribution"] = emp.distribution_kind;
    j["generator"] = kGeneratorId;
    Json comp = Json::object();
    for (std::size_t m = 1; m <= emp.component_counts.size(); ++m)
        comp[std::to_string(m)] = emp.component_counts[m - 1];
    j["component_counts"] = std::move(comp);
    Json types = Json::object();
    for (const auto& [p, c] : emp.type_counts) types[partition_key(p)] = c;  // rev-lex order
    j["type_counts"] = std::move(types);
    j["mean_components"] = emp.mean_components;
    if (!emp.trajectories.empty()) {
        Json words = Json::array();
        for (const auto& w : emp.trajectories) words.push_back(json_of(w));
        j["trajectories"] = std::move(words);
    }
    return j;
}

// ---- convergence CSV -------------------------------------------------------

// Header is a schema contract; metadata rides in front as '#' comment lines.
inline constexpr const char* kCsvHeader = "k,tv_components,tv_uniform,mean_components";

inline std::string csv_convergence(const RunManifest& manifest, const WalkConfig& config,
                                   const std::vector<std::uint64_t>& steps,
                                   const std::vector<ConvergenceRow>& rows) {
    std::string out;
    out += "# schema: " + std::to_string(kSchemaVersion) + "\n";
    out += "# command: " + manifest.command + "\n";
    out += "# version: " + std::string(kToolVersion) + "\n";
    out += "# timestamp: " + utc_timestamp() + "\n";
    out += "# n: " + std::to_string(config.n) + "\n";
    std::string klist;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i) klist += ',';
        klist += std::to_string(steps[i]);
    }
    out += "# steps: " + klist + "\n";
    out += "# walks: " + std::to_string(config.walks) + "\n";
    out += "# master_seed: " + std::to_string(config.master_seed) + "\n";
    out += "# distribution: " + step_kind_name(config.distribution.kind) + "\n";
    out += "# generator: " + std::string(kGeneratorId) + "\n";
    out += std::string(kCsvHeader) + "\n";
    for (const auto& row : rows) {
        out += std::to_string(row.k);
        out += ',' + double_str(row.tv_components);
        out += ',';
        if (row.tv_uniform) out += double_str(*row.tv_uniform);  // empty cell when unavailable
        out += ',' + double_str(row.mean_components);
        out += '\n';
    }
    return out;
}

// ---- files and comparisons -------------------------------------------------

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw io_error("cannot open '" + path + "' for writing");
    f << contents;
    f.flush();
    if (!f) throw io_error("write to '" + path + "' failed");
}

inline std::string json_payload(const Json& j) { return j.dump(2) + "\n"; }

// Normalize a payload for "equal apart from the timestamp" comparisons:
// JSON gets its manifest.timestamp blanked; CSV drops the '# timestamp' line.
inline std::string canonical_for_comparison(const std::string& payload) {
    if (!payload.empty() && (payload[0] == '{' || payload[0] == '[')) {
        Json j = Json::parse(payload);
        if (j.contains("manifest") && j["manifest"].contains("timestamp"))
            j["manifest"]["timestamp"] = "";
        return json_payload(j);
    }
    std::string out;
    std::size_t start = 0;
    while (start < payload.size()) {
        std::size_t end = payload.find('\n', start);
        if (end == std::string::npos) end = payload.size();
        std::string line = payload.substr(start, end - start);
        if (line.rfind("# timestamp:", 0) != 0) out += line + "\n";
        start = end + 1;
    }
    return out;
}

}  // namespace randlink
