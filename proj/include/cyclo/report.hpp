#pragma once

#include <string>
#include <vector>

#include "cyclo/intpoly.hpp"

#include <nlohmann/json.hpp>

namespace cyclo {

inline constexpr const char* kToolVersion = "1.0.0";

// Knobs shared by every subcommand; serialized into each report so a run can
// be reproduced from its output alone.
struct RunConfig {
    int precision_bits = 128;
    long conductor_cap = 10000;
    int prime_count = 25;
    int jobs = 1;
    int n_cap = 6;
    long search_conductor = 120;
    unsigned long seed = 1;

    nlohmann::ordered_json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
    bool operator==(const RunConfig&) const = default;
};

// One named check with its expectation; pass is derivable from the fields.
struct CheckResult {
    std::string name;
    std::string expected;
    std::string got;
    double tolerance = 0;
    bool pass = false;

    nlohmann::ordered_json to_json() const;
    static CheckResult from_json(const nlohmann::json& j);
    bool operator==(const CheckResult&) const = default;
};

// version + config + checks form the deterministic body; timing sits beside
// it so identical runs still produce byte-identical bodies.
struct Report {
    std::string version = kToolVersion;
    RunConfig config;
    std::vector<CheckResult> checks;
    double elapsed_seconds = 0;

    bool all_pass() const;
    nlohmann::ordered_json body_json() const;
    nlohmann::ordered_json to_json() const;
    std::string body_text() const;
    static Report from_json(const nlohmann::json& j);
};

// Integer coefficient list, ascending degree; values outside int64 encode as
// decimal strings so the round trip stays bit-exact.
nlohmann::ordered_json poly_to_json(const IntPoly& p);
IntPoly poly_from_json(const nlohmann::json& j);

}  // namespace cyclo
