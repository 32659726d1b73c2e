#include "cyclo/report.hpp"

#include <limits>
#include <stdexcept>

namespace cyclo {

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["precision_bits"] = precision_bits;
    j["conductor_cap"] = conductor_cap;
    j["prime_count"] = prime_count;
    j["jobs"] = jobs;
    j["n_cap"] = n_cap;
    j["search_conductor"] = search_conductor;
    j["seed"] = seed;
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    c.precision_bits = j.at("precision_bits").get<int>();
    c.conductor_cap = j.at("conductor_cap").get<long>();
    c.prime_count = j.at("prime_count").get<int>();
    c.jobs = j.at("jobs").get<int>();
    c.n_cap = j.at("n_cap").get<int>();
    c.search_conductor = j.at("search_conductor").get<long>();
    c.seed = j.at("seed").get<unsigned long>();
    if (c.precision_bits <= 0 || c.conductor_cap <= 0 || c.prime_count <= 0 || c.jobs <= 0)
        throw std::runtime_error("run config: caps must be positive");
    return c;
}

nlohmann::ordered_json CheckResult::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["expected"] = expected;
    j["got"] = got;
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    return j;
}

CheckResult CheckResult::from_json(const nlohmann::json& j) {
    CheckResult c;
    c.name = j.at("name").get<std::string>();
    c.expected = j.at("expected").get<std::string>();
    c.got = j.at("got").get<std::string>();
    c.tolerance = j.at("tolerance").get<double>();
    c.pass = j.at("pass").get<bool>();
    return c;
}

bool Report::all_pass() const {
    for (const CheckResult& c : checks)
        if (!c.pass) return false;
    return true;
}

nlohmann::ordered_json Report::body_json() const {
    nlohmann::ordered_json j;
    j["version"] = version;
    j["config"] = config.to_json();
    auto a = nlohmann::ordered_json::array();
    for (const CheckResult& c : checks) a.push_back(c.to_json());
    j["checks"] = a;
    j["all_pass"] = all_pass();
    return j;
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["body"] = body_json();
    j["elapsed_seconds"] = elapsed_seconds;
    return j;
}

std::string Report::body_text() const { return body_json().dump(2); }

Report Report::from_json(const nlohmann::json& j) {
    const nlohmann::json& b = j.contains("body") ? j.at("body") : j;
    Report r;
    r.version = b.at("version").get<std::string>();
    r.config = RunConfig::from_json(b.at("config"));
    for (const auto& c : b.at("checks")) r.checks.push_back(CheckResult::from_json(c));
    r.elapsed_seconds = j.value("elapsed_seconds", 0.0);
    return r;
}

nlohmann::ordered_json poly_to_json(const IntPoly& p) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    auto a = nlohmann::ordered_json::array();
    for (const Int& v : p.c) {
        if (v >= lo && v <= hi)
            a.push_back(static_cast<long long>(v));
        else
            a.push_back(v.str());
    }
    return a;
}

IntPoly poly_from_json(const nlohmann::json& j) {
    std::vector<Int> c;
    for (const auto& v : j) {
        if (v.is_string())
            c.emplace_back(v.get<std::string>());
        else
            c.emplace_back(v.get<long long>());
    }
    IntPoly p;
    p.c = std::move(c);
    p.trim();
    return p;
}

}  // namespace cyclo
