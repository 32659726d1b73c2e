#include "cyclo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "cyclo/accept.hpp"
#include "cyclo/cycint.hpp"
#include "cyclo/fusion.hpp"
#include "cyclo/graphs.hpp"
#include "cyclo/invariants.hpp"
#include "cyclo/report.hpp"
#include "cyclo/smallsums.hpp"

#include <CLI11.hpp>

namespace cyclo {

namespace {

void parse_pair_double(const std::string& s, double& lo, double& hi, const char* flag) {
    auto colon = s.find(':');
    std::size_t used1 = 0, used2 = 0;
    if (colon != std::string::npos) {
        try {
            lo = std::stod(s.substr(0, colon), &used1);
            hi = std::stod(s.substr(colon + 1), &used2);
        } catch (const std::exception&) {
            colon = std::string::npos;
        }
    }
    if (colon == std::string::npos || used1 != colon || colon + 1 + used2 != s.size() || !(lo < hi))
        throw CLI::ValidationError(flag, "expected lo:hi with lo < hi, got '" + s + "'");
}

void parse_pair_long(const std::string& s, long& lo, long& hi, const char* flag) {
    auto colon = s.find(':');
    std::size_t used1 = 0, used2 = 0;
    if (colon != std::string::npos) {
        try {
            lo = std::stol(s.substr(0, colon), &used1);
            hi = std::stol(s.substr(colon + 1), &used2);
        } catch (const std::exception&) {
            colon = std::string::npos;
        }
    }
    if (colon == std::string::npos || used1 != colon || colon + 1 + used2 != s.size() || lo > hi)
        throw CLI::ValidationError(flag, "expected lo:hi with lo <= hi, got '" + s + "'");
}

void write_or_print(const nlohmann::ordered_json& j, const std::string& path) {
    std::string text = j.dump(2);
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report file: " + path);
    out << text << "\n";
}

long double house_target_from_bits(int bits) {
    int b = std::clamp(bits, 16, 256);
    return std::pow(0.5L, static_cast<long double>(b));
}

int run_invariants(const std::string& value_text, const RunConfig& cfg,
                   const std::string& report_path) {
    CycInt b = CycInt::parse_text(value_text);
    InvariantReport rep =
        invariant_report(b, cfg.n_cap, cfg.search_conductor, house_target_from_bits(cfg.precision_bits));
    write_or_print(rep.to_json(), report_path);
    return 0;
}

EnumerationScope scope_from_forms(const std::vector<std::string>& forms, long max_conductor) {
    EnumerationScope sc;
    sc.max_conductor = max_conductor;
    sc.pairs = sc.pairs_plus_one = sc.two_pairs = sc.two_pairs_plus_one = false;
    sc.eta_plus_pair = sc.exceptional = sc.six_term_13 = false;
    for (const std::string& f : forms) {
        if (f == "all") {
            sc.pairs = sc.pairs_plus_one = sc.two_pairs = sc.two_pairs_plus_one = true;
            sc.eta_plus_pair = sc.exceptional = true;
        } else if (f == "pairs") {
            sc.pairs = true;
        } else if (f == "pairs+1") {
            sc.pairs_plus_one = true;
        } else if (f == "two-pairs") {
            sc.two_pairs = true;
        } else if (f == "two-pairs+1") {
            sc.two_pairs_plus_one = true;
        } else if (f == "eta-pair") {
            sc.eta_plus_pair = true;
        } else if (f == "exceptional") {
            sc.exceptional = true;
        } else if (f == "six13") {
            sc.six_term_13 = true;
        } else {
            throw CLI::ValidationError("--form", "unknown form '" + f + "'");
        }
    }
    return sc;
}

int run_enumerate(const std::string& interval, const std::vector<std::string>& forms,
                  long max_conductor, const RunConfig& cfg, const std::string& csv_path,
                  const std::string& report_path) {
    double lo = 0, hi = 0;
    parse_pair_double(interval, lo, hi, "--interval");
    EnumerationScope sc = scope_from_forms(forms, max_conductor);
    auto vals = classify_interval(lo, hi, sc);

    std::ostringstream csv;
    csv << "house,min_poly,witness\n";
    char buf[64];
    for (const auto& v : vals) {
        std::snprintf(buf, sizeof buf, "%.14f", v.house);
        csv << buf << "," << v.min_poly.str() << "," << v.exact.to_text() << "\n";
    }
    if (csv_path.empty() || csv_path == "-") {
        std::cout << csv.str();
    } else {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write csv file: " + csv_path);
        out << csv.str();
    }

    if (!report_path.empty()) {
        nlohmann::ordered_json j;
        j["version"] = kToolVersion;
        j["config"] = cfg.to_json();
        j["interval"] = {lo, hi};
        j["count"] = vals.size();
        auto arr = nlohmann::ordered_json::array();
        for (const auto& v : vals) {
            nlohmann::ordered_json e;
            e["house"] = v.house;
            e["house_radius"] = v.house_radius;
            e["min_poly"] = poly_to_json(v.min_poly);
            e["form"] = v.form_tag;
            e["witness"] = v.exact.to_text();
            arr.push_back(e);
        }
        j["values"] = arr;
        write_or_print(j, report_path);
    }
    return 0;
}

int run_analyze(const std::string& graph_path, const std::string& n_range, const RunConfig& cfg,
                const std::string& report_path) {
    MarkedGraph g = MarkedGraph::load(graph_path);
    FamilyProfile profile = family_profile(g);
    long lo = g.vertices, hi = profile.n_effective - 1;
    if (!n_range.empty()) parse_pair_long(n_range, lo, hi, "--n-range");
    auto verdicts =
        family_verdicts(profile, lo, hi, cfg.conductor_cap, cfg.prime_count, cfg.jobs);

    nlohmann::ordered_json j;
    j["version"] = kToolVersion;
    j["config"] = cfg.to_json();
    j["graph"] = g.to_json();
    j["profile"] = profile.to_json();
    auto arr = nlohmann::ordered_json::array();
    for (const Verdict& v : verdicts) arr.push_back(v.to_json());
    j["verdicts"] = arr;
    write_or_print(j, report_path);
    return 0;
}

int run_fusion(const std::string& ring_name, const std::string& report_path) {
    FusionRing ring;
    if (ring_name == "ix")
        ring = ix_ring();
    else if (ring_name == "v")
        ring = v_ring();
    else
        ring = FusionRing::load(ring_name);

    std::string why;
    if (!verify_axioms(ring, &why)) {
        std::cerr << "fusion ring fails the axioms: " << why << "\n";
        return 1;
    }

    nlohmann::ordered_json j;
    j["version"] = kToolVersion;
    j["labels"] = ring.labels;
    j["unit"] = ring.unit;
    j["verified"] = true;
    auto arr = nlohmann::ordered_json::array();
    std::printf("%-8s %-18s %s\n", "object", "dimension", "minimal polynomial");
    for (long i = 0; i < ring.size(); ++i) {
        FPDim d = fp_dimension(ring, i);
        std::printf("%-8s %-18.12f %s\n", ring.labels[static_cast<std::size_t>(i)].c_str(),
                    d.value, d.minpoly.str().c_str());
        nlohmann::ordered_json e;
        e["label"] = ring.labels[static_cast<std::size_t>(i)];
        e["value"] = d.value;
        e["min_poly"] = poly_to_json(d.minpoly);
        arr.push_back(e);
    }
    j["dimensions"] = arr;
    if (!report_path.empty()) write_or_print(j, report_path);
    return 0;
}

int run_verify(const std::string& suite, const RunConfig& cfg, const std::string& report_path) {
    if (suite != "core") throw CLI::ValidationError("--suite", "only the 'core' suite exists");
    Report rep = run_acceptance(cfg);
    for (const CheckResult& c : rep.checks)
        std::printf("%s  %-32s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.got.c_str());
    std::printf("%d/%d checks passed in %.1fs\n",
                static_cast<int>(std::count_if(rep.checks.begin(), rep.checks.end(),
                                               [](const CheckResult& c) { return c.pass; })),
                static_cast<int>(rep.checks.size()), rep.elapsed_seconds);
    if (!report_path.empty()) write_or_print(rep.to_json(), report_path);
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int cli_main(std::vector<std::string> args) {
    CLI::App app{"exact cyclotomic integers: invariants, small sums of roots of unity, "
                 "graph-family screening, fusion rings"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    RunConfig cfg;
    int exit_code = 0;

    std::string value_text;
    std::string report_path;
    auto* inv = app.add_subcommand("invariants", "invariants of one cyclotomic integer");
    inv->add_option("value", value_text, "element text, e.g. '1 + 1*z^1 @ 5'")->required();
    inv->add_option("--precision", cfg.precision_bits, "bits for the certified house")
        ->envname("CYCLO_PRECISION");
    inv->add_option("--n-cap", cfg.n_cap, "largest root count tried for the sum decomposition")
        ->envname("CYCLO_N_CAP");
    inv->add_option("--search-conductor", cfg.search_conductor,
                    "root orders divide this in the decomposition search")
        ->envname("CYCLO_SEARCH_CONDUCTOR");
    inv->add_option("--report", report_path, "write the JSON report here instead of stdout")
        ->envname("CYCLO_REPORT");
    inv->callback([&] { exit_code = run_invariants(value_text, cfg, report_path); });

    std::string interval = "2:2.4940";
    std::vector<std::string> forms{"all"};
    long max_conductor = 230;
    std::string csv_path;
    auto* enu = app.add_subcommand("enumerate", "houses realized on an interval by small sums");
    enu->add_option("--interval", interval, "open interval lo:hi")->envname("CYCLO_INTERVAL");
    enu->add_option("--form", forms,
                    "forms to scan: all, pairs, pairs+1, two-pairs, two-pairs+1, eta-pair, "
                    "exceptional, six13")
        ->envname("CYCLO_FORM");
    enu->add_option("--max-conductor", max_conductor, "conductor cap for the scan")
        ->envname("CYCLO_MAX_CONDUCTOR");
    enu->add_option("--jobs", cfg.jobs, "worker threads")->envname("CYCLO_JOBS");
    enu->add_option("--csv", csv_path, "write the CSV here instead of stdout")
        ->envname("CYCLO_CSV");
    enu->add_option("--report", report_path, "also write a JSON summary here")
        ->envname("CYCLO_REPORT");
    enu->callback([&] {
        exit_code = run_enumerate(interval, forms, max_conductor, cfg, csv_path, report_path);
    });

    std::string graph_path;
    std::string n_range;
    auto* ana = app.add_subcommand("analyze-graph", "screen a pendant family for allowed norms");
    ana->add_option("--graph", graph_path, "marked graph file")->required()->envname("CYCLO_GRAPH");
    ana->add_option("--n-range", n_range, "vertex counts lo:hi (default: base size to bound - 1)")
        ->envname("CYCLO_N_RANGE");
    ana->add_option("--conductor-cap", cfg.conductor_cap, "abelian test conductor cap")
        ->envname("CYCLO_CONDUCTOR_CAP");
    ana->add_option("--primes", cfg.prime_count, "split-sample prime count")
        ->envname("CYCLO_PRIMES");
    ana->add_option("--jobs", cfg.jobs, "worker threads")->envname("CYCLO_JOBS");
    ana->add_option("--report", report_path, "write the JSON report here instead of stdout")
        ->envname("CYCLO_REPORT");
    ana->callback([&] { exit_code = run_analyze(graph_path, n_range, cfg, report_path); });

    std::string ring_name = "ix";
    auto* fus = app.add_subcommand("fusion", "dimension table of a fusion ring");
    fus->add_option("--ring", ring_name, "ix, v, or a ring JSON file")->envname("CYCLO_RING");
    fus->add_option("--report", report_path, "also write the table as JSON here")
        ->envname("CYCLO_REPORT");
    fus->callback([&] { exit_code = run_fusion(ring_name, report_path); });

    std::string suite = "core";
    auto* ver = app.add_subcommand("verify-paper", "run the full verification battery");
    ver->add_option("--suite", suite, "battery to run (core)")->envname("CYCLO_SUITE");
    ver->add_option("--jobs", cfg.jobs, "worker threads")->envname("CYCLO_JOBS");
    ver->add_option("--conductor-cap", cfg.conductor_cap, "abelian test conductor cap")
        ->envname("CYCLO_CONDUCTOR_CAP");
    ver->add_option("--primes", cfg.prime_count, "split-sample prime count")
        ->envname("CYCLO_PRIMES");
    ver->add_option("--seed", cfg.seed, "seed for the randomized identity checks")
        ->envname("CYCLO_SEED");
    ver->add_option("--report", report_path, "write the JSON manifest here")
        ->envname("CYCLO_REPORT");
    ver->callback([&] { exit_code = run_verify(suite, cfg, report_path); });

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

}  // namespace cyclo
