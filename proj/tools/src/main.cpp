#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frosty/binomial.hpp"
#include "frosty/scenario.hpp"

namespace fs = std::filesystem;
using namespace frosty;

namespace {

// "7" -> {7}, "1..50" -> {1..50}
std::vector<uint64_t> parseSeeds(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) return {std::stoull(text)};
    uint64_t lo = std::stoull(text.substr(0, dots));
    uint64_t hi = std::stoull(text.substr(dots + 2));
    std::vector<uint64_t> out;
    for (uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    return out;
}

void writeFile(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
}

std::string readFile(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

std::string verdictJson(const Scenario& sc, const RunResult& r) {
    std::ostringstream os;
    os << "{\n"
       << "  \"name\": \"" << sc.name << "\",\n"
       << "  \"seed\": " << sc.seed << ",\n"
       << "  \"consistent\": " << (r.consistent ? "true" : "false") << ",\n"
       << "  \"violations\": " << r.violations.size() << ",\n"
       << "  \"final_blocks\": " << r.min_final_blocks << ",\n"
       << "  \"final_bits\": " << r.final_floor.size() << ",\n"
       << "  \"max_epoch\": " << r.max_epoch << ",\n"
       << "  \"messages_sent\": " << r.metrics.messages_sent << ",\n"
       << "  \"messages_delivered\": " << r.metrics.messages_delivered << "\n"
       << "}\n";
    return os.str();
}

int cmdRun(const std::string& config, const std::optional<uint64_t>& seed,
           const std::string& seeds, const std::optional<int>& horizon,
           const std::string& out_dir) {
    Scenario base = config.empty() ? Scenario{} : Scenario::fromFile(config);
    if (horizon) base.horizon = *horizon;

    std::vector<uint64_t> seed_list;
    if (!seeds.empty()) seed_list = parseSeeds(seeds);
    else seed_list = {seed.value_or(base.seed)};

    if (!out_dir.empty()) fs::create_directories(out_dir);

    bool all_ok = true;
    std::cout << "name        seed  consistent  final_blocks  max_epoch  violations\n";
    for (uint64_t s : seed_list) {
        Scenario sc = base;
        sc.seed = s;
        RunResult r = runScenario(sc, !out_dir.empty());
        bool ok = r.consistent && r.violations.empty();
        all_ok = all_ok && ok;
        std::cout << sc.name << "  " << s << "  " << (ok ? "OK" : "VIOLATED") << "  "
                  << r.min_final_blocks << "  " << r.max_epoch << "  " << r.violations.size()
                  << "\n";
        for (const auto& v : r.violations) std::cout << "    violation: " << v << "\n";
        if (!out_dir.empty()) {
            std::string stem = sc.name + "_seed" + std::to_string(s);
            writeFile(fs::path(out_dir) / (stem + ".trace"), r.trace);
            writeFile(fs::path(out_dir) / (stem + ".verdict.json"), verdictJson(sc, r));
            writeFile(fs::path(out_dir) / (stem + ".scenario.json"), sc.toJson());
        }
    }
    return all_ok ? 0 : 1;
}

int cmdParams(unsigned k, unsigned a3, const std::string& f_text, unsigned gamma, bool as_json) {
    ParamSafetyReport rep = paramSafetyReport(k, a3, parseRational(f_text), gamma);
    std::cout << (as_json ? rep.json() : rep.text());
    bool ok = rep.one_round_ok && rep.two_round_ok && rep.union_bound_ok && rep.pair_success_ok &&
              rep.window_fail_ok;
    return ok ? 0 : 1;
}

int cmdReplay(const std::string& config, const std::string& trace_path) {
    Scenario sc = Scenario::fromFile(config);
    RunResult r = runScenario(sc, true);
    std::string expected = readFile(trace_path);
    if (r.trace == expected) {
        std::cout << "replay OK: trace identical (" << r.trace.size() << " bytes)\n";
        return 0;
    }
    size_t i = 0;
    while (i < r.trace.size() && i < expected.size() && r.trace[i] == expected[i]) ++i;
    std::cout << "replay MISMATCH at byte " << i << " (got " << r.trace.size() << " bytes, expected "
              << expected.size() << ")\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frosty: epoch-alternating consensus simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "execute a scenario (single seed or a batch)");
    std::string config, seeds, out_dir;
    std::optional<uint64_t> seed;
    std::optional<int> horizon;
    run->add_option("--config", config, "scenario JSON file (defaults used if omitted)");
    run->add_option("--seed", seed, "single seed override");
    run->add_option("--seeds", seeds, "seed range, e.g. 1..50");
    run->add_option("--horizon", horizon, "timeslot horizon override");
    run->add_option("--out", out_dir, "directory for trace/verdict artifacts");

    auto* params = app.add_subcommand("params", "exact sampling-threshold safety report");
    unsigned k = 80, a3 = 48, gamma = 300;
    std::string f_text = "0.2";
    bool as_json = false;
    params->add_option("--k", k, "sample size");
    params->add_option("--a3", a3, "finalization vote threshold");
    params->add_option("--f", f_text, "adversarial fraction (decimal or fraction)");
    params->add_option("--gamma", gamma, "stuck threshold in rounds");
    params->add_flag("--json", as_json, "machine-readable output");

    auto* replay = app.add_subcommand("replay", "re-execute a scenario and diff its trace");
    std::string r_config, r_trace;
    replay->add_option("--config", r_config, "scenario JSON file")->required();
    replay->add_option("--trace", r_trace, "previously written trace file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmdRun(config, seed, seeds, horizon, out_dir);
        if (params->parsed()) return cmdParams(k, a3, f_text, gamma, as_json);
        if (replay->parsed()) return cmdReplay(r_config, r_trace);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
