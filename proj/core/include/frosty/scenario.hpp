#pragma once

#include <set>
#include <string>
#include <vector>

#include "frosty/adversary.hpp"
#include "frosty/params.hpp"
#include "frosty/world.hpp"

namespace frosty {

// One simulation run: protocol parameters, network timing, the adversary
// placement and the horizon. Serializable to and from JSON so runs can be
// described in config files and replayed exactly.
struct Scenario {
    std::string name = "unnamed";
    ProtocolParams params;
    int gst = 0;
    int horizon = 1000;
    uint64_t seed = 1;
    std::string byz_kind = "none";
    std::vector<int> byz_ids;
    bool max_delay_pre_gst = false;

    std::string toJson() const;
    static Scenario fromJson(const std::string& text);
    static Scenario fromFile(const std::string& path);
};

struct RunResult {
    ChainString final_floor;      // shortest finalized string among correct
    size_t min_final_blocks = 0;  // whole finalized blocks past genesis, min over correct
    Epoch max_epoch = 0;          // highest epoch entered by any correct node
    bool consistent = true;
    std::vector<std::string> violations;
    RunMetrics metrics;
    std::string trace;
};

RunResult runScenario(const Scenario& sc, bool keep_trace = false);

}  // namespace frosty
