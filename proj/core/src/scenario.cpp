#include "frosty/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "frosty/simnet.hpp"

namespace frosty {

using nlohmann::json;

std::string Scenario::toJson() const {
    json j;
    j["name"] = name;
    j["n"] = params.n;
    j["f"] = params.f;
    j["k"] = params.k;
    j["alpha1"] = params.alpha1;
    j["alpha2"] = params.alpha2;
    j["alpha3"] = params.alpha3;
    j["beta"] = params.beta;
    j["gamma"] = params.gamma;
    j["mu"] = params.mu;
    j["delta"] = params.delta;
    j["hash_bits"] = params.hash_bits;
    j["gst"] = gst;
    j["horizon"] = horizon;
    j["seed"] = seed;
    j["byz_kind"] = byz_kind;
    j["byz_ids"] = byz_ids;
    j["max_delay_pre_gst"] = max_delay_pre_gst;
    return j.dump(2);
}

Scenario Scenario::fromJson(const std::string& text) {
    json j = json::parse(text);
    Scenario sc;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).template get<std::decay_t<decltype(field)>>();
    };
    get("name", sc.name);
    get("n", sc.params.n);
    get("f", sc.params.f);
    get("k", sc.params.k);
    get("alpha1", sc.params.alpha1);
    get("alpha2", sc.params.alpha2);
    get("alpha3", sc.params.alpha3);
    get("beta", sc.params.beta);
    get("gamma", sc.params.gamma);
    get("mu", sc.params.mu);
    get("delta", sc.params.delta);
    get("hash_bits", sc.params.hash_bits);
    get("gst", sc.gst);
    get("horizon", sc.horizon);
    get("seed", sc.seed);
    get("byz_kind", sc.byz_kind);
    get("byz_ids", sc.byz_ids);
    get("max_delay_pre_gst", sc.max_delay_pre_gst);
    return sc;
}

Scenario Scenario::fromFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return fromJson(buf.str());
}

RunResult runScenario(const Scenario& sc, bool keep_trace) {
    World world(sc.seed, sc.params);
    std::set<int> byz(sc.byz_ids.begin(), sc.byz_ids.end());
    world.setByzantine(byz);
    world.metrics.init(sc.params.n, byz);

    Rng seeder(sc.seed ^ 0x5eedULL);
    Net net(sc.params, &world, sc.gst, seeder.next());
    net.setMaxDelayPreGst(sc.max_delay_pre_gst);

    auto kind = byzKindFromName(sc.byz_kind);
    for (int id = 0; id < sc.params.n; ++id) {
        uint64_t node_seed = seeder.next();
        if (byz.count(id) && kind) {
            net.addNode(std::make_unique<ByzNode>(*kind, sc.params, &world, id, node_seed));
        } else {
            net.addHonest(id, node_seed);
        }
    }

    net.run(sc.horizon);

    RunResult res;
    res.consistent = net.checkConsistency();
    res.final_floor = net.finalFloor();
    size_t blocks = res.final_floor.size() / sc.params.hash_bits;
    res.min_final_blocks = blocks > 0 ? blocks - 1 : 0;
    for (Node* n : net.honest()) res.max_epoch = std::max(res.max_epoch, n->epoch());
    res.violations = world.violations();
    res.metrics = world.metrics;
    if (keep_trace) res.trace = world.trace.text();
    return res;
}

}  // namespace frosty
