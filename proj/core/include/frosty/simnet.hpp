#pragma once

#include <map>
#include <memory>
#include <vector>

#include "frosty/node.hpp"
#include "frosty/params.hpp"
#include "frosty/rng.hpp"
#include "frosty/world.hpp"

namespace frosty {

// Discrete-time message scheduler. Every message sent at timeslot t is
// delivered at some t' with t < t' <= max(t, GST) + delta; a process's own
// broadcast copy arrives at exactly t + 1. Within a timeslot all due
// messages are handed over first, then nodes step in ascending id order and
// their output is scheduled. All randomness comes from one seeded generator,
// drawn in a fixed order, so runs are reproducible.
class Net {
public:
    Net(const ProtocolParams& p, World* w, int gst, uint64_t seed);

    // Nodes must be added in ascending id order, one per process.
    void addNode(std::unique_ptr<INode> node);
    // Convenience: constructs a correct Node and tracks it for audits.
    Node* addHonest(int id, uint64_t seed);

    // Before GST, hold every message for the longest legal delay.
    void setMaxDelayPreGst(bool v) { max_delay_pre_gst_ = v; }

    int now() const { return now_; }
    void tick();
    void run(int horizon);

    INode& node(int id) { return *nodes_.at(id); }
    const std::vector<Node*>& honest() const { return honest_; }

    // Finalized strings of correct processes must be pairwise comparable
    // under the prefix order; failures are logged as violations.
    bool checkConsistency();
    // Shortest finalized string held by any correct process.
    ChainString finalFloor() const;

private:
    void schedule(int t, const Envelope& env);

    ProtocolParams p_;
    World* world_;
    int gst_;
    Rng rng_;
    bool max_delay_pre_gst_ = false;
    int now_ = 0;
    std::vector<std::unique_ptr<INode>> nodes_;
    std::vector<Node*> honest_;
    std::map<int, std::vector<Envelope>> inbox_;  // delivery time -> envelopes
};

}  // namespace frosty
