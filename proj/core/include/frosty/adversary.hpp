#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "frosty/node.hpp"
#include "frosty/params.hpp"
#include "frosty/world.hpp"

namespace frosty {

enum class ByzKind {
    Crash,          // never sends anything
    SampleLiar,     // answers sample requests with genesis, silent otherwise
    EquivLeader,    // runs the protocol but lies on samples and, as leader,
                    // sends two conflicting proposals to disjoint halves
    StuckSpammer,   // floods forged stuck messages every timeslot
    SplitLiar,      // answers sample requests with one of two conflicting
                    // private branches, chosen by requester id parity
};

// A Byzantine process. Some kinds wrap a correct Node so they can follow the
// protocol when deviation is not profitable.
class ByzNode : public INode {
public:
    ByzNode(ByzKind kind, const ProtocolParams& p, World* w, int id, uint64_t seed);

    int id() const override { return id_; }
    void step(int t, std::vector<Envelope>&& delivered, std::vector<Envelope>& out) override;

private:
    void lieOnSamples(int t, const std::vector<Envelope>& delivered,
                      std::vector<Envelope>& out);
    void rewriteOutput(int t, std::vector<Envelope>& out);

    ByzKind kind_;
    ProtocolParams p_;
    World* world_;
    int id_;
    std::unique_ptr<Node> inner_;  // EquivLeader only
    long spam_counter_ = 0;
};

std::optional<ByzKind> byzKindFromName(const std::string& name);

}  // namespace frosty
