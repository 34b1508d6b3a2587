#pragma once

#include <memory>
#include <set>
#include <vector>

#include "frosty/certs.hpp"
#include "frosty/messages.hpp"
#include "frosty/params.hpp"
#include "frosty/rng.hpp"
#include "frosty/simplex_odd.hpp"
#include "frosty/snowman_even.hpp"
#include "frosty/world.hpp"

namespace frosty {

// One simulated process: consumes a timeslot tick plus the messages due at
// it, emits outgoing envelopes. Implementations may be honest or Byzantine.
class INode {
public:
    virtual ~INode() = default;
    virtual int id() const = 0;
    virtual void step(int t, std::vector<Envelope>&& delivered, std::vector<Envelope>& out) = 0;
};

// Correct process: owns the block store, routes messages by epoch (buffer
// future, drop past), runs the even or odd machine by epoch parity, and
// applies epoch transitions (EC acceptance, odd-epoch conclusion).
class Node : public INode {
public:
    Node(const ProtocolParams& p, World* w, int id, uint64_t seed);

    int id() const override { return id_; }
    void step(int t, std::vector<Envelope>&& delivered, std::vector<Envelope>& out) override;

    Epoch epoch() const { return epoch_; }
    const ChainString& finalValue() const { return even_.finalValue(); }
    SnowmanEven& even() { return even_; }
    SimplexOdd& odd() { return odd_; }
    BlockStore& store() { return store_; }

private:
    void dispatch(int t, const Envelope& env);
    void applyPendingEc(int t, std::vector<Envelope>& out);
    void concludeOdd(int t);
    void replayFuture(int t);
    void enterEpoch(Epoch e, int t);

    ProtocolParams p_;
    World* world_;
    int id_;
    Rng rng_;
    BlockStore store_;
    Epoch epoch_ = 0;
    SnowmanEven even_;
    SimplexOdd odd_;
    CertAccumulator stuck_acc_;
    std::vector<Envelope> future_;
    std::vector<EpochCertPtr> pending_ec_;
    std::set<Epoch> ec_forwarded_;
    bool saw_ec_ = false;
};

}  // namespace frosty
