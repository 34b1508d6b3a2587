#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "frosty/certs.hpp"
#include "frosty/messages.hpp"
#include "frosty/params.hpp"
#include "frosty/world.hpp"

namespace frosty {

inline int lead(int h, int n) { return ((h % n) + n) % n; }

// A notarized chain b1..bh with its notarizations, assembled locally.
struct NotarizedChain {
    std::vector<SBlockPtr> blocks;
    std::vector<NotarPtr> notars;
    unsigned reduced = 0;  // count of non-dummy blocks
};

std::vector<SBlockPtr> reduceChain(const std::vector<SBlockPtr>& chain);
// Pref(C) * H(b_j1) * ... * H(b_jmu) over the first mu non-dummy blocks.
ChainString finOf(const std::vector<SBlockPtr>& chain, unsigned mu);

// Odd-epoch quorum machine. Views advance on notarized heights; leaders
// propose, others vote once per view for a first valid proposal, timers vote
// dummy after 3*delta. Concluding yields the value for the next even epoch.
class SimplexOdd {
public:
    SimplexOdd(const ProtocolParams& p, World* w, int self);

    void initEpoch(Epoch e, const ChainString& pref, int t);
    Epoch epoch() const { return e_; }
    bool ready() const { return ready_; }

    // Intake buffers/accumulates only; emission happens in tick().
    void onStartVote(int t, const Signed<StartVoteBody>& v);
    void onProposal(int t, const ProposalMsg& m);
    void onVote(int t, const VoteMsg& m);
    void onFinalize(int t, const FinalizeMsg& m);
    void onNotarGossip(int t, const NotarPtr& n);
    void onFinalGossip(int t, const FinalPtr& f);

    void tick(int t, std::vector<Envelope>& out);

    // Set when a finalized chain of reduced height >= mu is held.
    struct Concluded {
        ChainString fin;
        std::vector<SBlockPtr> reduced;  // the first mu non-dummy blocks
        StartCertPtr cert;
    };
    const std::optional<Concluded>& concluded() const { return concluded_; }

private:
    void adoptNotar(int t, const NotarPtr& n, std::vector<Envelope>& out);
    void tryAssemble(int t, std::vector<Envelope>& out);
    bool addChain(NotarizedChain&& nc);
    void maybePropose(int t, std::vector<Envelope>& out);
    void maybeVote(int t, std::vector<Envelope>& out);
    void advanceViews(int t, std::vector<Envelope>& out);
    void checkConclude(int t);
    bool validChain(const std::vector<SBlockPtr>& chain) const;

    ProtocolParams p_;
    World* world_;
    int self_;

    Epoch e_ = -1;
    bool entered_ = false;
    bool ready_ = false;
    int h_ = 0;
    ChainString pref_;  // carried from the even epoch, for the start vote
    StartCertPtr sc_;
    CertAccumulator acc_;

    struct Timer {
        int fire_at = -1;
        bool fired = false;
        bool cancelled = false;
    };
    std::map<int, Timer> timers_;
    std::set<int> proposed_;                    // heights this node proposed at
    std::set<int> voted_;                       // heights this node voted at
    std::map<int, ProposalMsg> first_proposal_; // first proposal per height
    std::set<int> leader_seen_;                 // heights with a first proposal taken

    std::map<std::string, NotarPtr> notars_;         // by (h|token)
    std::map<std::string, NotarizedChain> chains_;   // by chain token
    std::map<int, std::vector<std::string>> chains_by_h_;
    std::vector<NotarPtr> unassembled_;
    std::map<int, FinalPtr> finalizations_;
    std::set<std::string> gossiped_;
    std::vector<NotarPtr> incoming_;    // formed/received, pending adoption
    std::vector<FinalPtr> fin_incoming_;

    std::optional<Concluded> concluded_;
};

}  // namespace frosty
