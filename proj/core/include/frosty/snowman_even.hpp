#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "frosty/block.hpp"
#include "frosty/certs.hpp"
#include "frosty/messages.hpp"
#include "frosty/params.hpp"
#include "frosty/rng.hpp"
#include "frosty/world.hpp"

namespace frosty {

// Even-epoch sampling-consensus machine for one process. One tick() call per
// timeslot performs the full sequential pass: begin round, ingest responses,
// locks, preference walk, round advance, finality, stuck check, request
// answering. Message intake (onX) only buffers; transitions happen in tick().
class SnowmanEven {
public:
    SnowmanEven(const ProtocolParams& p, World* w, BlockStore* store, int self, Rng* rng);

    // Resets per-epoch state; pref := final. Repeated init for the same epoch
    // is a no-op with a trace diagnostic.
    void initEpoch(Epoch e, int t);
    bool ready(Epoch e) const { return ready_ && e == e_; }
    Epoch epoch() const { return e_; }

    void setFinal(const ChainString& f) { final_ = f; }
    const ChainString& finalValue() const { return final_; }
    const ChainString& pref() const { return pref_; }
    int round() const { return s_; }
    int lastFinalizedRound() const { return lastfinalized_; }

    void onSampleResponse(int t, int from, const SampleResponse& r);
    void onSampleRequest(int t, int from, const SampleRequest& r);

    void tick(int t, std::vector<Envelope>& out);

    bool mint_enabled = true;

private:
    struct Round {
        int start = -1;                      // begin_round timeslot, -1 = not begun
        std::vector<int> sample;             // k sampled ids
        std::vector<ChainString> rpref, rlock, rfin;
        std::vector<uint8_t> defined;
        std::vector<uint8_t> supp_final;   // rpref extends final (cached)
        long final_version = -1;           // supp_final freshness stamp
        int defined_count = 0;
        bool dirty = false;                  // new responses since last summary
        bool closed = false;                 // past the 2-delta ingest window
        std::vector<std::pair<int, SampleResponse>> pending;
        // per-round summaries (longest prefix with threshold support)
        MajorityPrefix tau_rpref;            // alpha2 over rpref
        MajorityPrefix tau_rlock;            // alpha2 over rlock
        MajorityPrefix psi_rfin;             // alpha3 over rfin
        size_t tau_seen_len = 0;             // lock candidates issued up to here
        std::vector<ChainString> supp_marks; // maximal sigma with suppfin = 1
        std::set<ChainString> dec;
    };

    struct LockEnt {
        bool locked = false;
        int lockbound = 0;
        int locktime = -1;
    };

    void beginRound(int t, std::vector<Envelope>& out);
    void ingestWindow(int t);
    void ingestOne(int t, Round& r, int from, const SampleResponse& resp);
    void freezeRound(int s_idx);
    void refreshSummaries(Round& r);
    void addSuppMark(Round& r, const ChainString& sigma);
    void updateLocks(int t);
    void tryLock(const ChainString& sigma, int s_prime, int t, bool check_continuity);
    bool continuityHolds(const ChainString& sigma, int s_prime) const;
    void refreshSuppFinal(Round& r);
    void rebuildPref(int t);
    void advanceRound(int t);
    void finalizeCheck(int t);
    void setFinalInternal(int t, const ChainString& sigma, int s_prime);
    void stuckCheck(int t, std::vector<Envelope>& out);
    void answerRequests(int t, std::vector<Envelope>& out);
    void maybeMint(int t);
    Round& roundAt(int s_idx) { return rounds_[s_idx]; }

    ProtocolParams p_;
    World* world_;
    BlockStore* store_;
    int self_;
    Rng* rng_;

    Epoch e_ = 0;
    bool ready_ = false;
    int s_ = 0;
    bool newround_ = true;
    int low_water_ = 0;  // rounds below this are closed
    ChainString pref_;
    ChainString final_;
    int lastfinalized_ = 0;
    std::vector<Round> rounds_;
    std::vector<ChainString> pref_hist_;

    std::map<ChainString, char> val_;
    std::map<ChainString, LockEnt> locks_;
    size_t locked_frontier_ = 0;  // pref.prefix(l) locked for all l <= this
    // lock candidates whose sigma was off-pref when support appeared
    std::map<ChainString, int> stored_cands_;

    // rule (i): per window start, running meet of supp_marks over frozen
    // rounds, plus how far the fold has progressed
    struct WindowFold {
        std::vector<ChainString> meet;
        int folded_through = -1;  // last frozen round folded in
        bool seeded = false;
    };
    std::map<int, WindowFold> windows_;
    // rule (ii): cached pair candidates over frozen (s', s'+1)
    std::map<int, ChainString> frozen_pairs_;

    Resolution res_;                   // resolution of pref
    bool walk_hit_leaf_ = false;       // E was empty at the walk's end
    bool all_dec_ = false;
    long final_version_ = 0;
    int last_frozen_ = -1;
    std::string last_mint_parent_;
    std::set<std::pair<int, int>> answered_;  // (requester, s') this epoch
    std::vector<std::pair<int, int>> req_queue_;  // (from, s') to answer
    int last_stuck_round_ = -1;
};

}  // namespace frosty
