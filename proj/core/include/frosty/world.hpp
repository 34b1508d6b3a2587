#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "frosty/block.hpp"
#include "frosty/messages.hpp"
#include "frosty/params.hpp"

namespace frosty {

// Everything correct processes record about one run, for invariant checks.
struct RunMetrics {
    struct FinalRecord { int t; ChainString value; };
    struct RoundStart { Epoch e; int s; int t; };
    struct StuckSend { int t; int node; Epoch e; };
    struct CertEvent { int t; int node; Epoch e; };
    struct NotarSeen { int t; int node; Epoch e; int h; std::string token; bool dummy; };
    struct Conclude { int t; int node; Epoch e; unsigned reduced; };

    int n = 0;
    std::set<int> byz;
    std::vector<std::vector<FinalRecord>> finals;        // per node, in time order
    std::vector<std::map<Epoch, int>> epoch_entry;       // per node: epoch -> entry time
    std::vector<std::vector<RoundStart>> round_starts;   // per node
    std::vector<StuckSend> stuck_sent;
    std::vector<CertEvent> ec_formed;                    // first EC held per (node, epoch)
    std::vector<CertEvent> sc_formed;
    std::vector<NotarSeen> notars;
    std::vector<Conclude> concludes;
    long messages_sent = 0;
    long messages_delivered = 0;

    void init(int n_, std::set<int> byz_) {
        n = n_;
        byz = std::move(byz_);
        finals.assign(n, {});
        epoch_entry.assign(n, {});
        round_starts.assign(n, {});
    }
    bool correct(int p) const { return byz.count(p) == 0; }
};

// JSON-lines event trace with a monotone sequence number; replaying a
// scenario with the same seed must reproduce it byte for byte.
class TraceSink {
public:
    void event(int t, int node, const std::string& kind, const std::string& detail);
    const std::string& text() const { return text_; }
    void clear() { text_.clear(); seq_ = 0; }

private:
    std::string text_;
    long seq_ = 0;
};

// Shared per-run context: the hash universe, the signature-authenticity
// registry, run metrics, the trace and the violation log. One World per run.
class World {
public:
    World(uint64_t seed, const ProtocolParams& params,
          BlockUniverse::HashBackend backend = BlockUniverse::HashBackend::PerfectOracle);

    ProtocolParams params;
    BlockUniverse blocks;
    RunMetrics metrics;
    TraceSink trace;

    void setByzantine(std::set<int> ids);
    bool isByz(int p) const { return byz_.count(p) != 0; }
    const std::set<int>& byzantine() const { return byz_; }

    // Correct processes register every signature they produce; verification
    // of a correct signer checks the registry. Byzantine signers pass.
    void recordSigned(int signer, const std::string& digest);
    bool verifySigned(int signer, const std::string& digest) const;

    void violation(int t, const std::string& what);
    const std::vector<std::string>& violations() const { return violations_; }

    // ---- fallback-ledger object factories (content-addressed, shared) ----

    SBlockPtr dummyBlock(Epoch e, int h);
    SBlockPtr makeSimplexBlock(Epoch e, int h, const std::string& parent_token,
                               std::string txs, StartCertPtr cert);
    static std::string chainToken(const std::vector<SBlockPtr>& chain);

private:
    std::set<int> byz_;
    std::unordered_map<int, std::unordered_set<std::string>> signed_;
    std::unordered_map<std::string, SBlockPtr> sblocks_;
    std::vector<std::string> violations_;
};

}  // namespace frosty
