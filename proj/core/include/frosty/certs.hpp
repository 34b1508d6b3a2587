#pragma once

#include <map>
#include <optional>
#include <string>

#include "frosty/messages.hpp"
#include "frosty/params.hpp"
#include "frosty/world.hpp"

namespace frosty {

// Longest chain string extended by strictly more than half of the votes.
// Unique because two incomparable strings cannot each hold a strict majority.
ChainString prefOfSc(const std::vector<Signed<StartVoteBody>>& votes);

// Collects signed messages, deduplicates by signer within each key, and
// produces each certificate exactly once, at the first threshold crossing.
// Thresholds: epoch certs need >= ceil(n/5) stuck messages on one (e, sigma),
// start certs >= ceil(4n/5) starting votes for e, notarizations and
// finalizations > 4n/5 votes on one (e, h, block) / (e, h).
class CertAccumulator {
public:
    CertAccumulator(const ProtocolParams& p, World* w) : p_(p), world_(w) {}

    std::optional<EpochCertPtr> addStuck(const Signed<StuckBody>& v);
    std::optional<StartCertPtr> addStartVote(const Signed<StartVoteBody>& v);
    std::optional<NotarPtr> addVote(const Signed<VoteBody>& v);
    std::optional<FinalPtr> addFinalize(const Signed<FinalizeBody>& v);

    void clear();

private:
    template <typename B>
    struct Bucket {
        std::map<int, Signed<B>> by_signer;
        bool done = false;
    };

    ProtocolParams p_;
    World* world_;
    std::map<std::pair<Epoch, ChainString>, Bucket<StuckBody>> stuck_;
    std::map<Epoch, Bucket<StartVoteBody>> start_;
    std::map<std::tuple<Epoch, int, std::string>, Bucket<VoteBody>> votes_;
    std::map<std::pair<Epoch, int>, Bucket<FinalizeBody>> fins_;
};

// Structural + signature validation for received certificates. Correct
// signers must have registered the exact signed body; distinct-signer counts
// must reach the threshold; all bodies must match the certified statement.
bool validateEpochCert(const EpochCert& ec, const ProtocolParams& p, const World& w);
bool validateStartCert(const StartCert& sc, const ProtocolParams& p, const World& w);
bool validateNotarization(const Notarization& nt, const ProtocolParams& p, const World& w);
bool validateFinalization(const Finalization& fn, const ProtocolParams& p, const World& w);

}  // namespace frosty
