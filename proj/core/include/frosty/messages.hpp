#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "frosty/block.hpp"
#include "frosty/chainstring.hpp"
#include "frosty/params.hpp"

namespace frosty {

template <typename B>
struct Signed {
    int signer = -1;
    B body;
};

// ---- signable bodies -------------------------------------------------------

struct StuckBody {
    Epoch e = 0;          // epoch the sender is stuck in (even)
    ChainString final_;   // sender's finalized string
};

struct StartVoteBody {
    Epoch e = 0;          // odd epoch being started
    ChainString pref;
};

struct StartCert {
    Epoch e = 0;
    std::vector<Signed<StartVoteBody>> votes;
    ChainString pref;     // Pref(C), fixed at formation
    std::string token;    // canonical identity (sorted signer list + e)
};
using StartCertPtr = std::shared_ptr<const StartCert>;

// A block of the quorum-based fallback ledger. Dummy blocks carry no payload,
// no parent pointer and no certificate; they exist only to burn a height.
struct SimplexBlock {
    Epoch e = 0;
    int h = 0;
    bool dummy = false;
    std::string parent;   // token of the notarized chain b1..b_{h-1}; "" for dummy
    std::string txs;      // "" for dummy
    StartCertPtr cert;    // start certificate embedded in the block
    std::string token;    // content identity
    ChainString hash;     // L-bit hash; meaningless for dummies
};
using SBlockPtr = std::shared_ptr<const SimplexBlock>;

struct VoteBody {
    Epoch e = 0;
    int h = 0;
    SBlockPtr b;
};

struct FinalizeBody {
    Epoch e = 0;
    int h = 0;
};

// ---- certificates ----------------------------------------------------------

struct EpochCert {
    Epoch e = 0;          // odd epoch the certificate justifies entering
    ChainString sigma;    // common finalized string of the stuck messages
    std::vector<Signed<StuckBody>> votes;
};
using EpochCertPtr = std::shared_ptr<const EpochCert>;

struct Notarization {
    Epoch e = 0;
    int h = 0;
    SBlockPtr b;
    std::vector<Signed<VoteBody>> votes;
};
using NotarPtr = std::shared_ptr<const Notarization>;

struct Finalization {
    Epoch e = 0;
    int h = 0;
    std::vector<Signed<FinalizeBody>> votes;
};
using FinalPtr = std::shared_ptr<const Finalization>;

// ---- wire payloads ---------------------------------------------------------

struct SampleRequest {
    int s = 0;
    Epoch e = 0;
};

struct SampleResponse {
    int s = 0;
    Epoch e = 0;
    BlockPtr tip;         // chain(pref); ancestry implied by parent links
    ChainString lock;     // longest aged locked prefix, cropped to whole blocks
    ChainString fin;      // finalized string, cropped to whole blocks
};

struct StuckMsg { Signed<StuckBody> v; };
struct StartVoteMsg { Signed<StartVoteBody> v; };
struct EpochCertMsg { EpochCertPtr ec; };

struct ProposalMsg {
    int leader = -1;
    Epoch e = 0;
    int h = 0;
    std::vector<SBlockPtr> chain;   // b1..b_{h-1}
    std::vector<NotarPtr> notars;   // notarizations for chain
    SBlockPtr b;                    // proposed b_h
};

struct VoteMsg { Signed<VoteBody> v; };
struct FinalizeMsg { Signed<FinalizeBody> v; };
struct NotarGossip { NotarPtr n; };
struct FinalGossip { FinalPtr f; };

using Payload = std::variant<SampleRequest, SampleResponse, StuckMsg, StartVoteMsg,
                             EpochCertMsg, ProposalMsg, VoteMsg, FinalizeMsg,
                             NotarGossip, FinalGossip>;
using PayloadPtr = std::shared_ptr<const Payload>;

struct Envelope {
    int from = -1;
    int to = -1;          // -1 means broadcast to everyone (including sender)
    PayloadPtr payload;
};

inline PayloadPtr wrap(Payload p) { return std::make_shared<const Payload>(std::move(p)); }

// Epoch a payload belongs to, used for buffer-or-drop routing.
Epoch epochOf(const Payload& p);

// Canonical encodings used by the signature registry and by traces.
std::string digest(const StuckBody& b);
std::string digest(const StartVoteBody& b);
std::string digest(const VoteBody& b);
std::string digest(const FinalizeBody& b);
std::string digestProposal(const ProposalMsg& m);

}  // namespace frosty
