#include "frosty/certs.hpp"

#include <algorithm>

namespace frosty {

ChainString prefOfSc(const std::vector<Signed<StartVoteBody>>& votes) {
    std::vector<const ChainString*> vals;
    vals.reserve(votes.size());
    for (const auto& v : votes) vals.push_back(&v.body.pref);
    auto mp = majorityPrefix(vals, votes.size() / 2 + 1);
    return mp.defined ? mp.value : ChainString();
}

std::optional<EpochCertPtr> CertAccumulator::addStuck(const Signed<StuckBody>& v) {
    auto& b = stuck_[{v.body.e, v.body.final_}];
    if (b.done) return std::nullopt;
    b.by_signer.emplace(v.signer, v);
    if ((int)b.by_signer.size() < p_.ecThreshold()) return std::nullopt;
    b.done = true;
    auto ec = std::make_shared<EpochCert>();
    ec->e = v.body.e + 1;
    ec->sigma = v.body.final_;
    for (auto& [s, m] : b.by_signer) ec->votes.push_back(m);
    return EpochCertPtr(ec);
}

std::optional<StartCertPtr> CertAccumulator::addStartVote(const Signed<StartVoteBody>& v) {
    auto& b = start_[v.body.e];
    if (b.done) return std::nullopt;
    b.by_signer.emplace(v.signer, v);
    if ((int)b.by_signer.size() < p_.scThreshold()) return std::nullopt;
    b.done = true;
    auto sc = std::make_shared<StartCert>();
    sc->e = v.body.e;
    std::string tok = "sc|" + std::to_string(v.body.e);
    for (auto& [s, m] : b.by_signer) {
        sc->votes.push_back(m);
        tok += "," + std::to_string(s);
    }
    sc->pref = prefOfSc(sc->votes);
    sc->token = tok;
    return StartCertPtr(sc);
}

std::optional<NotarPtr> CertAccumulator::addVote(const Signed<VoteBody>& v) {
    if (!v.body.b) return std::nullopt;
    auto& b = votes_[{v.body.e, v.body.h, v.body.b->token}];
    if (b.done) return std::nullopt;
    b.by_signer.emplace(v.signer, v);
    if ((int)b.by_signer.size() < p_.notarThreshold()) return std::nullopt;
    b.done = true;
    auto nt = std::make_shared<Notarization>();
    nt->e = v.body.e;
    nt->h = v.body.h;
    nt->b = v.body.b;
    for (auto& [s, m] : b.by_signer) nt->votes.push_back(m);
    return NotarPtr(nt);
}

std::optional<FinalPtr> CertAccumulator::addFinalize(const Signed<FinalizeBody>& v) {
    auto& b = fins_[{v.body.e, v.body.h}];
    if (b.done) return std::nullopt;
    b.by_signer.emplace(v.signer, v);
    if ((int)b.by_signer.size() < p_.notarThreshold()) return std::nullopt;
    b.done = true;
    auto fn = std::make_shared<Finalization>();
    fn->e = v.body.e;
    fn->h = v.body.h;
    for (auto& [s, m] : b.by_signer) fn->votes.push_back(m);
    return FinalPtr(fn);
}

void CertAccumulator::clear() {
    stuck_.clear();
    start_.clear();
    votes_.clear();
    fins_.clear();
}

namespace {
template <typename B>
int distinctValidSigners(const std::vector<Signed<B>>& votes, const World& w) {
    std::set<int> signers;
    for (const auto& v : votes) {
        if (!w.verifySigned(v.signer, digest(v.body))) return -1;
        signers.insert(v.signer);
    }
    return (int)signers.size();
}
}  // namespace

bool validateEpochCert(const EpochCert& ec, const ProtocolParams& p, const World& w) {
    if (ec.e % 2 == 0) return false;
    for (const auto& v : ec.votes) {
        if (v.body.e != ec.e - 1 || v.body.final_ != ec.sigma) return false;
    }
    return distinctValidSigners(ec.votes, w) >= p.ecThreshold();
}

bool validateStartCert(const StartCert& sc, const ProtocolParams& p, const World& w) {
    for (const auto& v : sc.votes) {
        if (v.body.e != sc.e) return false;
    }
    if (distinctValidSigners(sc.votes, w) < p.scThreshold()) return false;
    return sc.pref == prefOfSc(sc.votes);
}

bool validateNotarization(const Notarization& nt, const ProtocolParams& p, const World& w) {
    if (!nt.b || nt.b->e != nt.e || nt.b->h != nt.h) return false;
    for (const auto& v : nt.votes) {
        if (v.body.e != nt.e || v.body.h != nt.h || !v.body.b || v.body.b->token != nt.b->token)
            return false;
    }
    return distinctValidSigners(nt.votes, w) >= p.notarThreshold();
}

bool validateFinalization(const Finalization& fn, const ProtocolParams& p, const World& w) {
    for (const auto& v : fn.votes) {
        if (v.body.e != fn.e || v.body.h != fn.h) return false;
    }
    return distinctValidSigners(fn.votes, w) >= p.notarThreshold();
}

}  // namespace frosty
