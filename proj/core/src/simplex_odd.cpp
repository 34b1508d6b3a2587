#include "frosty/simplex_odd.hpp"

#include <algorithm>

namespace frosty {

std::vector<SBlockPtr> reduceChain(const std::vector<SBlockPtr>& chain) {
    std::vector<SBlockPtr> out;
    for (const auto& b : chain) {
        if (!b->dummy) out.push_back(b);
    }
    return out;
}

ChainString finOf(const std::vector<SBlockPtr>& chain, unsigned mu) {
    std::vector<SBlockPtr> red = reduceChain(chain);
    ChainString out = red.front()->cert->pref;
    for (unsigned i = 0; i < mu; ++i) out = out.concat(red[i]->hash);
    return out;
}

SimplexOdd::SimplexOdd(const ProtocolParams& p, World* w, int self)
    : p_(p), world_(w), self_(self), acc_(p, w) {}

void SimplexOdd::initEpoch(Epoch e, const ChainString& pref, int t) {
    e_ = e;
    pref_ = pref;
    entered_ = false;
    ready_ = false;
    h_ = 0;
    sc_.reset();
    acc_.clear();
    timers_.clear();
    proposed_.clear();
    voted_.clear();
    first_proposal_.clear();
    leader_seen_.clear();
    notars_.clear();
    chains_.clear();
    chains_by_h_.clear();
    unassembled_.clear();
    finalizations_.clear();
    gossiped_.clear();
    incoming_.clear();
    fin_incoming_.clear();
    concluded_.reset();
    // height-1 parent: the empty chain, always assembled
    chains_.emplace(World::chainToken({}), NotarizedChain{});
    chains_by_h_[0].push_back(World::chainToken({}));
    world_->trace.event(t, self_, "init_odd", "e=" + std::to_string(e));
}

void SimplexOdd::onStartVote(int t, const Signed<StartVoteBody>& v) {
    if (v.body.e != e_) return;
    if (!world_->verifySigned(v.signer, digest(v.body))) return;
    auto sc = acc_.addStartVote(v);
    if (sc && !ready_) {
        sc_ = *sc;
        ready_ = true;
        h_ = 1;
        world_->metrics.sc_formed.push_back({t, self_, e_});
        world_->trace.event(t, self_, "sc", "e=" + std::to_string(e_) +
                                                " pref_len=" + std::to_string(sc_->pref.size()));
    }
}

void SimplexOdd::onProposal(int t, const ProposalMsg& m) {
    (void)t;
    if (m.e != e_ || m.h < 1) return;
    if (m.leader != lead(m.h, p_.n)) return;
    if (!leader_seen_.insert(m.h).second) return;  // first proposal per view only
    if (!world_->verifySigned(m.leader, digestProposal(m))) return;
    for (const auto& n : m.notars) incoming_.push_back(n);
    first_proposal_.emplace(m.h, m);
}

void SimplexOdd::onVote(int t, const VoteMsg& m) {
    (void)t;
    if (m.v.body.e != e_) return;
    if (!world_->verifySigned(m.v.signer, digest(m.v.body))) return;
    auto n = acc_.addVote(m.v);
    if (n) incoming_.push_back(*n);
}

void SimplexOdd::onFinalize(int t, const FinalizeMsg& m) {
    (void)t;
    if (m.v.body.e != e_) return;
    if (!world_->verifySigned(m.v.signer, digest(m.v.body))) return;
    auto f = acc_.addFinalize(m.v);
    if (f) fin_incoming_.push_back(*f);
}

void SimplexOdd::onNotarGossip(int t, const NotarPtr& n) {
    (void)t;
    if (!n || n->e != e_) return;
    if (!validateNotarization(*n, p_, *world_)) return;
    incoming_.push_back(n);
}

void SimplexOdd::onFinalGossip(int t, const FinalPtr& f) {
    (void)t;
    if (!f || f->e != e_) return;
    if (!validateFinalization(*f, p_, *world_)) return;
    fin_incoming_.push_back(f);
}

void SimplexOdd::tick(int t, std::vector<Envelope>& out) {
    if (e_ < 0) return;
    if (!entered_) {
        Signed<StartVoteBody> v{self_, {e_, pref_}};
        world_->recordSigned(self_, digest(v.body));
        out.push_back({self_, -1, wrap(StartVoteMsg{v})});
        entered_ = true;
        world_->trace.event(t, self_, "start_vote", "e=" + std::to_string(e_));
    }

    // adopt newly formed/received notarizations and finalizations
    std::vector<NotarPtr> in;
    in.swap(incoming_);
    for (const auto& n : in) adoptNotar(t, n, out);
    std::vector<FinalPtr> fin;
    fin.swap(fin_incoming_);
    for (const auto& f : fin) {
        if (finalizations_.emplace(f->h, f).second) {
            if (gossiped_.insert("fin|" + std::to_string(f->h)).second)
                out.push_back({self_, -1, wrap(FinalGossip{f})});
        }
    }

    if (!ready_) {
        // a valid certificate embedded in a proposal also makes us ready
        for (auto& [h, m] : first_proposal_) {
            if (m.b && m.b->cert && m.b->cert->e == e_ &&
                validateStartCert(*m.b->cert, p_, *world_)) {
                sc_ = m.b->cert;
                ready_ = true;
                h_ = 1;
                world_->metrics.sc_formed.push_back({t, self_, e_});
                break;
            }
        }
    }

    if (ready_) {
        advanceViews(t, out);
        if (timers_[h_].fire_at < 0) timers_[h_].fire_at = t + 3 * p_.delta;
        maybePropose(t, out);
        maybeVote(t, out);
        Timer& tm = timers_[h_];
        if (!tm.fired && !tm.cancelled && tm.fire_at >= 0 && t >= tm.fire_at) {
            tm.fired = true;
            Signed<VoteBody> v{self_, {e_, h_, world_->dummyBlock(e_, h_)}};
            world_->recordSigned(self_, digest(v.body));
            out.push_back({self_, -1, wrap(VoteMsg{v})});
        }
    }
    checkConclude(t);
}

void SimplexOdd::adoptNotar(int t, const NotarPtr& n, std::vector<Envelope>& out) {
    std::string key = std::to_string(n->h) + "|" + n->b->token;
    if (!notars_.emplace(key, n).second) return;
    world_->metrics.notars.push_back({t, self_, e_, n->h, n->b->token, n->b->dummy});
    if (gossiped_.insert("nt|" + key).second) out.push_back({self_, -1, wrap(NotarGossip{n})});
    unassembled_.push_back(n);
    tryAssemble(t, out);
}

bool SimplexOdd::addChain(NotarizedChain&& nc) {
    std::string tok = World::chainToken(nc.blocks);
    int h = (int)nc.blocks.size();
    if (chains_.count(tok)) return false;
    chains_.emplace(tok, std::move(nc));
    chains_by_h_[h].push_back(tok);
    return true;
}

void SimplexOdd::tryAssemble(int t, std::vector<Envelope>& out) {
    (void)t;
    (void)out;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& n : unassembled_) {
            const SBlockPtr& b = n->b;
            if (b->dummy) {
                // a notarized dummy extends every notarized chain of height h-1
                auto it = chains_by_h_.find(b->h - 1);
                if (it == chains_by_h_.end()) continue;
                auto toks = it->second;  // copy: addChain mutates the index
                for (const auto& ptok : toks) {
                    NotarizedChain nc = chains_[ptok];
                    nc.blocks.push_back(b);
                    nc.notars.push_back(n);
                    if (addChain(std::move(nc))) progress = true;
                }
            } else {
                auto pit = chains_.find(b->parent);
                if (pit == chains_.end()) continue;
                if ((int)pit->second.blocks.size() != b->h - 1) continue;
                NotarizedChain nc = pit->second;
                nc.blocks.push_back(b);
                nc.notars.push_back(n);
                nc.reduced++;
                if (addChain(std::move(nc))) progress = true;
            }
        }
    }
}

void SimplexOdd::maybePropose(int t, std::vector<Envelope>& out) {
    if (self_ != lead(h_, p_.n) || proposed_.count(h_)) return;
    auto it = chains_by_h_.find(h_ - 1);
    if (it == chains_by_h_.end() || it->second.empty()) return;  // defer
    const NotarizedChain& parent = chains_[it->second.front()];
    StartCertPtr c = sc_;
    for (auto rit = parent.blocks.rbegin(); rit != parent.blocks.rend(); ++rit) {
        if (!(*rit)->dummy) {
            c = (*rit)->cert;  // same-C rule: reuse the last non-dummy's cert
            break;
        }
    }
    SBlockPtr b = world_->makeSimplexBlock(
        e_, h_, World::chainToken(parent.blocks),
        "tx:" + std::to_string(self_) + ":" + std::to_string(h_), c);
    ProposalMsg m{self_, e_, h_, parent.blocks, parent.notars, b};
    world_->recordSigned(self_, digestProposal(m));
    out.push_back({self_, -1, wrap(ProposalMsg{m})});
    proposed_.insert(h_);
    world_->trace.event(t, self_, "propose",
                        "e=" + std::to_string(e_) + " h=" + std::to_string(h_));
}

bool SimplexOdd::validChain(const std::vector<SBlockPtr>& chain) const {
    std::vector<SBlockPtr> prefix;
    StartCertPtr seen_c;
    for (size_t i = 0; i < chain.size(); ++i) {
        const SBlockPtr& b = chain[i];
        if (!b || b->e != e_ || b->h != (int)i + 1) return false;
        if (b->dummy) {
            if (b->token != world_->dummyBlock(e_, b->h)->token) return false;
        } else {
            if (b->parent != World::chainToken(prefix)) return false;
            if (!b->cert || b->cert->e != e_) return false;
            if (seen_c) {
                if (b->cert->token != seen_c->token) return false;  // same-C rule
            } else {
                if (!validateStartCert(*b->cert, p_, *world_)) return false;
            }
            seen_c = b->cert;
        }
        prefix.push_back(b);
    }
    return true;
}

void SimplexOdd::maybeVote(int t, std::vector<Envelope>& out) {
    if (voted_.count(h_)) return;
    auto it = first_proposal_.find(h_);
    if (it == first_proposal_.end()) return;
    const ProposalMsg& m = it->second;
    voted_.insert(h_);  // one attempt per view: a bad first proposal burns it
    if (!m.b || m.b->dummy || (int)m.chain.size() != h_ - 1) return;
    std::vector<SBlockPtr> full = m.chain;
    full.push_back(m.b);
    if (!validChain(full)) {
        world_->trace.event(t, self_, "bad_proposal", "h=" + std::to_string(h_));
        return;
    }
    // the h-1 prefix must be notarized by the attached certificates
    for (int i = 0; i < h_ - 1; ++i) {
        const SBlockPtr& b = m.chain[i];
        bool ok = false;
        for (const auto& n : m.notars) {
            if (n && n->h == i + 1 && n->b && n->b->token == b->token &&
                validateNotarization(*n, p_, *world_)) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            world_->trace.event(t, self_, "bad_proposal", "h=" + std::to_string(h_));
            return;
        }
    }
    Signed<VoteBody> v{self_, {e_, h_, m.b}};
    world_->recordSigned(self_, digest(v.body));
    out.push_back({self_, -1, wrap(VoteMsg{v})});
}

void SimplexOdd::advanceViews(int t, std::vector<Envelope>& out) {
    while (true) {
        auto it = chains_by_h_.find(h_);
        if (it == chains_by_h_.end() || it->second.empty()) break;
        Timer& tm = timers_[h_];
        if (!tm.fired) {
            tm.cancelled = true;
            Signed<FinalizeBody> v{self_, {e_, h_}};
            world_->recordSigned(self_, digest(v.body));
            out.push_back({self_, -1, wrap(FinalizeMsg{v})});
        }
        h_++;
        if (timers_[h_].fire_at < 0) timers_[h_].fire_at = t + 3 * p_.delta;
    }
}

void SimplexOdd::checkConclude(int t) {
    if (concluded_) return;
    for (const auto& [h, f] : finalizations_) {
        auto it = chains_by_h_.find(h);
        if (it == chains_by_h_.end()) continue;
        for (const auto& tok : it->second) {
            const NotarizedChain& nc = chains_[tok];
            if (nc.reduced < p_.mu) continue;
            std::vector<SBlockPtr> red = reduceChain(nc.blocks);
            red.resize(p_.mu);
            Concluded c;
            c.fin = finOf(nc.blocks, p_.mu);
            c.reduced = red;
            c.cert = red.front()->cert;
            concluded_ = std::move(c);
            world_->metrics.concludes.push_back({t, self_, e_, p_.mu});
            world_->trace.event(t, self_, "conclude",
                                "e=" + std::to_string(e_) + " h=" + std::to_string(h) +
                                    " fin_len=" + std::to_string(concluded_->fin.size()));
            return;
        }
    }
}

}  // namespace frosty
