#include "frosty/node.hpp"

namespace frosty {

Node::Node(const ProtocolParams& p, World* w, int id, uint64_t seed)
    : p_(p),
      world_(w),
      id_(id),
      rng_(seed),
      store_(w->blocks.genesis()),
      even_(p, w, &store_, id, &rng_),
      odd_(p, w, id),
      stuck_acc_(p, w) {
    even_.initEpoch(0, 0);
    world_->metrics.epoch_entry[id_][0] = 0;
}

void Node::step(int t, std::vector<Envelope>&& delivered, std::vector<Envelope>& out) {
    for (const auto& env : delivered) dispatch(t, env);

    if (epoch_ % 2 == 0) {
        even_.tick(t, out);
        applyPendingEc(t, out);
        if (epoch_ % 2 == 1) odd_.tick(t, out);  // entered this timeslot
    } else {
        odd_.tick(t, out);
        if (odd_.concluded()) concludeOdd(t);
    }
}

void Node::dispatch(int t, const Envelope& env) {
    const Payload& p = *env.payload;

    // Epoch certificates advance the epoch and are handled out of band.
    if (const auto* ecm = std::get_if<EpochCertMsg>(&p)) {
        const EpochCertPtr& ec = ecm->ec;
        if (!ec || ec->e <= epoch_) return;
        if (ec->e == epoch_ + 1 && epoch_ % 2 == 0) {
            pending_ec_.push_back(ec);
        } else {
            future_.push_back(env);
        }
        return;
    }

    Epoch e = epochOf(p);
    if (e > epoch_) {
        future_.push_back(env);
        return;
    }
    if (e < epoch_) return;

    if (epoch_ % 2 == 0) {
        if (const auto* r = std::get_if<SampleRequest>(&p)) {
            even_.onSampleRequest(t, env.from, *r);
        } else if (const auto* r = std::get_if<SampleResponse>(&p)) {
            even_.onSampleResponse(t, env.from, *r);
        } else if (const auto* m = std::get_if<StuckMsg>(&p)) {
            if (!world_->verifySigned(m->v.signer, digest(m->v.body))) return;
            auto ec = stuck_acc_.addStuck(m->v);
            if (ec) {
                pending_ec_.push_back(*ec);
                world_->metrics.ec_formed.push_back({t, id_, (*ec)->e});
                world_->trace.event(t, id_, "ec", "e=" + std::to_string((*ec)->e));
            }
        }
    } else {
        if (const auto* m = std::get_if<StartVoteMsg>(&p)) odd_.onStartVote(t, m->v);
        else if (const auto* m = std::get_if<ProposalMsg>(&p)) odd_.onProposal(t, *m);
        else if (const auto* m = std::get_if<VoteMsg>(&p)) odd_.onVote(t, *m);
        else if (const auto* m = std::get_if<FinalizeMsg>(&p)) odd_.onFinalize(t, *m);
        else if (const auto* m = std::get_if<NotarGossip>(&p)) odd_.onNotarGossip(t, m->n);
        else if (const auto* m = std::get_if<FinalGossip>(&p)) odd_.onFinalGossip(t, m->f);
    }
}

void Node::applyPendingEc(int t, std::vector<Envelope>& out) {
    std::vector<EpochCertPtr> pend;
    pend.swap(pending_ec_);
    for (const auto& ec : pend) {
        if (epoch_ % 2 != 0 || ec->e != epoch_ + 1) continue;
        if (!validateEpochCert(*ec, p_, *world_)) continue;
        if (ec_forwarded_.insert(ec->e).second)
            out.push_back({id_, -1, wrap(EpochCertMsg{ec})});
        enterEpoch(ec->e, t);
        odd_.initEpoch(epoch_, even_.pref(), t);
        replayFuture(t);
    }
}

void Node::concludeOdd(int t) {
    const auto& c = *odd_.concluded();
    // Materialize the epoch's blocks as application blocks when the anchor
    // string ends on a whole stored block; all processes derive the same ids
    // and hashes, so stores stay consistent across the network.
    Resolution r = resolvePrefix(c.cert->pref, store_);
    if (r.reduct_len == c.cert->pref.size()) {
        BlockPtr parent = r.last;
        for (const auto& sb : c.reduced) {
            world_->blocks.aliasHash("app:" + sb->token, sb->token);
            parent = world_->blocks.makeBlock("app:" + sb->token, parent, sb->txs);
            store_.insert(parent);
        }
    }
    even_.setFinal(c.fin);
    world_->metrics.finals[id_].push_back({t, c.fin});
    enterEpoch(odd_.epoch() + 1, t);
    even_.initEpoch(epoch_, t);
    replayFuture(t);
}

void Node::enterEpoch(Epoch e, int t) {
    epoch_ = e;
    world_->metrics.epoch_entry[id_][e] = t;
    world_->trace.event(t, id_, "epoch", std::to_string(e));
}

void Node::replayFuture(int t) {
    std::vector<Envelope> buf;
    buf.swap(future_);
    for (const auto& env : buf) dispatch(t, env);
}

}  // namespace frosty
