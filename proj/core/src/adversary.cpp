#include "frosty/adversary.hpp"

namespace frosty {

ByzNode::ByzNode(ByzKind kind, const ProtocolParams& p, World* w, int id, uint64_t seed)
    : kind_(kind), p_(p), world_(w), id_(id) {
    if (kind_ == ByzKind::EquivLeader)
        inner_ = std::make_unique<Node>(p, w, id, seed);
}

void ByzNode::lieOnSamples(int t, const std::vector<Envelope>& delivered,
                           std::vector<Envelope>& out) {
    (void)t;
    for (const auto& env : delivered) {
        const auto* req = std::get_if<SampleRequest>(env.payload.get());
        if (!req) continue;
        SampleResponse resp;
        resp.s = req->s;
        resp.e = req->e;
        if (kind_ == ByzKind::SplitLiar) {
            // one shared poisoned block per branch, so all liars reinforce
            // the same two conflicting chains
            const char* key = (env.from % 2 == 0) ? "poison-a" : "poison-b";
            resp.tip = world_->blocks.makeBlock(key, world_->blocks.genesis(), "poison");
            resp.lock = resp.tip->cum;
            resp.fin = resp.tip->cum;
        } else {
            resp.tip = world_->blocks.genesis();
        }
        out.push_back({id_, env.from, wrap(resp)});
    }
}

void ByzNode::rewriteOutput(int t, std::vector<Envelope>& out) {
    (void)t;
    std::vector<Envelope> kept;
    for (auto& env : out) {
        const auto* prop = std::get_if<ProposalMsg>(env.payload.get());
        if (!prop || env.from != id_ || !prop->b || prop->b->dummy) {
            // inner answers samples honestly; those answers are replaced by
            // the lies emitted in lieOnSamples
            if (!std::get_if<SampleResponse>(env.payload.get())) kept.push_back(std::move(env));
            continue;
        }
        ProposalMsg alt = *prop;
        alt.b = world_->makeSimplexBlock(prop->b->e, prop->b->h, prop->b->parent,
                                         prop->b->txs + ":alt", prop->b->cert);
        int half = p_.n / 2;
        for (int to = 0; to < p_.n; ++to) {
            kept.push_back({id_, to, to < half ? env.payload : wrap(alt)});
        }
    }
    out.swap(kept);
}

void ByzNode::step(int t, std::vector<Envelope>&& delivered, std::vector<Envelope>& out) {
    switch (kind_) {
        case ByzKind::Crash:
            return;
        case ByzKind::SampleLiar:
        case ByzKind::SplitLiar:
            lieOnSamples(t, delivered, out);
            return;
        case ByzKind::EquivLeader: {
            lieOnSamples(t, delivered, out);
            std::vector<Envelope> pass;
            for (auto& env : delivered) {
                if (!std::get_if<SampleRequest>(env.payload.get()))
                    pass.push_back(std::move(env));
            }
            std::vector<Envelope> inner_out;
            inner_->step(t, std::move(pass), inner_out);
            rewriteOutput(t, inner_out);
            for (auto& env : inner_out) out.push_back(std::move(env));
            return;
        }
        case ByzKind::StuckSpammer: {
            StuckBody body;
            body.e = 0;
            if (spam_counter_++ % 2 == 1) body.final_ = world_->blocks.genesis()->cum;
            out.push_back({id_, -1, wrap(StuckMsg{{id_, body}})});
            return;
        }
    }
}

std::optional<ByzKind> byzKindFromName(const std::string& name) {
    if (name == "crash") return ByzKind::Crash;
    if (name == "sample_liar") return ByzKind::SampleLiar;
    if (name == "equivocating_leader") return ByzKind::EquivLeader;
    if (name == "stuck_spammer") return ByzKind::StuckSpammer;
    if (name == "split_liar") return ByzKind::SplitLiar;
    return std::nullopt;
}

}  // namespace frosty
