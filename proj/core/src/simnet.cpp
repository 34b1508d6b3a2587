#include "frosty/simnet.hpp"

#include <stdexcept>

namespace frosty {

Net::Net(const ProtocolParams& p, World* w, int gst, uint64_t seed)
    : p_(p), world_(w), gst_(gst), rng_(seed) {}

void Net::addNode(std::unique_ptr<INode> node) {
    if (node->id() != static_cast<int>(nodes_.size()))
        throw std::logic_error("Net::addNode: ids must be dense and ascending");
    nodes_.push_back(std::move(node));
}

Node* Net::addHonest(int id, uint64_t seed) {
    auto n = std::make_unique<Node>(p_, world_, id, seed);
    Node* raw = n.get();
    addNode(std::move(n));
    honest_.push_back(raw);
    return raw;
}

void Net::schedule(int t, const Envelope& env) {
    world_->metrics.messages_sent++;
    auto deliverTo = [&](int to) {
        int at;
        if (to == env.from) {
            at = t + 1;
        } else {
            int hi = std::max(t, gst_) + p_.delta;
            at = (max_delay_pre_gst_ && t < gst_) ? hi : rng_.range(t + 1, hi);
        }
        inbox_[at].push_back({env.from, to, env.payload});
    };
    if (env.to == -1) {
        for (size_t i = 0; i < nodes_.size(); ++i) deliverTo(static_cast<int>(i));
    } else {
        deliverTo(env.to);
    }
}

void Net::tick() {
    int t = now_;
    std::vector<std::vector<Envelope>> due(nodes_.size());
    auto it = inbox_.find(t);
    if (it != inbox_.end()) {
        for (auto& env : it->second) {
            due[env.to].push_back(std::move(env));
            world_->metrics.messages_delivered++;
        }
        inbox_.erase(it);
    }
    std::vector<Envelope> out;
    for (size_t i = 0; i < nodes_.size(); ++i) {
        out.clear();
        nodes_[i]->step(t, std::move(due[i]), out);
        for (const auto& env : out) schedule(t, env);
    }
    now_ = t + 1;
}

void Net::run(int horizon) {
    while (now_ < horizon) tick();
}

bool Net::checkConsistency() {
    bool ok = true;
    for (size_t i = 0; i < honest_.size(); ++i) {
        for (size_t j = i + 1; j < honest_.size(); ++j) {
            const ChainString& a = honest_[i]->finalValue();
            const ChainString& b = honest_[j]->finalValue();
            if (!a.isPrefixOf(b) && !b.isPrefixOf(a)) {
                world_->violation(now_, "incomparable finalized strings at nodes " +
                                            std::to_string(honest_[i]->id()) + " and " +
                                            std::to_string(honest_[j]->id()));
                ok = false;
            }
        }
    }
    return ok;
}

ChainString Net::finalFloor() const {
    ChainString best;
    bool have = false;
    for (Node* n : honest_) {
        if (!have || n->finalValue().size() < best.size()) {
            best = n->finalValue();
            have = true;
        }
    }
    return best;
}

}  // namespace frosty
