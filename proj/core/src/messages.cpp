#include "frosty/messages.hpp"

namespace frosty {

Epoch epochOf(const Payload& p) {
    return std::visit(
        [](const auto& m) -> Epoch {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SampleRequest>) return m.e;
            else if constexpr (std::is_same_v<T, SampleResponse>) return m.e;
            else if constexpr (std::is_same_v<T, StuckMsg>) return m.v.body.e;
            else if constexpr (std::is_same_v<T, StartVoteMsg>) return m.v.body.e;
            else if constexpr (std::is_same_v<T, EpochCertMsg>) return m.ec->e;
            else if constexpr (std::is_same_v<T, ProposalMsg>) return m.e;
            else if constexpr (std::is_same_v<T, VoteMsg>) return m.v.body.e;
            else if constexpr (std::is_same_v<T, FinalizeMsg>) return m.v.body.e;
            else if constexpr (std::is_same_v<T, NotarGossip>) return m.n->e;
            else return m.f->e;
        },
        p);
}

std::string digest(const StuckBody& b) {
    return "stuck|" + std::to_string(b.e) + "|" + b.final_.str();
}

std::string digest(const StartVoteBody& b) {
    return "start|" + std::to_string(b.e) + "|" + b.pref.str();
}

std::string digest(const VoteBody& b) {
    return "vote|" + std::to_string(b.e) + "|" + std::to_string(b.h) + "|" +
           (b.b ? b.b->token : "?");
}

std::string digest(const FinalizeBody& b) {
    return "finalize|" + std::to_string(b.e) + "|" + std::to_string(b.h);
}

std::string digestProposal(const ProposalMsg& m) {
    return "propose|" + std::to_string(m.e) + "|" + std::to_string(m.h) + "|" +
           (m.b ? m.b->token : "?");
}

}  // namespace frosty
