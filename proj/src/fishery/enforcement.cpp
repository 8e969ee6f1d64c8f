#include "turfbbn/fishery/enforcement.hpp"

#include "turfbbn/error.hpp"

#include <algorithm>
#include <string>

namespace turfbbn::fishery {

int rank_enforcement(const SurveillanceArrangement& a) {
    switch (a.who) {
    case Surveyor::None:
        if (!a.schedule) return 1;
        break;
    case Surveyor::Fishers:
        if (!a.schedule) break;
        switch (*a.schedule) {
        case Schedule::Occasional: return 2;
        case Schedule::Daily8h: return 3;
        case Schedule::Daily24h: return 4;
        }
        break;
    case Surveyor::Hired:
        if (a.schedule == Schedule::Daily24h) return 5;
        break;
    }
    throw Error(ErrorCode::InvalidArrangement, "surveillance arrangement is not a leaf of the ranking tree");
}

int effective_enforcement(int rank, bool uneven, bool perceived_ineffective) {
    if (rank < 1 || rank > 5) throw Error(ErrorCode::InvalidArgument, "enforcement rank must be in 1..5, got " + std::to_string(rank));
    return std::max(1, rank - static_cast<int>(uneven) - static_cast<int>(perceived_ineffective));
}

EnforcementProfile EnforcementProfile::from(const SurveillanceArrangement& arrangement, bool uneven,
                                            bool perceived_ineffective) {
    const int rank = rank_enforcement(arrangement);
    return {rank, uneven, perceived_ineffective, effective_enforcement(rank, uneven, perceived_ineffective)};
}

}  // namespace turfbbn::fishery
