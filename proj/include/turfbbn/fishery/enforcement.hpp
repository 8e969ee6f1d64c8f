#pragma once

#include <optional>
#include <string_view>

namespace turfbbn::fishery {

enum class Surveyor { None, Fishers, Hired };
enum class Schedule { Occasional, Daily8h, Daily24h };

struct SurveillanceArrangement {
    Surveyor who = Surveyor::None;
    std::optional<Schedule> schedule;  // empty iff who == None
};

/// Leaves of the enforcement dichotomy tree:
///   none -> 1, fishers occasional -> 2, fishers daily 8 h -> 3,
///   fishers daily 24 h -> 4, hired daily 24 h -> 5.
/// Anything else (hired part-time, a schedule without surveyors) throws
/// InvalidArrangement.
int rank_enforcement(const SurveillanceArrangement& arrangement);

/// Formal rank lowered by one when surveillance is uneven across the
/// association's areas and by one more when fishers perceive it as
/// ineffective; never below 1. Throws InvalidArgument for ranks outside 1..5.
int effective_enforcement(int rank, bool uneven, bool perceived_ineffective);

struct EnforcementProfile {
    int rank = 1;
    bool uneven_across_mas = false;
    bool perceived_ineffective = false;
    int effective_rank = 1;

    static EnforcementProfile from(const SurveillanceArrangement& arrangement, bool uneven, bool perceived_ineffective);
};

}  // namespace turfbbn::fishery
