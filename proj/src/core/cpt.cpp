#include "turfbbn/core/cpt.hpp"

namespace turfbbn {

std::vector<std::vector<std::string>> parent_combinations(std::span<const Variable> parents) {
    std::vector<std::vector<std::string>> combos{{}};
    for (const auto& parent : parents) {
        std::vector<std::vector<std::string>> next;
        next.reserve(combos.size() * parent.cardinality());
        for (const auto& prefix : combos) {
            for (const auto& state : parent.states) {
                auto tuple = prefix;
                tuple.push_back(state);
                next.push_back(std::move(tuple));
            }
        }
        combos = std::move(next);
    }
    return combos;
}

}  // namespace turfbbn
