#pragma once

#include <cstddef>
#include <span>

namespace turfbbn::fishery {

enum class WilcoxonMode { RankSum, SignedRank };
enum class PValueMethod { Auto, Exact, Normal };

/// Sample sizes up to which Auto uses the exact null distribution:
/// n1 + n2 for the rank-sum test, non-zero differences for signed-rank.
inline constexpr std::size_t kExactWilcoxonLimit = 12;

struct WilcoxonResult {
    /// Rank sum: Mann-Whitney U of the first sample (R1 - n1(n1+1)/2).
    /// Signed rank: sum of ranks of the positive differences x - y.
    double statistic = 0.0;
    double p_value = 1.0;  // two-sided
    bool exact = false;
};

/// Midranks are used for ties. The exact path counts the permutation
/// distribution of the (mid)rank statistic; the normal path applies tie
/// and continuity corrections. Two-sided p is the null mass at least as far
/// from the mean as the observed statistic.
///
/// Errors: EmptySample; InvalidArgument for unequal signed-rank lengths;
/// AllZeroDifferences when every paired difference is zero.
WilcoxonResult wilcoxon_test(std::span<const double> x, std::span<const double> y, WilcoxonMode mode,
                             PValueMethod method = PValueMethod::Auto);

}  // namespace turfbbn::fishery
