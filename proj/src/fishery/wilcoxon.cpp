#include "turfbbn/fishery/wilcoxon.hpp"

#include "turfbbn/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

namespace turfbbn::fishery {

namespace {

struct Ranking {
    std::vector<long> doubled;  // 2 x midrank, always an integer
    double tie_term = 0.0;      // sum of t^3 - t over tie groups
};

Ranking midranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    Ranking r{std::vector<long>(n, 0), 0.0};
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
        const long twice = static_cast<long>(i + j + 2);
        for (std::size_t k = i; k <= j; ++k) r.doubled[idx[k]] = twice;
        const double t = static_cast<double>(j - i + 1);
        r.tie_term += t * t * t - t;
        i = j + 1;
    }
    return r;
}

double normal_two_sided(double centred, double sigma) {
    if (sigma <= 0.0) return 1.0;
    const double correction = centred > 0 ? 0.5 : (centred < 0 ? -0.5 : 0.0);
    const double z = (centred - correction) / sigma;
    return std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
}

WilcoxonResult rank_sum(std::span<const double> x, std::span<const double> y, PValueMethod method) {
    const std::size_t n1 = x.size();
    const std::size_t n2 = y.size();
    const std::size_t n = n1 + n2;
    std::vector<double> pooled(x.begin(), x.end());
    pooled.insert(pooled.end(), y.begin(), y.end());
    const Ranking ranks = midranks(pooled);

    long observed = 0;
    for (std::size_t i = 0; i < n1; ++i) observed += ranks.doubled[i];
    const double u = static_cast<double>(observed) / 2.0 - static_cast<double>(n1 * (n1 + 1)) / 2.0;

    const bool exact = method == PValueMethod::Exact || (method == PValueMethod::Auto && n <= kExactWilcoxonLimit);
    if (!exact) {
        const double nn1 = static_cast<double>(n1);
        const double nn2 = static_cast<double>(n2);
        const double nn = static_cast<double>(n);
        const double var = nn1 * nn2 / 12.0 * ((nn + 1.0) - ranks.tie_term / (nn * (nn - 1.0)));
        return {u, normal_two_sided(u - nn1 * nn2 / 2.0, std::sqrt(std::max(0.0, var))), false};
    }

    // ways[k][s]: subsets of k observations whose doubled ranks sum to s.
    const long max_sum = std::accumulate(ranks.doubled.begin(), ranks.doubled.end(), 0L);
    std::vector<std::vector<double>> ways(n1 + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
    ways[0][0] = 1.0;
    for (long r : ranks.doubled) {
        for (std::size_t k = n1; k >= 1; --k) {
            for (long s = max_sum; s >= r; --s) ways[k][s] += ways[k - 1][s - r];
        }
    }
    const long centre = static_cast<long>(n1 * (n + 1));
    const long distance = std::abs(observed - centre);
    double tail = 0.0;
    double total = 0.0;
    for (long s = 0; s <= max_sum; ++s) {
        total += ways[n1][s];
        if (std::abs(s - centre) >= distance) tail += ways[n1][s];
    }
    return {u, std::min(1.0, tail / total), true};
}

WilcoxonResult signed_rank(std::span<const double> x, std::span<const double> y, PValueMethod method) {
    if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "signed-rank test needs paired samples of equal length");
    std::vector<double> magnitude;
    std::vector<bool> positive;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (d == 0.0) continue;
        magnitude.push_back(std::abs(d));
        positive.push_back(d > 0.0);
    }
    if (magnitude.empty()) throw Error(ErrorCode::AllZeroDifferences, "all paired differences are zero");
    const std::size_t m = magnitude.size();
    const Ranking ranks = midranks(magnitude);

    long observed = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (positive[i]) observed += ranks.doubled[i];
    }
    const double v = static_cast<double>(observed) / 2.0;

    const bool exact = method == PValueMethod::Exact || (method == PValueMethod::Auto && m <= kExactWilcoxonLimit);
    if (!exact) {
        const double mm = static_cast<double>(m);
        const double var = mm * (mm + 1.0) * (2.0 * mm + 1.0) / 24.0 - ranks.tie_term / 48.0;
        return {v, normal_two_sided(v - mm * (mm + 1.0) / 4.0, std::sqrt(std::max(0.0, var))), false};
    }

    const long total_rank = std::accumulate(ranks.doubled.begin(), ranks.doubled.end(), 0L);
    std::vector<double> ways(static_cast<std::size_t>(total_rank) + 1, 0.0);
    ways[0] = 1.0;
    for (long r : ranks.doubled) {
        for (long s = total_rank; s >= r; --s) ways[s] += ways[s - r];
    }
    const long distance = std::abs(2 * observed - total_rank);
    double tail = 0.0;
    double total = 0.0;
    for (long s = 0; s <= total_rank; ++s) {
        total += ways[s];
        if (std::abs(2 * s - total_rank) >= distance) tail += ways[s];
    }
    return {v, std::min(1.0, tail / total), true};
}

}  // namespace

WilcoxonResult wilcoxon_test(std::span<const double> x, std::span<const double> y, WilcoxonMode mode,
                             PValueMethod method) {
    if (x.empty() || y.empty()) throw Error(ErrorCode::EmptySample, "Wilcoxon test needs non-empty samples");
    return mode == WilcoxonMode::RankSum ? rank_sum(x, y, method) : signed_rank(x, y, method);
}

}  // namespace turfbbn::fishery
