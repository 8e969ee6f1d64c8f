#include "turfbbn/fishery/metrics.hpp"

#include "turfbbn/error.hpp"

#include <algorithm>

namespace turfbbn::fishery {

double iaoa(double oa_area, double ma_area_total, std::size_t fishers, const IaoaFormula& formula) {
    if (!(oa_area >= 0.0) || !(ma_area_total >= 0.0)) throw Error(ErrorCode::RangeError, "areas must be non-negative");
    if (fishers < 1) throw Error(ErrorCode::RangeError, "at least one registered fisher is required");
    if (oa_area + ma_area_total <= 0.0) throw Error(ErrorCode::DegenerateGeometry, "both OA and MA areas are zero");
    if (formula) return formula(oa_area, ma_area_total, fishers);
    return (oa_area / static_cast<double>(fishers)) / (oa_area + ma_area_total);
}

double illegal_proportion(std::span<const double> lengths_mm, double mls_mm) {
    if (lengths_mm.empty()) throw Error(ErrorCode::EmptySample, "no shell lengths");
    auto below = std::count_if(lengths_mm.begin(), lengths_mm.end(), [&](double l) { return l < mls_mm; });
    return static_cast<double>(below) / static_cast<double>(lengths_mm.size());
}

double median(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptySample, "median of an empty sample");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double relative_median_size(std::span<const double> ma_lengths, std::span<const double> oa_lengths) {
    const double ma = median(ma_lengths);
    const double oa = median(oa_lengths);
    if (ma + oa <= 0.0) throw Error(ErrorCode::RangeError, "medians must be positive");
    return ma / (ma + oa);
}

PairedStateMetrics paired_state_metrics(const SizeSample& ma, const SizeSample& oa, double mls_mm, WilcoxonMode mode) {
    if (ma.cove != oa.cove) {
        throw Error(ErrorCode::InvalidArgument, "samples from different coves: '" + ma.cove + "' vs '" + oa.cove + "'");
    }
    if (ma.regime != Regime::MA || oa.regime != Regime::OA) {
        throw Error(ErrorCode::InvalidArgument, "expected an MA sample and an OA sample");
    }
    PairedStateMetrics out;
    out.e_hat = relative_median_size(ma.lengths_mm, oa.lengths_mm);
    out.illegal_proportion_ma = illegal_proportion(ma.lengths_mm, mls_mm);
    out.illegal_proportion_oa = illegal_proportion(oa.lengths_mm, mls_mm);
    auto w = wilcoxon_test(ma.lengths_mm, oa.lengths_mm, mode);
    out.statistic = w.statistic;
    out.p_value = w.p_value;
    out.exact = w.exact;
    return out;
}

}  // namespace turfbbn::fishery
