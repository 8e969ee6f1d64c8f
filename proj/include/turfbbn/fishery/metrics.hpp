#pragma once

#include "turfbbn/fishery/enforcement.hpp"
#include "turfbbn/fishery/wilcoxon.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace turfbbn::fishery {

inline constexpr double kMinimumLandingSizeMm = 65.0;
inline constexpr std::size_t kProtocolSampleSize = 200;

/// Index of availability of open-access area per registered fisher,
/// relative to the cove's total fishing ground:
///   (oa_area / fishers) / (oa_area + ma_area_total)
using IaoaFormula = std::function<double(double oa_area, double ma_area_total, std::size_t fishers)>;

/// Validates inputs and applies `formula` (the closed form above by
/// default). Throws RangeError for negative areas or zero fishers and
/// DegenerateGeometry when both areas are zero.
double iaoa(double oa_area, double ma_area_total, std::size_t fishers, const IaoaFormula& formula = {});

/// Fraction of shells strictly shorter than `mls_mm`. Throws EmptySample.
double illegal_proportion(std::span<const double> lengths_mm, double mls_mm = kMinimumLandingSizeMm);

double median(std::span<const double> values);

/// median(MA) / (median(MA) + median(OA)), in (0, 1) for positive lengths.
double relative_median_size(std::span<const double> ma_lengths, std::span<const double> oa_lengths);

enum class Regime { MA, OA };
enum class WaveExposure { ExposedSouth, ProtectedNorth };
enum class LandAccess { Easy, Difficult };

struct MaRecord {
    std::string cove;
    std::string ma_id;
    double ma_surface_km2 = 0.0;
    double oa_surface_km2 = 0.0;
    std::size_t registered_fishers = 1;
    double distance_km = 0.0;
    WaveExposure wave_exposure = WaveExposure::ExposedSouth;
    LandAccess land_access = LandAccess::Easy;
    bool other_activities = false;
    SurveillanceArrangement arrangement;
    EnforcementProfile enforcement;
    int perceived_poaching = 1;  // 1 (< 20 events/yr) .. 4 (> 100 events/yr)
    double iaoa = 0.0;           // derived per cove at ingestion
};

struct SizeSample {
    std::string cove;
    std::string site_id;
    Regime regime = Regime::MA;
    std::vector<double> lengths_mm;

    std::size_t size() const noexcept { return lengths_mm.size(); }
    bool below_protocol_minimum() const noexcept { return lengths_mm.size() < kProtocolSampleSize; }
};

struct PairedStateMetrics {
    double e_hat = 0.5;
    double illegal_proportion_ma = 0.0;
    double illegal_proportion_oa = 0.0;
    double statistic = 0.0;  // W
    double p_value = 1.0;
    bool exact = false;
};

/// Bundles relative median size, both illegal proportions and the MA-vs-OA
/// Wilcoxon comparison. Throws InvalidArgument when the samples come from
/// different coves or have the wrong regimes.
PairedStateMetrics paired_state_metrics(const SizeSample& ma, const SizeSample& oa,
                                        double mls_mm = kMinimumLandingSizeMm,
                                        WilcoxonMode mode = WilcoxonMode::RankSum);

}  // namespace turfbbn::fishery
