#pragma once

#include "turfbbn/error.hpp"
#include "turfbbn/fishery/metrics.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace turfbbn::pipeline {

struct IngestIssue {
    std::size_t line = 0;  // 1-based; 1 is the header
    std::string message;
};

/// Raised with every row-level problem found in a file. The code is
/// SchemaError when any structural problem was found, RangeError otherwise.
class IngestError : public Error {
public:
    IngestError(ErrorCode code, std::vector<IngestIssue> issues);
    const std::vector<IngestIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<IngestIssue> issues_;
};

inline constexpr const char* kMaCsvHeader =
    "cove,ma_id,ma_surface_km2,oa_surface_km2,registered_fishers,distance_km,wave_exposure,land_access,"
    "other_activities,who,schedule,uneven,perceived_ineffective,perceived_poaching";
inline constexpr const char* kSizesCsvHeader = "cove,site_id,regime,length_mm";

/// Management-area attributes, one row per area. Enforcement rank, effective
/// rank and the per-cove IAOA are derived here.
std::vector<fishery::MaRecord> parse_ma_csv(std::string_view text);
std::vector<fishery::MaRecord> ingest_ma_csv(const std::string& path);

/// One row per measured shell; rows are grouped by (cove, site_id, regime)
/// in order of first appearance.
std::vector<fishery::SizeSample> parse_sizes_csv(std::string_view text);
std::vector<fishery::SizeSample> ingest_sizes_csv(const std::string& path);

std::string format_ma_csv(const std::vector<fishery::MaRecord>& records);
std::string format_sizes_csv(const std::vector<fishery::SizeSample>& samples);

/// Paired biological state for each record: the MA sample whose site_id is
/// the record's ma_id against all OA samples of the cove pooled. Throws
/// SchemaError when either side is missing.
std::vector<fishery::PairedStateMetrics> pair_state_metrics(const std::vector<fishery::MaRecord>& records,
                                                            const std::vector<fishery::SizeSample>& samples,
                                                            double mls_mm = fishery::kMinimumLandingSizeMm,
                                                            fishery::WilcoxonMode mode = fishery::WilcoxonMode::RankSum);

}  // namespace turfbbn::pipeline
