#pragma once

#include "turfbbn/core/network.hpp"
#include "turfbbn/fishery/metrics.hpp"
#include "turfbbn/learn/dataset.hpp"

#include <cstdint>
#include <vector>

namespace turfbbn::pipeline {

/// Ancestral sampling of complete rows from `network`; deterministic per seed.
DiscreteDataset synth_dataset(const Network& network, std::size_t n_rows, std::uint64_t seed);

struct FieldData {
    std::vector<fishery::MaRecord> records;
    std::vector<fishery::SizeSample> samples;
};

/// Stand-in field records: 13 coves holding 24 management areas, with
/// shell-length samples for every MA and one OA site per cove. Drivers
/// follow the qualitative links of reference_network() (other activities
/// raise OA availability and lower enforcement; OA availability shortens the
/// distance to surveillance; distance raises the illegal proportion;
/// effective enforcement enlarges MA limpets). Two coves are patterned on
/// reported cases: Chungungo (MA illegal proportions 0.62 / 0.71 against 0.41
/// in the OA) and Chigualoco (MA3 0.13 against 0.11).
FieldData synth_field_data(std::uint64_t seed);

}  // namespace turfbbn::pipeline
