#include "turfbbn/pipeline/synth.hpp"

#include "turfbbn/error.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace turfbbn::pipeline {

using namespace turfbbn::fishery;

DiscreteDataset synth_dataset(const Network& network, std::size_t n_rows, std::uint64_t seed) {
    const Dag& dag = network.dag();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<std::size_t>> rows(n_rows, std::vector<std::size_t>(dag.size(), 0));
    for (auto& row : rows) {
        for (std::size_t v : dag.order()) {
            auto probs = network.row(v, row);
            double u = unit(rng);
            std::size_t pick = probs.size() - 1;
            for (std::size_t s = 0; s < probs.size(); ++s) {
                if (u < probs[s]) {
                    pick = s;
                    break;
                }
                u -= probs[s];
            }
            row[v] = pick;
        }
    }
    return DiscreteDataset(dag.variables(), rows);
}

namespace {

struct CovePlan {
    const char* name;
    std::size_t mas;
};

constexpr CovePlan kCoves[] = {
    {"Algarrobo", 2}, {"Chungungo", 2}, {"Chigualoco", 3}, {"Quintay", 2}, {"Hornos", 2},
    {"cove_06", 2},   {"cove_07", 2},   {"cove_08", 2},    {"cove_09", 2}, {"cove_10", 2},
    {"cove_11", 1},   {"cove_12", 1},   {"cove_13", 1},
};

SurveillanceArrangement arrangement_for_rank(int rank) {
    switch (rank) {
    case 2: return {Surveyor::Fishers, Schedule::Occasional};
    case 3: return {Surveyor::Fishers, Schedule::Daily8h};
    case 4: return {Surveyor::Fishers, Schedule::Daily24h};
    default: return {Surveyor::Hired, Schedule::Daily24h};
    }
}

// Mean of a normal length distribution (sd fixed) with the given fraction
// below the landing size.
double mean_for_illegal_fraction(double fraction, double sd) {
    const boost::math::normal standard;
    return kMinimumLandingSizeMm - sd * boost::math::quantile(standard, fraction);
}

std::vector<double> draw_lengths(std::mt19937_64& rng, double fraction, std::size_t n) {
    constexpr double sd = 9.0;
    std::normal_distribution<double> dist(mean_for_illegal_fraction(fraction, sd), sd);
    std::vector<double> out(n);
    for (auto& l : out) l = std::max(20.0, std::round(dist(rng)));
    return out;
}

}  // namespace

FieldData synth_field_data(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    FieldData data;
    std::map<std::string, double> oa_fraction;
    for (const auto& plan : kCoves) {
        const std::string cove = plan.name;
        const bool other = unit(rng) < 0.5;
        const auto fishers = static_cast<std::size_t>(15 + std::floor(unit(rng) * 76));
        const double oa_area = other ? uniform(6.0, 30.0) : uniform(1.5, 12.0);
        const auto exposure = unit(rng) < 0.5 ? WaveExposure::ExposedSouth : WaveExposure::ProtectedNorth;

        // Alternative activities pull surveillance effort away.
        const double r = unit(rng);
        int rank = other ? (r < 0.3 ? 2 : r < 0.6 ? 3 : r < 0.8 ? 4 : 5) : (r < 0.1 ? 2 : r < 0.2 ? 3 : r < 0.4 ? 4 : 5);
        if (cove == "Chungungo") rank = 2;

        oa_fraction[cove] = cove == "Chungungo" ? 0.41 : cove == "Chigualoco" ? 0.11 : uniform(0.25, 0.5);

        for (std::size_t m = 1; m <= plan.mas; ++m) {
            MaRecord rec;
            rec.cove = cove;
            rec.ma_id = "MA" + std::to_string(m);
            rec.ma_surface_km2 = std::round(uniform(0.2, 2.5) * 1000.0) / 1000.0;
            rec.oa_surface_km2 = std::round(oa_area * 1000.0) / 1000.0;
            rec.registered_fishers = fishers;
            rec.wave_exposure = exposure;
            rec.land_access = unit(rng) < 0.6 ? LandAccess::Easy : LandAccess::Difficult;
            rec.other_activities = other;
            rec.arrangement = arrangement_for_rank(rank);
            const bool uneven = plan.mas > 1 && unit(rng) < 0.7;
            const bool perceived = unit(rng) < 0.5;
            rec.enforcement = EnforcementProfile::from(rec.arrangement, uneven, perceived);
            rec.perceived_poaching = std::clamp(6 - rank + static_cast<int>(std::floor(uniform(-1.0, 1.0))), 1, 4);
            if (cove == "Chungungo") rec.perceived_poaching = 1;
            data.records.push_back(std::move(rec));
        }
    }

    std::map<std::string, double> ma_total;
    for (const auto& r : data.records) ma_total[r.cove] += r.ma_surface_km2;
    for (auto& r : data.records) r.iaoa = iaoa(r.oa_surface_km2, ma_total[r.cove], r.registered_fishers);

    // Distance to the surveillance base shrinks with OA availability.
    std::vector<double> sorted_iaoa;
    for (const auto& r : data.records) sorted_iaoa.push_back(r.iaoa);
    std::sort(sorted_iaoa.begin(), sorted_iaoa.end());
    for (auto& r : data.records) {
        const double pct = static_cast<double>(std::lower_bound(sorted_iaoa.begin(), sorted_iaoa.end(), r.iaoa) -
                                               sorted_iaoa.begin()) /
                           static_cast<double>(sorted_iaoa.size());
        const double exposure_shift = r.wave_exposure == WaveExposure::ExposedSouth ? 4.0 : 0.0;
        r.distance_km = std::round((3.0 + 40.0 * (1.0 - pct) * uniform(0.6, 1.4) + exposure_shift) * 10.0) / 10.0;
    }

    std::vector<double> sorted_distance;
    for (const auto& r : data.records) sorted_distance.push_back(r.distance_km);
    std::sort(sorted_distance.begin(), sorted_distance.end());

    std::string last_cove;
    for (const auto& r : data.records) {
        if (r.cove != last_cove) {
            const auto n = static_cast<std::size_t>(200 + std::floor(unit(rng) * 120));
            data.samples.push_back({r.cove, "OA", Regime::OA, draw_lengths(rng, oa_fraction[r.cove], n)});
            last_cove = r.cove;
        }
        const double dist_pct = static_cast<double>(std::lower_bound(sorted_distance.begin(), sorted_distance.end(),
                                                                     r.distance_km) -
                                                    sorted_distance.begin()) /
                                static_cast<double>(sorted_distance.size());
        double fraction = 0.04 + 0.40 * dist_pct - 0.04 * (r.enforcement.effective_rank - 3) + uniform(-0.05, 0.05);
        if (r.cove == "Chungungo") fraction = r.ma_id == "MA1" ? 0.62 : 0.71;
        if (r.cove == "Chigualoco" && r.ma_id == "MA3") fraction = 0.13;
        fraction = std::clamp(fraction, 0.02, 0.9);
        const auto n = static_cast<std::size_t>(200 + std::floor(unit(rng) * 120));
        data.samples.push_back({r.cove, r.ma_id, Regime::MA, draw_lengths(rng, fraction, n)});
    }
    return data;
}

}  // namespace turfbbn::pipeline
