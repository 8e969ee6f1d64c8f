#include "turfbbn/pipeline/ingest.hpp"

#include "turfbbn/core/network_io.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

namespace turfbbn::pipeline {

using namespace turfbbn::fishery;

namespace {

std::string summarise(const std::vector<IngestIssue>& issues) {
    std::ostringstream out;
    out << issues.size() << " problem(s)";
    for (const auto& i : issues) out << "\n  line " << i.line << ": " << i.message;
    return out.str();
}

std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    out.push_back(field);
    for (auto& f : out) {
        auto b = f.find_first_not_of(' ');
        auto e = f.find_last_not_of(' ');
        f = b == std::string::npos ? std::string{} : f.substr(b, e - b + 1);
    }
    return out;
}

struct Table {
    std::map<std::string, std::size_t> columns;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;  // (line, fields)
};

Table read_table(std::string_view text, std::string_view expected_header) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<IngestIssue> issues;
    Table table;
    if (!std::getline(in, line)) throw IngestError(ErrorCode::SchemaError, {{1, "file is empty"}});

    auto header = split_csv(line);
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (!table.columns.emplace(header[k], k).second) issues.push_back({1, "duplicate column '" + header[k] + "'"});
    }
    auto expected = split_csv(expected_header);
    for (const auto& name : expected) {
        if (!table.columns.count(name)) issues.push_back({1, "missing column '" + name + "'"});
    }
    for (const auto& [name, k] : table.columns) {
        if (std::find(expected.begin(), expected.end(), name) == expected.end()) {
            issues.push_back({1, "unexpected column '" + name + "'"});
        }
    }
    if (!issues.empty()) throw IngestError(ErrorCode::SchemaError, issues);

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \r\t") == std::string::npos) continue;
        auto fields = split_csv(line);
        if (fields.size() != header.size()) {
            issues.push_back({lineno, "expected " + std::to_string(header.size()) + " fields, found " +
                                          std::to_string(fields.size())});
            continue;
        }
        table.rows.emplace_back(lineno, std::move(fields));
    }
    if (!issues.empty()) throw IngestError(ErrorCode::SchemaError, issues);
    return table;
}

// Collects problems for one row instead of stopping at the first.
class RowReader {
public:
    RowReader(const Table& t, std::size_t line, const std::vector<std::string>& fields,
              std::vector<IngestIssue>& issues, bool& schema_problem)
        : table_(t), line_(line), fields_(fields), issues_(issues), schema_problem_(schema_problem) {}

    const std::string& text(const std::string& column) { return fields_[table_.columns.at(column)]; }

    double number(const std::string& column) {
        const std::string& s = text(column);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
            schema("column '" + column + "': '" + s + "' is not a number");
            return 0.0;
        }
        return v;
    }

    long integer(const std::string& column) {
        const std::string& s = text(column);
        long v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            schema("column '" + column + "': '" + s + "' is not an integer");
            return 0;
        }
        return v;
    }

    template <class T>
    T choice(const std::string& column, std::initializer_list<std::pair<const char*, T>> options) {
        const std::string& s = text(column);
        std::string allowed;
        for (const auto& [label, value] : options) {
            if (s == label) return value;
            allowed += allowed.empty() ? label : std::string("|") + label;
        }
        schema("column '" + column + "': '" + s + "' is not one of " + allowed);
        return options.begin()->second;
    }

    void range(const std::string& message) { issues_.push_back({line_, message}); }
    void schema(const std::string& message) {
        schema_problem_ = true;
        issues_.push_back({line_, message});
    }

private:
    const Table& table_;
    std::size_t line_;
    const std::vector<std::string>& fields_;
    std::vector<IngestIssue>& issues_;
    bool& schema_problem_;
};

}  // namespace

IngestError::IngestError(ErrorCode code, std::vector<IngestIssue> issues)
    : Error(code, summarise(issues)), issues_(std::move(issues)) {}

std::vector<MaRecord> parse_ma_csv(std::string_view text) {
    Table table = read_table(text, kMaCsvHeader);
    std::vector<IngestIssue> issues;
    bool schema_problem = false;
    std::vector<MaRecord> records;
    std::vector<std::size_t> lines;

    for (const auto& [line, fields] : table.rows) {
        RowReader row(table, line, fields, issues, schema_problem);
        const std::size_t before = issues.size();
        MaRecord r;
        r.cove = row.text("cove");
        r.ma_id = row.text("ma_id");
        if (r.cove.empty() || r.ma_id.empty()) row.schema("cove and ma_id must be non-empty");
        r.ma_surface_km2 = row.number("ma_surface_km2");
        r.oa_surface_km2 = row.number("oa_surface_km2");
        long fishers = row.integer("registered_fishers");
        r.distance_km = row.number("distance_km");
        r.wave_exposure = row.choice<WaveExposure>("wave_exposure", {{"S", WaveExposure::ExposedSouth},
                                                                     {"N", WaveExposure::ProtectedNorth}});
        r.land_access = row.choice<LandAccess>("land_access", {{"easy", LandAccess::Easy}, {"difficult", LandAccess::Difficult}});
        r.other_activities = row.choice<bool>("other_activities", {{"Y", true}, {"N", false}});
        r.arrangement.who = row.choice<Surveyor>("who", {{"none", Surveyor::None},
                                                         {"fishers", Surveyor::Fishers},
                                                         {"hired", Surveyor::Hired}});
        r.arrangement.schedule = row.choice<std::optional<Schedule>>(
            "schedule", {{"-", std::nullopt},
                         {"occasional", Schedule::Occasional},
                         {"daily8", Schedule::Daily8h},
                         {"daily24", Schedule::Daily24h}});
        bool uneven = row.choice<bool>("uneven", {{"Y", true}, {"N", false}});
        bool perceived = row.choice<bool>("perceived_ineffective", {{"Y", true}, {"N", false}});
        long poaching = row.integer("perceived_poaching");

        if (r.ma_surface_km2 < 0.0) row.range("ma_surface_km2 must be non-negative");
        if (r.oa_surface_km2 < 0.0) row.range("oa_surface_km2 must be non-negative");
        if (r.distance_km < 0.0) row.range("distance_km must be non-negative");
        if (fishers < 1) row.range("registered_fishers must be at least 1");
        if (poaching < 1 || poaching > 4) row.range("perceived_poaching must be in 1..4");
        r.registered_fishers = fishers < 1 ? 1 : static_cast<std::size_t>(fishers);
        r.perceived_poaching = static_cast<int>(poaching);

        if (issues.size() == before) {
            try {
                r.enforcement = EnforcementProfile::from(r.arrangement, uneven, perceived);
            } catch (const Error& e) {
                row.range(e.what());
            }
        }
        if (issues.size() == before) {
            records.push_back(std::move(r));
            lines.push_back(line);
        }
    }

    // IAOA is a cove attribute: the cove's OA surface and fishers against
    // the summed surface of all its MAs.
    std::map<std::string, double> ma_total;
    std::map<std::string, std::pair<double, std::size_t>> cove_oa;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        ma_total[r.cove] += r.ma_surface_km2;
        auto [it, inserted] = cove_oa.emplace(r.cove, std::pair{r.oa_surface_km2, r.registered_fishers});
        if (!inserted && (it->second.first != r.oa_surface_km2 || it->second.second != r.registered_fishers)) {
            issues.push_back({lines[i], "cove '" + r.cove + "' has inconsistent oa_surface_km2 or registered_fishers"});
        }
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto& r = records[i];
        try {
            r.iaoa = iaoa(r.oa_surface_km2, ma_total[r.cove], r.registered_fishers);
        } catch (const Error& e) {
            issues.push_back({lines[i], e.what()});
        }
    }
    if (!issues.empty()) throw IngestError(schema_problem ? ErrorCode::SchemaError : ErrorCode::RangeError, issues);
    return records;
}

std::vector<MaRecord> ingest_ma_csv(const std::string& path) { return parse_ma_csv(read_text_file(path)); }

std::vector<SizeSample> parse_sizes_csv(std::string_view text) {
    Table table = read_table(text, kSizesCsvHeader);
    std::vector<IngestIssue> issues;
    bool schema_problem = false;
    std::vector<SizeSample> samples;
    std::map<std::tuple<std::string, std::string, Regime>, std::size_t> slot;

    for (const auto& [line, fields] : table.rows) {
        RowReader row(table, line, fields, issues, schema_problem);
        const std::size_t before = issues.size();
        std::string cove = row.text("cove");
        std::string site = row.text("site_id");
        if (cove.empty() || site.empty()) row.schema("cove and site_id must be non-empty");
        Regime regime = row.choice<Regime>("regime", {{"MA", Regime::MA}, {"OA", Regime::OA}});
        double length = row.number("length_mm");
        if (issues.size() == before && !(length > 0.0)) row.range("length_mm must be positive");
        if (issues.size() != before) continue;

        auto key = std::tuple(cove, site, regime);
        auto it = slot.find(key);
        if (it == slot.end()) {
            it = slot.emplace(key, samples.size()).first;
            samples.push_back({cove, site, regime, {}});
        }
        samples[it->second].lengths_mm.push_back(length);
    }
    if (!issues.empty()) throw IngestError(schema_problem ? ErrorCode::SchemaError : ErrorCode::RangeError, issues);
    return samples;
}

std::vector<SizeSample> ingest_sizes_csv(const std::string& path) { return parse_sizes_csv(read_text_file(path)); }

namespace {

const char* schedule_label(const std::optional<Schedule>& s) {
    if (!s) return "-";
    switch (*s) {
    case Schedule::Occasional: return "occasional";
    case Schedule::Daily8h: return "daily8";
    case Schedule::Daily24h: return "daily24";
    }
    return "-";
}

const char* surveyor_label(Surveyor s) {
    switch (s) {
    case Surveyor::None: return "none";
    case Surveyor::Fishers: return "fishers";
    case Surveyor::Hired: return "hired";
    }
    return "none";
}

}  // namespace

std::string format_ma_csv(const std::vector<MaRecord>& records) {
    std::ostringstream out;
    out << std::setprecision(10) << kMaCsvHeader << "\n";
    for (const auto& r : records) {
        out << r.cove << ',' << r.ma_id << ',' << r.ma_surface_km2 << ',' << r.oa_surface_km2 << ','
            << r.registered_fishers << ',' << r.distance_km << ','
            << (r.wave_exposure == WaveExposure::ExposedSouth ? "S" : "N") << ','
            << (r.land_access == LandAccess::Easy ? "easy" : "difficult") << ',' << (r.other_activities ? "Y" : "N")
            << ',' << surveyor_label(r.arrangement.who) << ',' << schedule_label(r.arrangement.schedule) << ','
            << (r.enforcement.uneven_across_mas ? "Y" : "N") << ',' << (r.enforcement.perceived_ineffective ? "Y" : "N")
            << ',' << r.perceived_poaching << "\n";
    }
    return out.str();
}

std::string format_sizes_csv(const std::vector<SizeSample>& samples) {
    std::ostringstream out;
    out << std::setprecision(10) << kSizesCsvHeader << "\n";
    for (const auto& s : samples) {
        for (double l : s.lengths_mm) {
            out << s.cove << ',' << s.site_id << ',' << (s.regime == Regime::MA ? "MA" : "OA") << ',' << l << "\n";
        }
    }
    return out.str();
}

std::vector<PairedStateMetrics> pair_state_metrics(const std::vector<MaRecord>& records,
                                                   const std::vector<SizeSample>& samples, double mls_mm,
                                                   WilcoxonMode mode) {
    std::vector<PairedStateMetrics> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        const SizeSample* ma = nullptr;
        SizeSample oa{r.cove, "OA", Regime::OA, {}};
        for (const auto& s : samples) {
            if (s.cove != r.cove) continue;
            if (s.regime == Regime::MA && s.site_id == r.ma_id) ma = &s;
            if (s.regime == Regime::OA) oa.lengths_mm.insert(oa.lengths_mm.end(), s.lengths_mm.begin(), s.lengths_mm.end());
        }
        if (!ma) throw Error(ErrorCode::SchemaError, "no MA size sample for " + r.cove + "/" + r.ma_id);
        if (oa.lengths_mm.empty()) throw Error(ErrorCode::SchemaError, "no OA size sample for cove " + r.cove);
        out.push_back(paired_state_metrics(*ma, oa, mls_mm, mode));
    }
    return out;
}

}  // namespace turfbbn::pipeline
