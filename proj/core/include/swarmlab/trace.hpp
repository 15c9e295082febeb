#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swarmlab {

// Timestamps carry no timezone; a trace is read on one consistent local clock.
using Timestamp = std::chrono::sys_seconds;

// Parses `YYYY-MM-DDTHH:MM:SS`. Returns nullopt on any deviation.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp ts);

struct TraceRecord {
    Timestamp timestamp{};
    std::int64_t seeders = 0;
    std::int64_t leechers = 0;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

// CSV with header `timestamp,seeders,leechers`; records strictly increasing in time.
// Throws TraceParseError (with line number), TraceOrderError, or TraceParseError
// for negative counts.
std::vector<TraceRecord> parse_trace(std::istream& in);
std::vector<TraceRecord> parse_trace(std::string_view text);

void render_trace(std::ostream& out, std::span<const TraceRecord> records);
std::string render_trace(std::span<const TraceRecord> records);

struct Observation {
    Timestamp timestamp{};
    std::int64_t count = 0;

    friend bool operator==(const Observation&, const Observation&) = default;
};

struct SwarmSummary {
    Observation peak_seeders;
    Observation peak_leechers;
    TraceRecord first;
    TraceRecord last;
    double seeder_decay_ratio = 0.0;
    double leecher_decay_ratio = 0.0;
    // From the formation time to the seeder peak.
    std::optional<double> hours_to_peak;
};

// Peaks are maxima with the earliest timestamp winning ties. Decay ratios are
// last / peak (1 when the peak is zero). Throws DomainError on an empty trace and
// InvalidParameter when formation_time is after the first record.
SwarmSummary summarize(std::span<const TraceRecord> records,
                       std::optional<Timestamp> formation_time = std::nullopt);

struct SwarmComparison {
    double leecher_ratio = 0.0;
    double seeder_ratio = 0.0;
};

// a relative to b. Throws DomainError unless b has positive counts.
SwarmComparison compare_swarms(const TraceRecord& a, const TraceRecord& b);

// Flat JSON object.
std::string summary_to_json(const SwarmSummary& summary);

}  // namespace swarmlab
