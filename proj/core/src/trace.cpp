#include "swarmlab/trace.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "swarmlab/errors.hpp"

namespace swarmlab {

namespace {

constexpr std::string_view kHeader = "timestamp,seeders,leechers";

template <typename Int>
bool parse_fixed(std::string_view text, Int& out) {
    if (text.empty()) return false;
    for (char c : text) {
        if (c < '0' || c > '9') return false;
    }
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::int64_t parse_count(std::string_view field, std::string_view name, std::size_t line) {
    if (!field.empty() && field.front() == '-') {
        std::int64_t v = 0;
        if (parse_fixed(field.substr(1), v)) {
            throw TraceParseError("line " + std::to_string(line) + ": negative " + std::string(name) + " count", line);
        }
    }
    std::int64_t v = 0;
    if (!parse_fixed(field, v)) {
        throw TraceParseError("line " + std::to_string(line) + ": " + std::string(name) + " is not a count: '" +
                                  std::string(field) + "'",
                              line);
    }
    return v;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    // YYYY-MM-DDTHH:MM:SS
    if (text.size() != 19 || text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
        text[16] != ':') {
        return std::nullopt;
    }
    int y = 0;
    unsigned mo = 0, d = 0, h = 0, mi = 0, s = 0;
    if (!parse_fixed(text.substr(0, 4), y) || !parse_fixed(text.substr(5, 2), mo) ||
        !parse_fixed(text.substr(8, 2), d) || !parse_fixed(text.substr(11, 2), h) ||
        !parse_fixed(text.substr(14, 2), mi) || !parse_fixed(text.substr(17, 2), s)) {
        return std::nullopt;
    }
    using namespace std::chrono;
    const year_month_day date{year{y}, month{mo}, day{d}};
    if (!date.ok() || h > 23 || mi > 59 || s > 59) return std::nullopt;
    return sys_days{date} + hours{h} + minutes{mi} + seconds{s};
}

std::string format_timestamp(Timestamp ts) {
    using namespace std::chrono;
    const auto day_start = floor<days>(ts);
    const year_month_day date{day_start};
    const hh_mm_ss clock{ts - day_start};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()),
                  static_cast<int>(clock.hours().count()), static_cast<int>(clock.minutes().count()),
                  static_cast<int>(clock.seconds().count()));
    return buf;
}

std::vector<TraceRecord> parse_trace(std::istream& in) {
    std::vector<TraceRecord> records;
    std::string raw;
    std::size_t line = 0;
    bool header_seen = false;

    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = trim(raw);
        if (!header_seen) {
            if (text != kHeader) {
                throw TraceParseError("line 1: expected header '" + std::string(kHeader) + "'", line);
            }
            header_seen = true;
            continue;
        }
        if (text.empty()) continue;

        const auto c1 = text.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
        if (c2 == std::string_view::npos || text.find(',', c2 + 1) != std::string_view::npos) {
            throw TraceParseError("line " + std::to_string(line) + ": expected 3 fields", line);
        }
        const auto ts_text = trim(text.substr(0, c1));
        const auto ts = parse_timestamp(ts_text);
        if (!ts) {
            throw TraceParseError("line " + std::to_string(line) + ": bad timestamp '" + std::string(ts_text) + "'",
                                  line);
        }
        TraceRecord rec{*ts, parse_count(trim(text.substr(c1 + 1, c2 - c1 - 1)), "seeders", line),
                        parse_count(trim(text.substr(c2 + 1)), "leechers", line)};
        if (!records.empty() && rec.timestamp <= records.back().timestamp) {
            throw TraceOrderError("line " + std::to_string(line) + ": timestamp " + format_timestamp(rec.timestamp) +
                                      " does not follow " + format_timestamp(records.back().timestamp),
                                  line);
        }
        records.push_back(rec);
    }
    if (!header_seen) throw TraceParseError("empty input: missing header", 0);
    return records;
}

std::vector<TraceRecord> parse_trace(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_trace(in);
}

void render_trace(std::ostream& out, std::span<const TraceRecord> records) {
    out << kHeader << '\n';
    for (const auto& r : records) out << format_timestamp(r.timestamp) << ',' << r.seeders << ',' << r.leechers << '\n';
}

std::string render_trace(std::span<const TraceRecord> records) {
    std::ostringstream out;
    render_trace(out, records);
    return out.str();
}

SwarmSummary summarize(std::span<const TraceRecord> records, std::optional<Timestamp> formation_time) {
    if (records.empty()) throw DomainError("cannot summarize an empty trace");
    if (formation_time && *formation_time > records.front().timestamp) {
        throw InvalidParameter("formation time " + format_timestamp(*formation_time) + " is after the first record");
    }

    SwarmSummary out;
    out.first = records.front();
    out.last = records.back();
    out.peak_seeders = {records.front().timestamp, records.front().seeders};
    out.peak_leechers = {records.front().timestamp, records.front().leechers};
    for (const auto& r : records) {
        // Strict comparison keeps the earliest record on ties.
        if (r.seeders > out.peak_seeders.count) out.peak_seeders = {r.timestamp, r.seeders};
        if (r.leechers > out.peak_leechers.count) out.peak_leechers = {r.timestamp, r.leechers};
    }

    auto ratio = [](std::int64_t last, std::int64_t peak) {
        return peak == 0 ? 1.0 : static_cast<double>(last) / static_cast<double>(peak);
    };
    out.seeder_decay_ratio = ratio(out.last.seeders, out.peak_seeders.count);
    out.leecher_decay_ratio = ratio(out.last.leechers, out.peak_leechers.count);

    if (formation_time) {
        const auto elapsed = out.peak_seeders.timestamp - *formation_time;
        out.hours_to_peak = static_cast<double>(elapsed.count()) / 3600.0;
    }
    return out;
}

SwarmComparison compare_swarms(const TraceRecord& a, const TraceRecord& b) {
    if (b.leechers <= 0 || b.seeders <= 0) throw DomainError("reference observation needs positive counts");
    return {static_cast<double>(a.leechers) / static_cast<double>(b.leechers),
            static_cast<double>(a.seeders) / static_cast<double>(b.seeders)};
}

std::string summary_to_json(const SwarmSummary& summary) {
    nlohmann::json doc = {
        {"peak_seeders_time", format_timestamp(summary.peak_seeders.timestamp)},
        {"peak_seeders", summary.peak_seeders.count},
        {"peak_leechers_time", format_timestamp(summary.peak_leechers.timestamp)},
        {"peak_leechers", summary.peak_leechers.count},
        {"first_time", format_timestamp(summary.first.timestamp)},
        {"first_seeders", summary.first.seeders},
        {"first_leechers", summary.first.leechers},
        {"last_time", format_timestamp(summary.last.timestamp)},
        {"last_seeders", summary.last.seeders},
        {"last_leechers", summary.last.leechers},
        {"seeder_decay_ratio", summary.seeder_decay_ratio},
        {"leecher_decay_ratio", summary.leecher_decay_ratio},
    };
    if (summary.hours_to_peak) doc["hours_to_peak"] = *summary.hours_to_peak;
    return doc.dump();
}

}  // namespace swarmlab
