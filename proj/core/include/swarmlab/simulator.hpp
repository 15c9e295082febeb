#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "swarmlab/params.hpp"
#include "swarmlab/stats.hpp"

namespace swarmlab {

enum class ServiceDistribution { deterministic, exponential };

struct SimConfig {
    std::uint64_t seed = 0;
    std::size_t replications = 1;
    ServiceDistribution service = ServiceDistribution::exponential;
    bool record_events = false;
    std::size_t max_events_per_period = 10'000'000;
    // Worker threads for independent replications. Results do not depend on it.
    unsigned threads = 1;
};

void validate(const SimConfig& config);

enum class EventKind { publisher_arrival, peer_arrival, holder_departure, content_lost, peer_rejected };

std::string_view to_string(EventKind kind) noexcept;

struct SimEvent {
    double time = 0.0;
    EventKind kind = EventKind::publisher_arrival;
    std::size_t holders_after = 0;

    friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct BusyPeriodStats {
    // Periods simulated (always config.replications).
    std::size_t n = 0;
    // Moments over the n - truncated_count periods that ended naturally.
    double mean = 0.0;
    double variance = 0.0;
    double ci_half_width_95 = 0.0;
    std::size_t truncated_count = 0;

    std::size_t used() const noexcept { return n - truncated_count; }
    double standard_error() const noexcept;
    Interval ci95() const noexcept { return {mean - ci_half_width_95, mean + ci_half_width_95}; }

    friend bool operator==(const BusyPeriodStats&, const BusyPeriodStats&) = default;
};

struct BusyPeriodRun {
    BusyPeriodStats stats;
    // One entry per replication, in replication order.
    std::vector<double> durations;
    std::vector<bool> truncated;
    // Filled only when config.record_events; one trace per replication.
    std::vector<std::vector<SimEvent>> traces;
};

// Simulates config.replications independent busy periods of the swarm. Each
// starts with a publisher arriving into an idle system; while any holder is
// online, publishers (rate r) and peers (rate lambda) join and each stays for
// an i.i.d. residence time of mean s/mu; the period ends when the last holder
// leaves. Replication i draws from stream_seed(config.seed, i).
BusyPeriodRun run_busy_periods(const SwarmParams& params, const SimConfig& config);

// CSV with header `period,seq,time,kind,holders_after`, times with 9 significant digits.
void write_event_csv(std::ostream& out, const std::vector<std::vector<SimEvent>>& traces);

struct RateSegment {
    double duration = 0.0;
    double publisher_rate = 0.0;
    double peer_rate = 0.0;
};

struct ArrivalProfile {
    enum class Mode { constant, piecewise };

    Mode mode = Mode::constant;
    std::vector<RateSegment> segments;

    // One unbounded segment; duration is ignored.
    static ArrivalProfile constant(double publisher_rate, double peer_rate);
    static ArrivalProfile piecewise(std::vector<RateSegment> segments);
};

void validate(const ArrivalProfile& profile);

struct ProfileSample {
    double time = 0.0;
    std::size_t holders = 0;
    std::size_t cumulative_rejected = 0;

    friend bool operator==(const ProfileSample&, const ProfileSample&) = default;
};

struct ProfileRun {
    // Holder count at t = 0, dt, 2dt, ... <= horizon after all events at or before t.
    std::vector<ProfileSample> samples;
    // Busy periods that both started and ended inside [0, horizon].
    std::vector<double> busy_durations;
    // Time with at least one holder online, including a period cut by the horizon.
    double busy_time = 0.0;
    std::size_t rejected = 0;
    std::size_t max_holders = 0;
    double max_holders_time = 0.0;
    std::vector<SimEvent> events;

    double busy_fraction(double horizon) const noexcept { return busy_time / horizon; }
};

// Simulates one swarm over [0, horizon] starting empty, with arrival rates
// taken from the profile (params supplies only s and mu). Rates are piecewise
// constant; at every segment boundary the pending arrival clocks are redrawn
// at the new rates, which is exact because the clocks are memoryless. Peers
// arriving while no holder is online are rejected and counted. Uses a single
// stream seeded from config.seed; config.replications is ignored.
ProfileRun run_profile_sim(const SwarmParams& params, const ArrivalProfile& profile, double horizon,
                           const SimConfig& config, double sample_interval);

struct BundleComparison {
    double b_single_2s = 0.0;
    double b_two_of_s_sum = 0.0;
    double ratio = 0.0;
    // Delta-method 95% half-width of ratio.
    double ratio_ci_half_width_95 = 0.0;
    BusyPeriodStats double_size;
    BusyPeriodStats first_single;
    BusyPeriodStats second_single;
};

// Simulates one swarm of size 2s and two independent swarms of size s.
BundleComparison compare_bundle(const SwarmParams& params, const SimConfig& config);

}  // namespace swarmlab
