#include "swarmlab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <queue>
#include <thread>

#include "swarmlab/errors.hpp"
#include "swarmlab/rng.hpp"

namespace swarmlab {

namespace {

constexpr double kNever = std::numeric_limits<double>::infinity();

// Pending occurrence; ties in time resolve by scheduling order.
struct Pending {
    double time = kNever;
    std::uint64_t seq = 0;

    bool before(const Pending& other) const noexcept {
        return time < other.time || (time == other.time && seq < other.seq);
    }
};

struct LaterFirst {
    bool operator()(const Pending& a, const Pending& b) const noexcept { return b.before(a); }
};

using DepartureQueue = std::priority_queue<Pending, std::vector<Pending>, LaterFirst>;

class ResidenceSampler {
public:
    ResidenceSampler(const SwarmParams& params, ServiceDistribution service)
        : mean_(params.residence_mean()), service_(service) {}

    double draw(Rng& rng) const noexcept {
        return service_ == ServiceDistribution::deterministic ? mean_ : rng.exponential(1.0 / mean_);
    }

private:
    double mean_;
    ServiceDistribution service_;
};

struct PeriodOutcome {
    double duration = 0.0;
    bool truncated = false;
};

PeriodOutcome simulate_period(const SwarmParams& params, const SimConfig& config, std::uint64_t seed,
                              std::vector<SimEvent>* events) {
    Rng rng(seed);
    const ResidenceSampler residence(params, config.service);
    std::uint64_t seq = 0;
    DepartureQueue departures;

    auto log = [&](double t, EventKind kind, std::size_t holders) {
        if (events != nullptr) events->push_back({t, kind, holders});
    };

    // The initiating publisher.
    std::size_t holders = 1;
    log(0.0, EventKind::publisher_arrival, holders);
    departures.push({residence.draw(rng), seq++});

    Pending next_publisher{rng.exponential(params.publisher_rate), seq++};
    Pending next_peer{params.peer_rate > 0.0 ? rng.exponential(params.peer_rate) : kNever, seq++};

    std::size_t processed = 1;
    double now = 0.0;
    while (true) {
        if (processed >= config.max_events_per_period) return {now, true};
        ++processed;

        const Pending& dep = departures.top();
        if (dep.before(next_publisher) && dep.before(next_peer)) {
            now = dep.time;
            departures.pop();
            --holders;
            if (holders == 0) {
                log(now, EventKind::content_lost, 0);
                return {now, false};
            }
            log(now, EventKind::holder_departure, holders);
        } else if (next_publisher.before(next_peer)) {
            now = next_publisher.time;
            ++holders;
            log(now, EventKind::publisher_arrival, holders);
            departures.push({now + residence.draw(rng), seq++});
            next_publisher = {now + rng.exponential(params.publisher_rate), seq++};
        } else {
            now = next_peer.time;
            ++holders;
            log(now, EventKind::peer_arrival, holders);
            departures.push({now + residence.draw(rng), seq++});
            next_peer = {now + rng.exponential(params.peer_rate), seq++};
        }
    }
}

void format_time(std::ostream& out, double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    out << buf;
}

}  // namespace

std::string_view to_string(EventKind kind) noexcept {
    switch (kind) {
        case EventKind::publisher_arrival: return "publisher_arrival";
        case EventKind::peer_arrival: return "peer_arrival";
        case EventKind::holder_departure: return "holder_departure";
        case EventKind::content_lost: return "content_lost";
        case EventKind::peer_rejected: return "peer_rejected";
    }
    return "unknown";
}

void validate(const SimConfig& config) {
    if (config.replications < 1) throw InvalidParameter("replications must be >= 1");
    if (config.max_events_per_period < 2) throw InvalidParameter("max_events_per_period must be >= 2");
    if (config.threads < 1) throw InvalidParameter("threads must be >= 1");
}

double BusyPeriodStats::standard_error() const noexcept {
    const auto m = used();
    return m == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(m));
}

BusyPeriodRun run_busy_periods(const SwarmParams& params, const SimConfig& config) {
    validate(params);
    validate(config);

    const std::size_t reps = config.replications;
    BusyPeriodRun run;
    run.durations.assign(reps, 0.0);
    std::vector<char> truncated(reps, 0);
    if (config.record_events) run.traces.resize(reps);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto* trace = config.record_events ? &run.traces[i] : nullptr;
            const auto outcome = simulate_period(params, config, stream_seed(config.seed, i), trace);
            run.durations[i] = outcome.duration;
            truncated[i] = outcome.truncated ? 1 : 0;
        }
    };

    const std::size_t workers = std::min<std::size_t>(config.threads, reps);
    if (workers <= 1) {
        work(0, reps);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t block = (reps + workers - 1) / workers;
        for (std::size_t begin = 0; begin < reps; begin += block) {
            pool.emplace_back(work, begin, std::min(reps, begin + block));
        }
    }

    RunningStats acc;
    run.truncated.resize(reps);
    for (std::size_t i = 0; i < reps; ++i) {
        run.truncated[i] = truncated[i] != 0;
        if (run.truncated[i]) {
            ++run.stats.truncated_count;
        } else {
            acc.add(run.durations[i]);
        }
    }
    if (acc.count() == 0) {
        throw SimulationError("every busy period hit max_events_per_period; raise the cap or lower the load");
    }
    run.stats.n = reps;
    run.stats.mean = acc.mean();
    run.stats.variance = acc.variance();
    run.stats.ci_half_width_95 = acc.ci_half_width_95();
    return run;
}

void write_event_csv(std::ostream& out, const std::vector<std::vector<SimEvent>>& traces) {
    out << "period,seq,time,kind,holders_after\n";
    for (std::size_t period = 0; period < traces.size(); ++period) {
        const auto& trace = traces[period];
        for (std::size_t seq = 0; seq < trace.size(); ++seq) {
            const auto& ev = trace[seq];
            out << period << ',' << seq << ',';
            format_time(out, ev.time);
            out << ',' << to_string(ev.kind) << ',' << ev.holders_after << '\n';
        }
    }
}

ArrivalProfile ArrivalProfile::constant(double publisher_rate, double peer_rate) {
    return {Mode::constant, {{kNever, publisher_rate, peer_rate}}};
}

ArrivalProfile ArrivalProfile::piecewise(std::vector<RateSegment> segments) {
    return {Mode::piecewise, std::move(segments)};
}

void validate(const ArrivalProfile& profile) {
    if (profile.segments.empty()) throw InvalidParameter("arrival profile needs at least one segment");
    if (profile.mode == ArrivalProfile::Mode::constant && profile.segments.size() != 1) {
        throw InvalidParameter("constant arrival profile has exactly one segment");
    }
    for (std::size_t i = 0; i < profile.segments.size(); ++i) {
        const auto& seg = profile.segments[i];
        const bool rates_ok = std::isfinite(seg.publisher_rate) && seg.publisher_rate >= 0.0 &&
                              std::isfinite(seg.peer_rate) && seg.peer_rate >= 0.0;
        if (!rates_ok) throw InvalidParameter("segment rates must be finite and nonnegative");
        const bool last = i + 1 == profile.segments.size();
        if (profile.mode == ArrivalProfile::Mode::piecewise && !last &&
            !(std::isfinite(seg.duration) && seg.duration > 0.0)) {
            throw InvalidParameter("piecewise segment durations must be positive and finite");
        }
    }
}

ProfileRun run_profile_sim(const SwarmParams& params, const ArrivalProfile& profile, double horizon,
                           const SimConfig& config, double sample_interval) {
    if (!(std::isfinite(params.file_size) && params.file_size > 0.0 && std::isfinite(params.download_rate) &&
          params.download_rate > 0.0)) {
        throw InvalidParameter("file size and download rate must be positive and finite");
    }
    validate(profile);
    if (!(std::isfinite(horizon) && horizon > 0.0)) throw InvalidParameter("horizon must be positive and finite");
    if (!(std::isfinite(sample_interval) && sample_interval > 0.0)) {
        throw InvalidParameter("sample interval must be positive and finite");
    }

    Rng rng(stream_seed(config.seed, 0));
    const ResidenceSampler residence(params, config.service);
    ProfileRun run;
    std::uint64_t seq = 0;
    DepartureQueue departures;
    std::size_t holders = 0;
    double busy_start = 0.0;

    auto log = [&](double t, EventKind kind) {
        if (config.record_events) run.events.push_back({t, kind, holders});
    };

    std::size_t segment = 0;
    double segment_end = 0.0;
    Pending next_publisher;
    Pending next_peer;
    auto enter_segment = [&](double now) {
        const auto& seg = profile.segments[segment];
        const bool last = segment + 1 == profile.segments.size();
        segment_end = last ? kNever : now + seg.duration;
        next_publisher = {seg.publisher_rate > 0.0 ? now + rng.exponential(seg.publisher_rate) : kNever, seq++};
        next_peer = {seg.peer_rate > 0.0 ? now + rng.exponential(seg.peer_rate) : kNever, seq++};
    };
    enter_segment(0.0);

    std::size_t next_sample = 0;
    auto emit_samples_before = [&](double t) {
        while (true) {
            const double st = static_cast<double>(next_sample) * sample_interval;
            if (st > horizon || st >= t) break;
            run.samples.push_back({st, holders, run.rejected});
            ++next_sample;
        }
    };

    auto arrive = [&](double now, EventKind kind) {
        if (holders == 0) busy_start = now;
        ++holders;
        log(now, kind);
        departures.push({now + residence.draw(rng), seq++});
        if (holders > run.max_holders) {
            run.max_holders = holders;
            run.max_holders_time = now;
        }
    };

    enum class Source { departure, publisher, peer };
    while (true) {
        Pending first = departures.empty() ? Pending{} : departures.top();
        Source source = Source::departure;
        if (next_publisher.before(first)) {
            first = next_publisher;
            source = Source::publisher;
        }
        if (next_peer.before(first)) {
            first = next_peer;
            source = Source::peer;
        }

        // Segment changes take effect before anything scheduled at the same instant.
        if (segment_end <= first.time && segment_end <= horizon) {
            emit_samples_before(segment_end);
            ++segment;
            enter_segment(segment_end);
            continue;
        }
        if (first.time > horizon) break;

        const double now = first.time;
        emit_samples_before(now);
        const auto& seg = profile.segments[segment];
        switch (source) {
            case Source::publisher:
                arrive(now, EventKind::publisher_arrival);
                next_publisher = {now + rng.exponential(seg.publisher_rate), seq++};
                break;
            case Source::peer:
                if (holders == 0) {
                    ++run.rejected;
                    log(now, EventKind::peer_rejected);
                } else {
                    arrive(now, EventKind::peer_arrival);
                }
                next_peer = {now + rng.exponential(seg.peer_rate), seq++};
                break;
            case Source::departure:
                departures.pop();
                --holders;
                if (holders == 0) {
                    run.busy_durations.push_back(now - busy_start);
                    run.busy_time += now - busy_start;
                    log(now, EventKind::content_lost);
                } else {
                    log(now, EventKind::holder_departure);
                }
                break;
        }
    }

    if (holders > 0) run.busy_time += horizon - busy_start;
    emit_samples_before(kNever);
    return run;
}

namespace {

constexpr std::uint64_t kDoubleSizeStream = 0x2d358dccaa6c78a5ULL;
constexpr std::uint64_t kFirstSingleStream = 0x8bb84b93962eacc9ULL;
constexpr std::uint64_t kSecondSingleStream = 0x4b33a62ed433d4a3ULL;

}  // namespace

BundleComparison compare_bundle(const SwarmParams& params, const SimConfig& config) {
    validate(params);
    validate(config);

    auto run_with = [&](double size, std::uint64_t stream) {
        SimConfig c = config;
        c.seed = mix64(config.seed ^ stream);
        c.record_events = false;
        return run_busy_periods(params.with_file_size(size), c).stats;
    };

    BundleComparison out;
    out.double_size = run_with(2.0 * params.file_size, kDoubleSizeStream);
    out.first_single = run_with(params.file_size, kFirstSingleStream);
    out.second_single = run_with(params.file_size, kSecondSingleStream);

    out.b_single_2s = out.double_size.mean;
    out.b_two_of_s_sum = out.first_single.mean + out.second_single.mean;
    out.ratio = out.b_single_2s / out.b_two_of_s_sum;

    const double se_num = out.double_size.standard_error();
    const double se_den = std::hypot(out.first_single.standard_error(), out.second_single.standard_error());
    const double rel = std::hypot(se_num / out.b_single_2s, se_den / out.b_two_of_s_sum);
    out.ratio_ci_half_width_95 = kZ95 * out.ratio * rel;
    return out;
}

}  // namespace swarmlab
