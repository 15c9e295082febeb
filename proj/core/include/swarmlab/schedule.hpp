#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "swarmlab/rational.hpp"

namespace swarmlab {

// Node ids: 0 is the seeder, 1..n the cooperating leechers,
// n+1..n+free_riders the free-riders. Chunks are numbered 1..n, each 1/n of the file.
struct Transfer {
    int round = 0;
    int sender = 0;
    int receiver = 0;
    int chunk = 0;

    friend bool operator==(const Transfer&, const Transfer&) = default;
};

struct ExchangeSchedule {
    int n = 0;
    int free_riders = 0;
    std::vector<Transfer> transfers;

    int chunks() const noexcept { return n; }
    int node_count() const noexcept { return 1 + n + free_riders; }
    Rational chunk_fraction() const { return {1, n}; }
};

// Round 1: the seeder sends chunk k to leecher k.
// Round 2: every leecher passes its chunk to the other n - 1 leechers.
// Round 3 (free_riders > 0 only): every (free-rider, chunk) pair is served by
// the leechers in round-robin order, so uploads stay balanced.
// Throws InvalidParameter for n < 1, free_riders < 0 or free_riders > n.
ExchangeSchedule build_schedule(int n, int free_riders = 0);

struct ScheduleReport {
    // Indexed by node id, in copy-equivalents.
    std::vector<Rational> uploads;
    std::vector<Rational> downloads;
    std::vector<bool> complete;
    Rational seeder_upload;
    Rational max_leecher_upload;
    Rational max_free_rider_upload;
    // free_riders == 0, seeder sent exactly one copy and the busiest leecher (n-1)/n.
    bool meets_toy_budget = false;

    bool all_complete() const noexcept;
};

// Replays transfers round by round. A chunk received in round t can be sent
// from round t + 1 on. Throws CausalityViolation naming the first transfer
// whose sender does not hold the chunk, InvalidParameter for malformed entries.
// Incomplete nodes are reported, not treated as errors.
ScheduleReport verify_schedule(const ExchangeSchedule& schedule);

// CSV with header `round,sender,receiver,chunk`.
void write_schedule_csv(std::ostream& out, const ExchangeSchedule& schedule);

// JSON object with per-node arrays.
std::string report_to_json(const ExchangeSchedule& schedule, const ScheduleReport& report);

}  // namespace swarmlab
