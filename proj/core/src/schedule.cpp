#include "swarmlab/schedule.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "swarmlab/errors.hpp"

namespace swarmlab {

ExchangeSchedule build_schedule(int n, int free_riders) {
    if (n < 1) throw InvalidParameter("need at least one cooperating leecher");
    if (free_riders < 0) throw InvalidParameter("free-rider count must be nonnegative");
    if (free_riders > n) {
        throw InvalidParameter("at most n free-riders can be served by n leechers donating one copy each");
    }

    ExchangeSchedule schedule{n, free_riders, {}};
    auto& out = schedule.transfers;
    out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n + free_riders));

    for (int k = 1; k <= n; ++k) out.push_back({1, 0, k, k});

    for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= n; ++j) {
            if (j != k) out.push_back({2, k, j, k});
        }
    }

    // Round-robin over (free-rider, chunk) pairs; pair p goes to leecher p mod n + 1.
    int pair = 0;
    for (int f = 1; f <= free_riders; ++f) {
        for (int chunk = 1; chunk <= n; ++chunk, ++pair) {
            out.push_back({3, pair % n + 1, n + f, chunk});
        }
    }
    return schedule;
}

bool ScheduleReport::all_complete() const noexcept {
    return std::all_of(complete.begin(), complete.end(), [](bool c) { return c; });
}

ScheduleReport verify_schedule(const ExchangeSchedule& schedule) {
    const int n = schedule.n;
    if (n < 1) throw InvalidParameter("schedule has no leechers");
    if (schedule.free_riders < 0) throw InvalidParameter("schedule has a negative free-rider count");
    const int nodes = schedule.node_count();

    // held_since[node][chunk] = round in which the chunk arrived; 0 = initially held.
    constexpr int kNotHeld = -1;
    std::vector<std::vector<int>> held_since(nodes, std::vector<int>(n + 1, kNotHeld));
    std::fill(held_since[0].begin() + 1, held_since[0].end(), 0);

    std::vector<std::int64_t> sent(nodes, 0);
    std::vector<std::int64_t> received(nodes, 0);

    int last_round = 0;
    for (std::size_t i = 0; i < schedule.transfers.size(); ++i) {
        const auto& t = schedule.transfers[i];
        auto describe = [&] {
            std::ostringstream msg;
            msg << "transfer #" << i << " (round " << t.round << ", " << t.sender << " -> " << t.receiver
                << ", chunk " << t.chunk << ")";
            return msg.str();
        };
        if (t.round < 1 || t.round < last_round) throw InvalidParameter(describe() + ": rounds must be >= 1 and nondecreasing");
        if (t.sender < 0 || t.sender >= nodes || t.receiver < 0 || t.receiver >= nodes) {
            throw InvalidParameter(describe() + ": node id out of range");
        }
        if (t.sender == t.receiver) throw InvalidParameter(describe() + ": sender equals receiver");
        if (t.chunk < 1 || t.chunk > n) throw InvalidParameter(describe() + ": chunk index out of range");
        last_round = t.round;

        const int since = held_since[t.sender][t.chunk];
        if (since == kNotHeld || since >= t.round) {
            throw CausalityViolation(describe() + ": sender does not hold the chunk before this round", i);
        }
        auto& dest = held_since[t.receiver][t.chunk];
        if (dest == kNotHeld) dest = t.round;
        ++sent[t.sender];
        ++received[t.receiver];
    }

    ScheduleReport report;
    report.uploads.reserve(nodes);
    report.downloads.reserve(nodes);
    report.complete.reserve(nodes);
    for (int v = 0; v < nodes; ++v) {
        report.uploads.emplace_back(sent[v], n);
        report.downloads.emplace_back(received[v], n);
        const auto& h = held_since[v];
        report.complete.push_back(std::all_of(h.begin() + 1, h.end(), [](int r) { return r != kNotHeld; }));
    }
    report.seeder_upload = report.uploads[0];
    for (int v = 1; v <= n; ++v) report.max_leecher_upload = std::max(report.max_leecher_upload, report.uploads[v]);
    for (int v = n + 1; v < nodes; ++v) {
        report.max_free_rider_upload = std::max(report.max_free_rider_upload, report.uploads[v]);
    }
    report.meets_toy_budget = schedule.free_riders == 0 && report.seeder_upload == Rational(1) &&
                              report.max_leecher_upload == Rational(n - 1, n);
    return report;
}

void write_schedule_csv(std::ostream& out, const ExchangeSchedule& schedule) {
    out << "round,sender,receiver,chunk\n";
    for (const auto& t : schedule.transfers) {
        out << t.round << ',' << t.sender << ',' << t.receiver << ',' << t.chunk << '\n';
    }
}

std::string report_to_json(const ExchangeSchedule& schedule, const ScheduleReport& report) {
    using nlohmann::json;
    auto exact = [](const std::vector<Rational>& values) {
        json arr = json::array();
        for (const auto& v : values) arr.push_back(v.to_string());
        return arr;
    };
    auto approx = [](const std::vector<Rational>& values) {
        json arr = json::array();
        for (const auto& v : values) arr.push_back(v.to_double());
        return arr;
    };
    json roles = json::array();
    for (int v = 0; v < schedule.node_count(); ++v) {
        roles.push_back(v == 0 ? "seeder" : v <= schedule.n ? "leecher" : "free_rider");
    }
    json doc = {
        {"n", schedule.n},
        {"free_riders", schedule.free_riders},
        {"transfers", schedule.transfers.size()},
        {"role", roles},
        {"upload", approx(report.uploads)},
        {"upload_exact", exact(report.uploads)},
        {"download", approx(report.downloads)},
        {"download_exact", exact(report.downloads)},
        {"complete", report.complete},
        {"seeder_upload", report.seeder_upload.to_double()},
        {"max_leecher_upload", report.max_leecher_upload.to_double()},
        {"max_leecher_upload_exact", report.max_leecher_upload.to_string()},
        {"max_free_rider_upload", report.max_free_rider_upload.to_double()},
        {"all_complete", report.all_complete()},
        {"meets_toy_budget", report.meets_toy_budget},
    };
    return doc.dump();
}

}  // namespace swarmlab
