#pragma once

namespace swarmlab {

// The swarm model quadruple.
//   file_size     s   data units
//   download_rate mu  data units per time unit, per peer
//   publisher_rate r  arrivals per time unit
//   peer_rate  lambda arrivals per time unit
struct SwarmParams {
    double file_size = 1.0;
    double download_rate = 1.0;
    double publisher_rate = 1.0;
    double peer_rate = 0.0;

    // r + lambda: the arrival rate seen while content is available.
    double total_rate() const noexcept { return publisher_rate + peer_rate; }

    // x = s (r + lambda) / mu.
    double load() const noexcept { return file_size * total_rate() / download_rate; }

    // Mean time a holder stays with the content, s / mu.
    double residence_mean() const noexcept { return file_size / download_rate; }

    SwarmParams with_file_size(double s) const noexcept {
        SwarmParams p = *this;
        p.file_size = s;
        return p;
    }

    friend bool operator==(const SwarmParams&, const SwarmParams&) = default;
};

// Throws InvalidParameter unless s > 0, mu > 0, r > 0, lambda >= 0, all finite,
// and the load is finite and positive.
void validate(const SwarmParams& params);

}  // namespace swarmlab
