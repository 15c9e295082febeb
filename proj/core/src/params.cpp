#include "swarmlab/params.hpp"

#include <cmath>
#include <string>

#include "swarmlab/errors.hpp"

namespace swarmlab {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidParameter(what);
}

}  // namespace

void validate(const SwarmParams& params) {
    require(std::isfinite(params.file_size) && params.file_size > 0.0, "file size s must be positive and finite");
    require(std::isfinite(params.download_rate) && params.download_rate > 0.0,
            "download rate mu must be positive and finite");
    require(std::isfinite(params.publisher_rate) && params.publisher_rate > 0.0,
            "publisher rate r must be positive and finite");
    require(std::isfinite(params.peer_rate) && params.peer_rate >= 0.0, "peer rate lambda must be >= 0 and finite");
    const double x = params.load();
    require(std::isfinite(x) && x > 0.0, "load s(r+lambda)/mu must be finite and positive");
}

}  // namespace swarmlab
