#pragma once

#include <string>
#include <utility>
#include <vector>

#include "greenwifi/geometry.hpp"

namespace greenwifi {

/// A downlink deployment: AP and client positions in a square area plus the
/// link association. There is exactly one link per client; link i names its
/// transmitter (an AP) and its receiver (a client). Several links may share
/// one AP radio.
struct Deployment {
    double area_size = 100.0;            // square side, meters
    std::vector<Vec3> ap_positions;      // transmitters
    std::vector<Vec3> client_positions;  // receivers
    std::vector<std::pair<int, int>> links;  // (ap index, client index), one per client

    int n_links() const { return static_cast<int>(links.size()); }

    /// Throws std::invalid_argument on any violated invariant: bad indices,
    /// a client outside [0, area]^2, non-positive height, or a client that is
    /// not covered by exactly one link.
    void validate() const;
};

/// Transmitter index per link; the solver needs this to forbid two
/// simultaneously active links on one AP radio.
struct LinkTopology {
    std::vector<int> tx_ap;  // tx_ap[i] = AP index of link i

    int n_links() const { return static_cast<int>(tx_ap.size()); }
    bool shares_transmitter(int i, int j) const { return tx_ap[i] == tx_ap[j]; }
};

LinkTopology topology_of(const Deployment& d);

/// TOML round trip. Coordinates are written with 6 decimal places.
std::string deployment_to_toml(const Deployment& d);
Deployment deployment_from_toml(const std::string& text);
void save_deployment(const Deployment& d, const std::string& path);
Deployment load_deployment(const std::string& path);

}  // namespace greenwifi
