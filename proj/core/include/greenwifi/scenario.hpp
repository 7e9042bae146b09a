#pragma once

#include <cstdint>
#include <vector>

#include "greenwifi/deployment.hpp"
#include "greenwifi/radio.hpp"

namespace greenwifi {

struct ScenarioConfig {
    double area_m = 100.0;
    double ap_height_m = 3.0;
    double client_height_m = 1.0;
    int n_clients = 10;
    int placement_restarts = 20;
    std::uint64_t placement_seed = 7;  // AP layout is a fixed arrangement, not per-run noise
};

/// The quantity place_aps maximizes: the smaller of the minimal pairwise
/// AP distance and twice the minimal wall distance (equal-circle-packing
/// convention, so both terms share a scale).
double placement_objective(const std::vector<Vec3>& aps, double area_m);

/// Spreads k APs over the square by multi-start annealed local search on
/// placement_objective. Deterministic for fixed (k, seed, restarts).
/// k = 1 is the exact center.
std::vector<Vec3> place_aps(int k, double area_m, std::uint64_t seed, int restarts = 20,
                            double height_m = 3.0);

/// n i.i.d. uniform client positions over the square at the given height.
std::vector<Vec3> place_clients(int n, double area_m, std::uint64_t seed, double height_m = 1.0);

/// Strongest-AP association: each client links to the AP with minimal
/// pathloss (3D distance); ties go to the lowest AP index. Returns one
/// (ap, client) pair per client, ordered by client index.
std::vector<std::pair<int, int>> associate(const std::vector<Vec3>& aps,
                                           const std::vector<Vec3>& clients);

/// Full deployment for k APs and the configured number of clients; client
/// positions vary with `client_seed`, the AP layout only with the scenario's
/// placement seed.
Deployment make_deployment(int k_aps, const ScenarioConfig& scenario, std::uint64_t client_seed);

}  // namespace greenwifi
