#include "greenwifi/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "greenwifi/rng.hpp"

namespace greenwifi {

namespace {

double wall_distance(const Vec3& p, double area) {
    return std::min(std::min(p.x, area - p.x), std::min(p.y, area - p.y));
}

}  // namespace

double placement_objective(const std::vector<Vec3>& aps, double area_m) {
    double obj = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < aps.size(); ++i) {
        obj = std::min(obj, 2.0 * wall_distance(aps[i], area_m));
        for (std::size_t j = i + 1; j < aps.size(); ++j)
            obj = std::min(obj, distance(aps[i], aps[j]));
    }
    return obj;
}

std::vector<Vec3> place_aps(int k, double area_m, std::uint64_t seed, int restarts,
                            double height_m) {
    if (k < 1) throw std::invalid_argument("place_aps: k must be >= 1");
    if (restarts < 1) throw std::invalid_argument("place_aps: restarts must be >= 1");
    if (k == 1) return {Vec3{area_m / 2.0, area_m / 2.0, height_m}};

    constexpr int kMovesPerPoint = 40;
    constexpr double kMinRadius = 1e-3;
    constexpr double kAnneal = 0.7;

    std::vector<Vec3> best;
    double best_obj = -1.0;

    for (int restart = 0; restart < restarts; ++restart) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
        std::vector<Vec3> pts(static_cast<std::size_t>(k));
        for (Vec3& p : pts) {
            p.x = uniform_in(rng, 0.0, area_m);
            p.y = uniform_in(rng, 0.0, area_m);
            p.z = height_m;
        }
        double obj = placement_objective(pts, area_m);

        for (double radius = area_m / 2.0; radius > kMinRadius; radius *= kAnneal) {
            bool improved = true;
            while (improved) {
                improved = false;
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    for (int t = 0; t < kMovesPerPoint; ++t) {
                        const double angle = uniform_in(rng, 0.0, 2.0 * M_PI);
                        const double step = radius * uniform_double(rng);
                        Vec3 cand = pts[i];
                        cand.x = std::clamp(cand.x + step * std::cos(angle), 0.0, area_m);
                        cand.y = std::clamp(cand.y + step * std::sin(angle), 0.0, area_m);
                        const Vec3 old = pts[i];
                        pts[i] = cand;
                        const double cand_obj = placement_objective(pts, area_m);
                        if (cand_obj > obj) {
                            obj = cand_obj;
                            improved = true;
                        } else {
                            pts[i] = old;
                        }
                    }
                }
            }
        }
        if (obj > best_obj) {
            best_obj = obj;
            best = pts;
        }
    }
    return best;
}

std::vector<Vec3> place_clients(int n, double area_m, std::uint64_t seed, double height_m) {
    if (n < 1) throw std::invalid_argument("place_clients: n must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<Vec3> pts(static_cast<std::size_t>(n));
    for (Vec3& p : pts) {
        p.x = uniform_in(rng, 0.0, area_m);
        p.y = uniform_in(rng, 0.0, area_m);
        p.z = height_m;
    }
    return pts;
}

std::vector<std::pair<int, int>> associate(const std::vector<Vec3>& aps,
                                           const std::vector<Vec3>& clients) {
    if (aps.empty() || clients.empty()) throw std::invalid_argument("associate: empty input");
    std::vector<std::pair<int, int>> links;
    links.reserve(clients.size());
    for (std::size_t c = 0; c < clients.size(); ++c) {
        int best_ap = 0;
        double best_d = distance(aps[0], clients[c]);
        for (std::size_t a = 1; a < aps.size(); ++a) {
            const double d = distance(aps[a], clients[c]);
            if (d < best_d) {  // strict: ties keep the lowest AP index
                best_d = d;
                best_ap = static_cast<int>(a);
            }
        }
        links.emplace_back(best_ap, static_cast<int>(c));
    }
    return links;
}

Deployment make_deployment(int k_aps, const ScenarioConfig& scenario, std::uint64_t client_seed) {
    Deployment d;
    d.area_size = scenario.area_m;
    d.ap_positions = place_aps(k_aps, scenario.area_m, scenario.placement_seed,
                               scenario.placement_restarts, scenario.ap_height_m);
    d.client_positions =
        place_clients(scenario.n_clients, scenario.area_m, client_seed, scenario.client_height_m);
    d.links = associate(d.ap_positions, d.client_positions);
    d.validate();
    return d;
}

}  // namespace greenwifi
