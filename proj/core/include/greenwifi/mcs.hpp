#pragma once

#include <utility>
#include <vector>

namespace greenwifi {

struct McsStep {
    double sinr_threshold;  // linear ratio, not dB
    double rate_mbps;
};

/// Nondecreasing, right-continuous step function from SINR to data rate.
/// Thresholds and rates are strictly increasing; an implicit (0, 0) step
/// sits below the first entry. A SINR exactly at a threshold earns that
/// step's rate.
class McsTable {
  public:
    /// Throws std::invalid_argument unless both coordinates are strictly
    /// increasing and positive.
    explicit McsTable(std::vector<McsStep> steps);

    /// Largest rate whose threshold is <= gamma; 0 below the first step.
    double rate_for_sinr(double gamma) const;

    /// Inverse restricted to table rates: the threshold paired with `rate`,
    /// or 0 for rate 0. Throws std::domain_error for any other rate.
    double min_sinr_for_rate(double rate_mbps) const;

    /// Rate of ladder index k, where 0 means "off" and k in [1, size()] is
    /// the k-th step.
    double rate_at(int ladder_index) const;

    int size() const { return static_cast<int>(steps_.size()); }
    const std::vector<McsStep>& steps() const { return steps_; }
    double top_rate() const { return steps_.back().rate_mbps; }

  private:
    std::vector<McsStep> steps_;
};

/// Builds a table from (threshold_db, rate_mbps) pairs as they appear in
/// config files; thresholds are converted to linear ratios.
McsTable mcs_table_from_db_pairs(const std::vector<std::pair<double, double>>& pairs);

/// Shipped default: IEEE 802.11ac single-stream 80 MHz (long GI) data rates
/// with SNR requirements taken from published planning tables. Both columns
/// are deployment-specific in reality; treat this as a starting point and
/// override it from the experiment config where needed.
const McsTable& default_mcs_table();

}  // namespace greenwifi
