#include "greenwifi/mcs.hpp"

#include <algorithm>
#include <stdexcept>

#include "greenwifi/radio.hpp"

namespace greenwifi {

McsTable::McsTable(std::vector<McsStep> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) throw std::invalid_argument("mcs: table must have at least one step");
    double prev_thr = 0.0;
    double prev_rate = 0.0;
    for (const McsStep& s : steps_) {
        if (!(s.sinr_threshold > prev_thr))
            throw std::invalid_argument("mcs: thresholds must be positive and strictly increasing");
        if (!(s.rate_mbps > prev_rate))
            throw std::invalid_argument("mcs: rates must be positive and strictly increasing");
        prev_thr = s.sinr_threshold;
        prev_rate = s.rate_mbps;
    }
}

double McsTable::rate_for_sinr(double gamma) const {
    double rate = 0.0;
    for (const McsStep& s : steps_) {
        if (gamma >= s.sinr_threshold)
            rate = s.rate_mbps;
        else
            break;
    }
    return rate;
}

double McsTable::min_sinr_for_rate(double rate_mbps) const {
    if (rate_mbps == 0.0) return 0.0;
    for (const McsStep& s : steps_)
        if (s.rate_mbps == rate_mbps) return s.sinr_threshold;
    throw std::domain_error("mcs: rate is not in the table");
}

double McsTable::rate_at(int ladder_index) const {
    if (ladder_index == 0) return 0.0;
    if (ladder_index < 0 || ladder_index > size())
        throw std::domain_error("mcs: ladder index out of range");
    return steps_[static_cast<std::size_t>(ladder_index - 1)].rate_mbps;
}

McsTable mcs_table_from_db_pairs(const std::vector<std::pair<double, double>>& pairs) {
    std::vector<McsStep> steps;
    steps.reserve(pairs.size());
    for (const auto& [thr_db, rate] : pairs) steps.push_back({db_to_linear(thr_db), rate});
    return McsTable(std::move(steps));
}

const McsTable& default_mcs_table() {
    static const McsTable table = mcs_table_from_db_pairs({
        {2.0, 29.3},    // MCS0  BPSK 1/2
        {5.0, 58.5},    // MCS1  QPSK 1/2
        {9.0, 87.8},    // MCS2  QPSK 3/4
        {11.0, 117.0},  // MCS3  16-QAM 1/2
        {15.0, 175.5},  // MCS4  16-QAM 3/4
        {18.0, 234.0},  // MCS5  64-QAM 2/3
        {20.0, 263.3},  // MCS6  64-QAM 3/4
        {25.0, 292.5},  // MCS7  64-QAM 5/6
        {29.0, 351.0},  // MCS8  256-QAM 3/4
        {31.0, 390.0},  // MCS9  256-QAM 5/6
    });
    return table;
}

}  // namespace greenwifi
