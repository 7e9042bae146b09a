#include "greenwifi/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "greenwifi/rng.hpp"
#include "greenwifi/toml.hpp"

namespace greenwifi {

namespace {

std::vector<Vec3>& placement_cache(const ExperimentConfig& cfg, int k,
                                   std::map<int, std::vector<Vec3>>& cache, std::mutex& mutex) {
    std::scoped_lock lock(mutex);
    auto it = cache.find(k);
    if (it == cache.end()) {
        it = cache
                 .emplace(k, place_aps(k, cfg.scenario.area_m, cfg.scenario.placement_seed,
                                       cfg.scenario.placement_restarts, cfg.scenario.ap_height_m))
                 .first;
    }
    return it->second;
}

}  // namespace

const char* to_string(SolutionKind kind) {
    switch (kind) {
        case SolutionKind::legacy: return "legacy";
        case SolutionKind::sched: return "sched";
        case SolutionKind::powersched: return "powersched";
        case SolutionKind::ee: return "ee";
    }
    return "unknown";
}

SolutionKind solution_from_string(const std::string& name) {
    if (name == "legacy") return SolutionKind::legacy;
    if (name == "sched") return SolutionKind::sched;
    if (name == "powersched") return SolutionKind::powersched;
    if (name == "ee") return SolutionKind::ee;
    throw std::invalid_argument("unknown solution name: " + name +
                                " (expected legacy|sched|powersched|ee)");
}

void ExperimentConfig::validate() const {
    radio.validate();
    if (ap_counts.empty()) throw std::invalid_argument("config: ap_counts must be nonempty");
    if (seeds.empty()) throw std::invalid_argument("config: seeds must be nonempty");
    if (solutions.empty()) throw std::invalid_argument("config: solutions must be nonempty");
    if (scenario.n_clients < 1) throw std::invalid_argument("config: n_clients must be >= 1");
    if (total_slots < scenario.n_clients)
        throw std::invalid_argument("config: total_slots must be >= n_clients (warm-up)");
    if (!(slot_duration > 0.0)) throw std::invalid_argument("config: slot_duration must be positive");
    if (!(alpha >= 0.0)) throw std::invalid_argument("config: alpha must be >= 0");
    for (int k : ap_counts)
        if (k < 1) throw std::invalid_argument("config: ap_counts entries must be >= 1");
}

ExperimentConfig load_experiment_config(const std::string& path) {
    const toml::Document doc = toml::parse_file(path);
    ExperimentConfig cfg;

    if (const toml::Table* radio = doc.find_section("radio")) {
        cfg.radio.carrier_freq_ghz = radio->get_double("carrier_freq_ghz", cfg.radio.carrier_freq_ghz);
        if (radio->contains("channel_width_mhz"))
            cfg.radio.channel_width_hz = radio->at("channel_width_mhz").as_double() * 1e6;
        cfg.radio.noise_psd_dbm_hz = radio->get_double("noise_psd_dbm_hz", cfg.radio.noise_psd_dbm_hz);
        cfg.radio.amplifier_noise_db = radio->get_double("amplifier_noise_db", cfg.radio.amplifier_noise_db);
        cfg.radio.max_power_mw = radio->get_double("max_power_mw", cfg.radio.max_power_mw);
        cfg.radio.circuit_power_mw = radio->get_double("circuit_power_mw", cfg.radio.circuit_power_mw);
        cfg.radio.sense_threshold_dbm = radio->get_double("sense_threshold_dbm", cfg.radio.sense_threshold_dbm);
    }
    if (const toml::Table* exp = doc.find_section("experiment")) {
        cfg.alpha = exp->get_double("alpha", cfg.alpha);
        if (exp->contains("ap_counts")) {
            cfg.ap_counts.clear();
            for (const toml::Value& v : exp->at("ap_counts").as_array())
                cfg.ap_counts.push_back(static_cast<int>(v.as_int()));
        }
        if (exp->contains("seeds")) {
            cfg.seeds.clear();
            for (const toml::Value& v : exp->at("seeds").as_array())
                cfg.seeds.push_back(static_cast<std::uint64_t>(v.as_int()));
        }
        if (exp->contains("solutions")) {
            cfg.solutions.clear();
            for (const toml::Value& v : exp->at("solutions").as_array())
                cfg.solutions.push_back(solution_from_string(v.as_string()));
        }
        cfg.total_slots = exp->get_int("total_slots", cfg.total_slots);
        cfg.slot_duration = exp->get_double("slot_duration_s", cfg.slot_duration);
        cfg.output_dir = exp->get_string("output_dir", cfg.output_dir);
        if (exp->contains("n_clients"))
            cfg.scenario.n_clients = static_cast<int>(exp->at("n_clients").as_int());
    }
    if (const toml::Table* solver = doc.find_section("solver")) {
        cfg.solver.epsilon = solver->get_double("epsilon", cfg.solver.epsilon);
        cfg.solver.max_iterations = solver->get_int("max_iterations", cfg.solver.max_iterations);
    }
    if (const toml::Table* scenario = doc.find_section("scenario")) {
        cfg.scenario.area_m = scenario->get_double("area_m", cfg.scenario.area_m);
        cfg.scenario.ap_height_m = scenario->get_double("ap_height_m", cfg.scenario.ap_height_m);
        cfg.scenario.client_height_m = scenario->get_double("client_height_m", cfg.scenario.client_height_m);
        cfg.scenario.placement_restarts =
            static_cast<int>(scenario->get_int("placement_restarts", cfg.scenario.placement_restarts));
        cfg.scenario.placement_seed =
            static_cast<std::uint64_t>(scenario->get_int("placement_seed",
                                                         static_cast<std::int64_t>(cfg.scenario.placement_seed)));
    }
    if (const toml::Table* dcf = doc.find_section("dcf")) {
        cfg.dcf.contention_window = static_cast<int>(dcf->get_int("contention_window", cfg.dcf.contention_window));
        cfg.dcf.packet_slots = static_cast<int>(dcf->get_int("packet_slots", cfg.dcf.packet_slots));
    }
    if (const toml::Table* mcs = doc.find_section("mcs")) {
        if (mcs->contains("table")) {
            std::vector<std::pair<double, double>> pairs;
            for (const toml::Value& row : mcs->at("table").as_array()) {
                const toml::Array& pair = row.as_array();
                if (pair.size() != 2)
                    throw std::invalid_argument("config: mcs table entries must be [threshold_db, rate_mbps]");
                pairs.emplace_back(pair[0].as_double(), pair[1].as_double());
            }
            cfg.mcs = mcs_table_from_db_pairs(pairs);
        }
    }
    cfg.dcf.sense_threshold_dbm = cfg.radio.sense_threshold_dbm;
    cfg.dcf.tx_power_mw = cfg.radio.max_power_mw;
    cfg.dcf.sim_slots = cfg.total_slots;
    cfg.validate();
    return cfg;
}

std::string experiment_config_to_toml(const ExperimentConfig& cfg) {
    toml::Document doc;
    toml::Table& radio = doc.section("radio");
    radio.set("carrier_freq_ghz", toml::Value(cfg.radio.carrier_freq_ghz));
    radio.set("channel_width_mhz", toml::Value(cfg.radio.channel_width_hz / 1e6));
    radio.set("noise_psd_dbm_hz", toml::Value(cfg.radio.noise_psd_dbm_hz));
    radio.set("amplifier_noise_db", toml::Value(cfg.radio.amplifier_noise_db));
    radio.set("max_power_mw", toml::Value(cfg.radio.max_power_mw));
    radio.set("circuit_power_mw", toml::Value(cfg.radio.circuit_power_mw));
    radio.set("sense_threshold_dbm", toml::Value(cfg.radio.sense_threshold_dbm));

    toml::Table& exp = doc.section("experiment");
    exp.set("alpha", toml::Value(cfg.alpha));
    toml::Array counts;
    for (int k : cfg.ap_counts) counts.emplace_back(static_cast<std::int64_t>(k));
    exp.set("ap_counts", toml::Value(std::move(counts)));
    exp.set("n_clients", toml::Value(static_cast<std::int64_t>(cfg.scenario.n_clients)));
    toml::Array seeds;
    for (std::uint64_t s : cfg.seeds) seeds.emplace_back(static_cast<std::int64_t>(s));
    exp.set("seeds", toml::Value(std::move(seeds)));
    toml::Array solutions;
    for (SolutionKind kind : cfg.solutions) solutions.emplace_back(std::string(to_string(kind)));
    exp.set("solutions", toml::Value(std::move(solutions)));
    exp.set("total_slots", toml::Value(static_cast<std::int64_t>(cfg.total_slots)));
    exp.set("slot_duration_s", toml::Value(cfg.slot_duration));
    exp.set("output_dir", toml::Value(cfg.output_dir));

    toml::Table& solver = doc.section("solver");
    solver.set("epsilon", toml::Value(cfg.solver.epsilon));
    solver.set("max_iterations", toml::Value(static_cast<std::int64_t>(cfg.solver.max_iterations)));

    toml::Table& scenario = doc.section("scenario");
    scenario.set("area_m", toml::Value(cfg.scenario.area_m));
    scenario.set("ap_height_m", toml::Value(cfg.scenario.ap_height_m));
    scenario.set("client_height_m", toml::Value(cfg.scenario.client_height_m));
    scenario.set("placement_restarts", toml::Value(static_cast<std::int64_t>(cfg.scenario.placement_restarts)));
    scenario.set("placement_seed", toml::Value(static_cast<std::int64_t>(cfg.scenario.placement_seed)));

    toml::Table& dcf = doc.section("dcf");
    dcf.set("contention_window", toml::Value(static_cast<std::int64_t>(cfg.dcf.contention_window)));
    dcf.set("packet_slots", toml::Value(static_cast<std::int64_t>(cfg.dcf.packet_slots)));

    toml::Table& mcs = doc.section("mcs");
    toml::Array rows;
    for (const McsStep& step : cfg.mcs.steps()) {
        toml::Array pair;
        pair.emplace_back(linear_to_db(step.sinr_threshold));
        pair.emplace_back(step.rate_mbps);
        rows.emplace_back(std::move(pair));
    }
    mcs.set("table", toml::Value(std::move(rows)));
    return doc.serialize();
}

void MetricsRow::validate() const {
    if (energy_mws < floor_mws)
        throw std::logic_error("metrics: total energy below circuit floor");
    if (geomean_mbps > mean_mbps * (1.0 + 1e-12))
        throw std::logic_error("metrics: geometric mean exceeds arithmetic mean");
}

MetricsRow compute_metrics(const TimeSeries& ts, double alpha, double circuit_power_mw,
                           const std::string& solution, int ap_count, std::uint64_t seed) {
    MetricsRow row;
    row.solution = solution;
    row.ap_count = ap_count;
    row.seed = seed;

    const double duration = ts.duration_s();
    std::vector<double> throughput(ts.final_R.size());
    for (std::size_t i = 0; i < ts.final_R.size(); ++i) throughput[i] = ts.final_R[i] / duration;

    double sum = 0.0;
    double sum_log = 0.0;
    bool any_zero = false;
    for (double t : throughput) {
        sum += t;
        if (t > 0.0)
            sum_log += std::log(t);
        else
            any_zero = true;
    }
    const double n = static_cast<double>(throughput.size());
    row.mean_mbps = sum / n;
    row.geomean_mbps = any_zero ? 0.0 : std::exp(sum_log / n);
    row.energy_mws = ts.total_energy();
    row.floor_mws = ts.energy_floor;
    row.u_hat = mean_throughput(throughput, alpha) / (ts.total_energy() / duration);
    row.validate();
    return row;
}

SimContext make_sim_context(const ExperimentConfig& cfg, const Deployment& deployment) {
    SimContext sim{build_gains(deployment, cfg.radio), cfg.mcs, cfg.radio, topology_of(deployment)};
    return sim;
}

namespace {

TimeSeries run_kind(const ExperimentConfig& cfg, SolutionKind kind, const Deployment& deployment,
                    std::uint64_t seed, bool record_trace) {
    if (kind == SolutionKind::legacy) {
        DcfConfig dcf = cfg.dcf;
        dcf.sense_threshold_dbm = cfg.radio.sense_threshold_dbm;
        dcf.tx_power_mw = cfg.radio.max_power_mw;
        dcf.sim_slots = cfg.total_slots;
        dcf.rng_seed = mix_seed(seed, 0xDCFDCFULL);
        return run_legacy(deployment, cfg.radio, cfg.mcs, dcf, cfg.slot_duration, record_trace);
    }
    const SimContext sim = make_sim_context(cfg, deployment);
    switch (kind) {
        case SolutionKind::sched:
            return run_scheduling_only(sim, cfg.total_slots, cfg.solver, cfg.slot_duration, record_trace);
        case SolutionKind::powersched:
            return run_power_scheduling(sim, cfg.total_slots, cfg.solver, cfg.slot_duration, record_trace);
        case SolutionKind::ee:
            return run_dynamic(sim, SchedulerPolicy::ee(cfg.alpha), cfg.total_slots, cfg.solver,
                               cfg.slot_duration, record_trace);
        default:
            throw std::logic_error("run_kind: unexpected solution kind");
    }
}

}  // namespace

TimeSeries run_single(const ExperimentConfig& cfg, SolutionKind kind, int ap_count,
                      std::uint64_t seed, bool record_trace) {
    Deployment deployment = make_deployment(ap_count, cfg.scenario, seed);
    return run_kind(cfg, kind, deployment, seed, record_trace);
}

std::vector<MetricsRow> run_sweep(const ExperimentConfig& cfg, int jobs) {
    cfg.validate();

    struct Task {
        SolutionKind kind;
        int ap_count;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (SolutionKind kind : cfg.solutions)
        for (int k : cfg.ap_counts)
            for (std::uint64_t seed : cfg.seeds) tasks.push_back({kind, k, seed});

    // AP layouts depend only on the count; share them across the grid.
    std::map<int, std::vector<Vec3>> placements;
    std::mutex placements_mutex;
    for (int k : cfg.ap_counts) placement_cache(cfg, k, placements, placements_mutex);

    std::vector<MetricsRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto worker = [&]() {
        while (!failed.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& task = tasks[i];
            try {
                Deployment deployment;
                deployment.area_size = cfg.scenario.area_m;
                deployment.ap_positions = placement_cache(cfg, task.ap_count, placements, placements_mutex);
                deployment.client_positions = place_clients(cfg.scenario.n_clients, cfg.scenario.area_m,
                                                            task.seed, cfg.scenario.client_height_m);
                deployment.links = associate(deployment.ap_positions, deployment.client_positions);
                deployment.validate();
                const TimeSeries ts = run_kind(cfg, task.kind, deployment, task.seed, false);
                rows[i] = compute_metrics(ts, cfg.alpha, cfg.radio.circuit_power_mw,
                                          to_string(task.kind), task.ap_count, task.seed);
            } catch (const std::exception& e) {
                std::scoped_lock lock(error_mutex);
                error_message = e.what();
                failed.store(true);
                return;
            }
        }
    };

    int n_threads = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    n_threads = std::min<int>(n_threads, static_cast<int>(tasks.size()));

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    if (failed.load()) throw std::runtime_error("sweep failed: " + error_message);
    return rows;
}

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
    std::string out = "solution,ap_count,seed,mean_mbps,geomean_mbps,energy_mws,floor_mws,u_hat\n";
    char buf[256];
    for (const MetricsRow& row : rows) {
        std::snprintf(buf, sizeof buf, "%s,%d,%llu,%.6f,%.6f,%.6f,%.6f,%.9f\n",
                      row.solution.c_str(), row.ap_count,
                      static_cast<unsigned long long>(row.seed), row.mean_mbps, row.geomean_mbps,
                      row.energy_mws, row.floor_mws, row.u_hat);
        out += buf;
    }
    return out;
}

namespace {

struct Curve {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;
};

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::vector<Curve>& curves) {
    double x_max = 1.0;
    double y_max = 1.0;
    for (const Curve& c : curves)
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            x_max = std::max(x_max, c.x[i]);
            y_max = std::max(y_max, c.y[i]);
        }
    const double width = 640.0, height = 420.0, margin = 60.0;
    const auto sx = [&](double x) { return margin + (width - 2 * margin) * x / x_max; };
    const auto sy = [&](double y) { return height - margin - (height - 2 * margin) * y / y_max; };
    static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};

    std::ofstream out(path, std::ios::binary);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    int idx = 0;
    for (const Curve& c : curves) {
        const char* color = colors[idx % 5];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < c.x.size(); ++i) out << sx(c.x[i]) << ',' << sy(c.y[i]) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << width - margin + 4 << "\" y=\"" << 40 + 18 * idx
            << "\" font-size=\"12\" fill=\"" << color << "\">" << c.label << "</text>\n";
        ++idx;
    }
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 16
        << "\" text-anchor=\"middle\" font-size=\"12\">APs</text>\n";
    out << "</svg>\n";
}

}  // namespace

std::vector<MetricsRow> run_sweep_to_dir(const ExperimentConfig& cfg, const std::string& out_dir,
                                         int jobs) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    const std::vector<MetricsRow> rows = run_sweep(cfg, jobs);
    {
        std::ofstream out(fs::path(out_dir) / "metrics.csv", std::ios::binary);
        out << metrics_csv(rows);
    }

    // Seed-averaged curve per (solution, ap_count), in config order.
    auto mean_of = [&](SolutionKind kind, int k, auto field) {
        double sum = 0.0;
        int count = 0;
        for (const MetricsRow& row : rows)
            if (row.solution == to_string(kind) && row.ap_count == k) {
                sum += field(row);
                ++count;
            }
        return count ? sum / count : 0.0;
    };

    char buf[256];
    std::string fig3 = "solution,ap_count,mean_mbps,geomean_mbps\n";
    std::string fig4 = "solution,ap_count,energy_mws,floor_mws\n";
    std::string fig5 = "solution,ap_count,u_hat\n";
    std::vector<Curve> thr_curves, energy_curves, ee_curves;
    for (SolutionKind kind : cfg.solutions) {
        Curve thr, energy, ee;
        thr.label = energy.label = ee.label = to_string(kind);
        for (int k : cfg.ap_counts) {
            const double mean = mean_of(kind, k, [](const MetricsRow& r) { return r.mean_mbps; });
            const double geo = mean_of(kind, k, [](const MetricsRow& r) { return r.geomean_mbps; });
            const double en = mean_of(kind, k, [](const MetricsRow& r) { return r.energy_mws; });
            const double fl = mean_of(kind, k, [](const MetricsRow& r) { return r.floor_mws; });
            const double uh = mean_of(kind, k, [](const MetricsRow& r) { return r.u_hat; });
            std::snprintf(buf, sizeof buf, "%s,%d,%.6f,%.6f\n", to_string(kind), k, mean, geo);
            fig3 += buf;
            std::snprintf(buf, sizeof buf, "%s,%d,%.6f,%.6f\n", to_string(kind), k, en, fl);
            fig4 += buf;
            std::snprintf(buf, sizeof buf, "%s,%d,%.9f\n", to_string(kind), k, uh);
            fig5 += buf;
            thr.x.push_back(k);
            thr.y.push_back(geo);
            energy.x.push_back(k);
            energy.y.push_back(en);
            ee.x.push_back(k);
            ee.y.push_back(uh);
        }
        thr_curves.push_back(std::move(thr));
        energy_curves.push_back(std::move(energy));
        ee_curves.push_back(std::move(ee));
    }
    std::ofstream(fs::path(out_dir) / "fig3_throughput.csv", std::ios::binary) << fig3;
    std::ofstream(fs::path(out_dir) / "fig4_energy.csv", std::ios::binary) << fig4;
    std::ofstream(fs::path(out_dir) / "fig5_efficiency.csv", std::ios::binary) << fig5;
    write_svg_chart((fs::path(out_dir) / "fig3_throughput.svg").string(),
                    "Geometric mean throughput, Mbit/s", thr_curves);
    write_svg_chart((fs::path(out_dir) / "fig4_energy.svg").string(), "Energy consumption, mWs",
                    energy_curves);
    write_svg_chart((fs::path(out_dir) / "fig5_efficiency.svg").string(),
                    "Energy efficiency, Mbit/s per mW", ee_curves);
    return rows;
}

}  // namespace greenwifi
