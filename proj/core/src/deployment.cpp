#include "greenwifi/deployment.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "greenwifi/toml.hpp"

namespace greenwifi {

namespace {

void check(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument("deployment: " + msg);
}

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

toml::Value positions_value(const std::vector<Vec3>& pts) {
    toml::Array rows;
    rows.reserve(pts.size());
    for (const Vec3& p : pts) {
        toml::Array row;
        row.emplace_back(std::stod(coord(p.x)));
        row.emplace_back(std::stod(coord(p.y)));
        row.emplace_back(std::stod(coord(p.z)));
        rows.emplace_back(std::move(row));
    }
    return toml::Value(std::move(rows));
}

std::vector<Vec3> positions_from(const toml::Value& v, const char* what) {
    std::vector<Vec3> out;
    for (const toml::Value& row : v.as_array()) {
        const toml::Array& t = row.as_array();
        if (t.size() != 3)
            throw std::invalid_argument(std::string("deployment: ") + what + " entries must be [x, y, z]");
        out.push_back(Vec3{t[0].as_double(), t[1].as_double(), t[2].as_double()});
    }
    return out;
}

}  // namespace

void Deployment::validate() const {
    check(area_size > 0.0, "area_size must be positive");
    const int n_aps = static_cast<int>(ap_positions.size());
    const int n_clients = static_cast<int>(client_positions.size());
    check(n_aps > 0, "at least one AP required");
    check(n_clients > 0, "at least one client required");
    check(static_cast<int>(links.size()) == n_clients, "one link per client required");

    auto in_area = [&](const Vec3& p) {
        return p.x >= 0.0 && p.x <= area_size && p.y >= 0.0 && p.y <= area_size && p.z > 0.0;
    };
    for (const Vec3& p : ap_positions) check(in_area(p), "AP position outside area or non-positive height");
    for (const Vec3& p : client_positions) check(in_area(p), "client position outside area or non-positive height");

    std::vector<int> seen(n_clients, 0);
    for (const auto& [ap, client] : links) {
        check(ap >= 0 && ap < n_aps, "link references invalid AP index");
        check(client >= 0 && client < n_clients, "link references invalid client index");
        seen[client] += 1;
    }
    for (int c = 0; c < n_clients; ++c)
        check(seen[c] == 1, "client " + std::to_string(c) + " must appear in exactly one link");
}

LinkTopology topology_of(const Deployment& d) {
    LinkTopology t;
    t.tx_ap.reserve(d.links.size());
    for (const auto& [ap, client] : d.links) t.tx_ap.push_back(ap);
    return t;
}

std::string deployment_to_toml(const Deployment& d) {
    toml::Document doc;
    doc.section("area").set("size_m", toml::Value(std::stod(coord(d.area_size))));
    doc.section("aps").set("positions", positions_value(d.ap_positions));
    doc.section("clients").set("positions", positions_value(d.client_positions));
    toml::Array pairs;
    for (const auto& [ap, client] : d.links) {
        toml::Array pair;
        pair.emplace_back(static_cast<std::int64_t>(ap));
        pair.emplace_back(static_cast<std::int64_t>(client));
        pairs.emplace_back(std::move(pair));
    }
    doc.section("links").set("pairs", toml::Value(std::move(pairs)));
    return doc.serialize();
}

Deployment deployment_from_toml(const std::string& text) {
    toml::Document doc = toml::parse(text);
    Deployment d;
    d.area_size = doc.require_section("area").at("size_m").as_double();
    d.ap_positions = positions_from(doc.require_section("aps").at("positions"), "aps");
    d.client_positions = positions_from(doc.require_section("clients").at("positions"), "clients");
    for (const toml::Value& row : doc.require_section("links").at("pairs").as_array()) {
        const toml::Array& t = row.as_array();
        if (t.size() != 2) throw std::invalid_argument("deployment: link entries must be [ap, client]");
        d.links.emplace_back(static_cast<int>(t[0].as_int()), static_cast<int>(t[1].as_int()));
    }
    d.validate();
    return d;
}

void save_deployment(const Deployment& d, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write deployment file: " + path);
    out << deployment_to_toml(d);
}

Deployment load_deployment(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open deployment file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return deployment_from_toml(ss.str());
}

}  // namespace greenwifi
