#include "driftwatch/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace driftwatch {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kSnapshotTolerance = 1e-9;

std::vector<double> number_array(const ojson& j, const char* field) {
    if (!j.contains(field) || !j[field].is_array()) {
        throw ClusterError(std::string("missing array field \"") + field + "\"");
    }
    std::vector<double> out;
    out.reserve(j[field].size());
    for (const auto& v : j[field]) {
        if (!v.is_number()) {
            throw ClusterError(std::string("non-numeric entry in \"") + field + "\"");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

double number_field(const ojson& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number()) {
        throw ClusterError(std::string("missing numeric field \"") + field + "\"");
    }
    return j[field].get<double>();
}

ojson to_json(const ClusterModel& model, std::size_t i) {
    const auto& m = model.cluster(i);
    const auto c = model.centroid(i);
    ojson j;
    j["n"] = m.n;
    j["ls"] = m.ls;
    j["ss"] = m.ss;
    j["ts"] = m.ts;
    j["tss"] = m.tss;
    j["centroid"] = std::vector<double>(c.begin(), c.end());
    j["radius"] = model.radius(i);
    return j;
}

}  // namespace

bool approx_equal_relative(double a, double b, double rel) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= rel * scale;
}

std::string serialize_snapshot(const ClusteringSnapshot& snap) {
    ojson j;
    j["at_index"] = snap.at_index;
    j["clusters"] = ojson::array();
    for (std::size_t i = 0; i < snap.model.size(); ++i) {
        j["clusters"].push_back(to_json(snap.model, i));
    }
    return j.dump();
}

ClusteringSnapshot parse_snapshot(const std::string& line) {
    ojson j;
    try {
        j = ojson::parse(line);
    } catch (const ojson::parse_error& err) {
        throw ClusterError(std::string("invalid snapshot JSON: ") + err.what());
    }
    if (!j.is_object() || !j.contains("at_index") || !j["at_index"].is_number_unsigned()) {
        throw ClusterError("snapshot needs a non-negative integer \"at_index\"");
    }
    if (!j.contains("clusters") || !j["clusters"].is_array()) {
        throw ClusterError("snapshot needs a \"clusters\" array");
    }
    std::vector<MicroCluster> clusters;
    std::vector<std::vector<double>> stored_centroids;
    std::vector<double> stored_radii;
    for (const auto& c : j["clusters"]) {
        if (!c.is_object() || !c.contains("n") || !c["n"].is_number_unsigned()) {
            throw ClusterError("cluster needs a non-negative integer \"n\"");
        }
        MicroCluster m;
        m.n = c["n"].get<std::uint64_t>();
        m.ls = number_array(c, "ls");
        m.ss = number_array(c, "ss");
        m.ts = number_field(c, "ts");
        m.tss = number_field(c, "tss");
        if (m.ls.size() != m.ss.size()) {
            throw ClusterError("\"ls\" and \"ss\" differ in length");
        }
        stored_centroids.push_back(number_array(c, "centroid"));
        stored_radii.push_back(number_field(c, "radius"));
        clusters.push_back(std::move(m));
    }
    ClusterModel model(std::move(clusters));
    for (std::size_t i = 0; i < model.size(); ++i) {
        const auto c = model.centroid(i);
        if (stored_centroids[i].size() != c.size()) {
            throw ClusterError("cluster " + std::to_string(i) + ": centroid has wrong dimension");
        }
        for (std::size_t p = 0; p < c.size(); ++p) {
            if (!approx_equal_relative(stored_centroids[i][p], c[p], kSnapshotTolerance)) {
                throw ClusterError("cluster " + std::to_string(i) + ": stored centroid disagrees with CF fields");
            }
        }
        if (!approx_equal_relative(stored_radii[i], model.radius(i), kSnapshotTolerance) &&
            std::abs(stored_radii[i] - model.radius(i)) > kSnapshotTolerance) {
            throw ClusterError("cluster " + std::to_string(i) + ": stored radius disagrees with CF fields");
        }
    }
    return ClusteringSnapshot{j["at_index"].get<std::uint64_t>(), std::move(model)};
}

std::vector<ClusteringSnapshot> read_snapshot_history(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ClusterError("cannot open " + path.string());
    }
    std::vector<ClusteringSnapshot> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        try {
            out.push_back(parse_snapshot(line));
        } catch (const ClusterError& err) {
            throw ClusterError(path.string() + ":" + std::to_string(line_no) + ": " + err.what());
        }
    }
    return out;
}

}  // namespace driftwatch
