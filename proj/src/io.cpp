#include "alpha/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "alpha/config.hpp"

namespace alpha {

using nlohmann::json;

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

void write_snapshot(const std::string& prefix, const PatchSystem& sys, long step,
                    const std::string& config_hash) {
    std::ostringstream csv;
    csv << "contour_id,node_index,x,y\n";
    for (const auto& c : sys.contours)
        for (int j = 0; j < c.size(); ++j)
            csv << c.id << ',' << j << ',' << format_double(c.nodes[j].x) << ','
                << format_double(c.nodes[j].y) << '\n';
    write_text_atomic(prefix + ".csv", csv.str());

    json side;
    side["alpha"] = sys.alpha;
    side["mode"] = sys.mode == Mode::physical ? "physical" : "selfsimilar";
    side[sys.mode == Mode::physical ? "t" : "tau"] = sys.time;
    side["step"] = step;
    side["config_hash"] = config_hash;
    json theta = json::array(), counts = json::array(), ids = json::array();
    for (const auto& c : sys.contours) {
        theta.push_back(c.strength);
        counts.push_back(c.size());
        ids.push_back(c.id);
    }
    side["theta"] = theta;
    side["node_counts"] = counts;
    side["contour_ids"] = ids;
    if (sys.tracer) side["tracer"] = {sys.tracer->x, sys.tracer->y};
    write_text_atomic(prefix + ".json", side.dump(2) + "\n");
}

SnapshotData read_snapshot(const std::string& prefix) {
    std::ifstream jin(prefix + ".json");
    if (!jin) throw std::runtime_error("missing snapshot sidecar: " + prefix + ".json");
    json side = json::parse(jin);

    SnapshotData out;
    out.step = side.at("step").get<long>();
    out.config_hash = side.value("config_hash", "");

    PatchSystem& sys = out.system;
    sys.alpha = side.at("alpha").get<double>();
    sys.delta = 1.0 / sys.alpha;
    const std::string mode = side.at("mode").get<std::string>();
    if (mode == "physical") {
        sys.mode = Mode::physical;
        sys.time = side.at("t").get<double>();
    } else if (mode == "selfsimilar") {
        sys.mode = Mode::selfsimilar;
        sys.time = side.at("tau").get<double>();
    } else {
        throw std::runtime_error("snapshot sidecar: unknown mode '" + mode + "'");
    }
    if (side.contains("tracer"))
        sys.tracer = Vec2{side["tracer"][0].get<double>(), side["tracer"][1].get<double>()};

    const auto ids = side.at("contour_ids");
    const auto theta = side.at("theta");
    const auto counts = side.at("node_counts");
    for (std::size_t k = 0; k < ids.size(); ++k) {
        Contour c;
        c.id = ids[k].get<int>();
        c.strength = theta[k].get<double>();
        c.nodes.reserve(counts[k].get<std::size_t>());
        sys.contours.push_back(std::move(c));
    }

    std::ifstream cin(prefix + ".csv");
    if (!cin) throw std::runtime_error("missing snapshot data: " + prefix + ".csv");
    std::string line;
    if (!std::getline(cin, line) || line != "contour_id,node_index,x,y")
        throw std::runtime_error("snapshot schema mismatch in " + prefix + ".csv");
    while (std::getline(cin, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string tok;
        std::getline(row, tok, ',');
        const int id = std::stoi(tok);
        std::getline(row, tok, ','); // node index, implied by order
        std::getline(row, tok, ',');
        const double x = std::strtod(tok.c_str(), nullptr);
        std::getline(row, tok, ',');
        const double y = std::strtod(tok.c_str(), nullptr);
        bool placed = false;
        for (auto& c : sys.contours)
            if (c.id == id) {
                c.nodes.push_back({x, y});
                placed = true;
                break;
            }
        if (!placed) throw std::runtime_error("snapshot row references unknown contour id");
    }
    for (std::size_t k = 0; k < sys.contours.size(); ++k)
        if (sys.contours[k].size() != counts[k].get<int>())
            throw std::runtime_error("snapshot node counts disagree with sidecar");
    return out;
}

std::string timeseries_header() {
    return "step,t,tau,min_distance,max_curvature,area_1,area_2,n1,n2,dt";
}

std::string timeseries_row(const DiagnosticsRecord& r) {
    std::ostringstream out;
    const double a1 = r.areas.size() > 0 ? r.areas[0] : 0.0;
    const double a2 = r.areas.size() > 1 ? r.areas[1] : 0.0;
    const int n1 = r.node_counts.size() > 0 ? r.node_counts[0] : 0;
    const int n2 = r.node_counts.size() > 1 ? r.node_counts[1] : 0;
    out << r.step << ',' << format_double(r.t) << ',' << format_double(r.tau) << ','
        << format_double(r.min_distance) << ',' << format_double(r.max_curvature) << ','
        << format_double(a1) << ',' << format_double(a2) << ',' << n1 << ',' << n2 << ','
        << format_double(r.dt);
    return out.str();
}

void write_timeseries(const std::string& path, const std::vector<DiagnosticsRecord>& records) {
    std::ostringstream out;
    out << timeseries_header() << '\n';
    for (const auto& r : records) out << timeseries_row(r) << '\n';
    write_text_atomic(path, out.str());
}

std::vector<DiagnosticsRecord> read_timeseries(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open time series: " + path);
    std::string line;
    if (!std::getline(in, line) || line != timeseries_header())
        throw std::runtime_error("time-series schema mismatch in " + path);
    std::vector<DiagnosticsRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string tok;
        DiagnosticsRecord r;
        auto next = [&]() {
            if (!std::getline(row, tok, ',')) throw std::runtime_error("short time-series row");
            return tok;
        };
        r.step = std::stol(next());
        r.t = std::strtod(next().c_str(), nullptr);
        r.tau = std::strtod(next().c_str(), nullptr);
        r.min_distance = std::strtod(next().c_str(), nullptr);
        r.max_curvature = std::strtod(next().c_str(), nullptr);
        r.areas.push_back(std::strtod(next().c_str(), nullptr));
        r.areas.push_back(std::strtod(next().c_str(), nullptr));
        r.node_counts.push_back(std::stoi(next()));
        r.node_counts.push_back(std::stoi(next()));
        r.dt = std::strtod(next().c_str(), nullptr);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace alpha
