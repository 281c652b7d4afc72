#include "alpha/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace alpha {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

struct Field {
    const char* key;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&)> set;
};

std::string get_d(double RunConfig::* m, const RunConfig& c) { return format_double(c.*m); }

const std::vector<Field>& fields() {
    auto dbl = [](const char* key, double RunConfig::* m) {
        return Field{key, [m](const RunConfig& c) { return format_double(c.*m); },
                     [m](RunConfig& c, const std::string& v) { c.*m = std::strtod(v.c_str(), nullptr); }};
    };
    auto str = [](const char* key, std::string RunConfig::* m) {
        return Field{key, [m](const RunConfig& c) { return c.*m; },
                     [m](RunConfig& c, const std::string& v) { c.*m = v; }};
    };
    static const std::vector<Field> f = {
        dbl("alpha", &RunConfig::alpha),
        str("mode", &RunConfig::mode),
        str("scenario", &RunConfig::scenario),
        dbl("radius", &RunConfig::radius),
        dbl("distance", &RunConfig::distance),
        dbl("theta", &RunConfig::theta),
        dbl("ellipse_a", &RunConfig::ellipse_a),
        dbl("ellipse_b", &RunConfig::ellipse_b),
        dbl("wedge_xmax", &RunConfig::wedge_xmax),
        dbl("wedge_rotation", &RunConfig::wedge_rotation),
        dbl("wedge_perturbation", &RunConfig::wedge_perturbation),
        dbl("wedge_shift", &RunConfig::wedge_shift),
        dbl("wedge_extension", &RunConfig::wedge_extension),
        dbl("wedge_apex_spacing", &RunConfig::wedge_apex_spacing),
        dbl("noise_amplitude", &RunConfig::noise_amplitude),
        str("scenario_file", &RunConfig::scenario_file),
        dbl("far_threshold", &RunConfig::far_threshold),
        Field{"series_order", [](const RunConfig& c) { return std::to_string(c.series_order); },
              [](RunConfig& c, const std::string& v) { c.series_order = std::stoi(v); }},
        dbl("near_quad_tol", &RunConfig::near_quad_tol),
        dbl("nu", &RunConfig::nu),
        dbl("delta_min", &RunConfig::delta_min),
        dbl("L", &RunConfig::L),
        dbl("a", &RunConfig::a),
        dbl("B", &RunConfig::B),
        dbl("t_end", &RunConfig::t_end),
        dbl("tau_end", &RunConfig::tau_end),
        Field{"max_steps", [](const RunConfig& c) { return std::to_string(c.max_steps); },
              [](RunConfig& c, const std::string& v) { c.max_steps = std::stol(v); }},
        Field{"snapshot_stride",
              [](const RunConfig& c) { return std::to_string(c.snapshot_stride); },
              [](RunConfig& c, const std::string& v) { c.snapshot_stride = std::stoi(v); }},
        str("out_dir", &RunConfig::out_dir),
        Field{"seed", [](const RunConfig& c) { return std::to_string(c.seed); },
              [](RunConfig& c, const std::string& v) { c.seed = std::stoull(v); }},
    };
    return f;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    for (const auto& f : fields()) out << f.key << " = " << f.get(cfg) << "\n";
    return out.str();
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, const Field*> by_key;
    for (const auto& f : fields()) by_key[f.key] = &f;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = by_key.find(key);
        if (it == by_key.end())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        it->second->set(cfg, value);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_hash(const RunConfig& cfg) {
    const std::string text = serialize_config(cfg);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace alpha
