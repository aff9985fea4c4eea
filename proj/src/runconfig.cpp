#include "qradar/runconfig.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qradar/csv.hpp"

namespace qradar {

namespace {

std::string trim(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not a number: " + s);
    }
}

std::map<std::string, std::string> preset_values(const std::string& name) {
    const double pi = 3.14159265358979323846;
    std::map<std::string, std::string> v;
    const auto num = [](double x) { return format_value(x); };

    if (name == "fig1b" || name == "fig6a") {
        v["scheme"] = "rotation";
        v["zeta12"] = name == "fig1b" ? "1" : "4.8";
        v["theta"] = "0";  // swept
        v["tau0"] = "0.75";
        v["delta_taus"] = "0,0.25,0.5,0.75";
        v["sweep"] = "theta";
        v["grid_start"] = "0";
        v["grid_stop"] = num(pi / 2);
        v["grid_count"] = "101";
        v["grid_scale"] = "linear";
    } else if (name == "fig6b") {
        v["scheme"] = "antenna_distance";
        v["theta"] = num(pi / 4);
        v["tau0"] = "0.75";
        v["delta_taus"] = "0,0.05";
        v["sweep"] = "zeta12";
        v["grid_start"] = "0.01";
        v["grid_stop"] = "1";
        v["grid_count"] = "61";
        v["grid_scale"] = "log";
    } else if (name == "fig5") {
        v["zeta12"] = "4.8";
        v["theta"] = "1.2";
        v["kRo"] = "1000";
        v["phis"] = num(pi / 4) + "," + num(pi / 3) + "," + num(pi / 2) + "," +
                    num(3 * pi / 4);
        v["taus_delayed"] = "1.5,2.5,2,0";
        v["grid_start"] = "0.0001";
        v["grid_stop"] = num(std::pow(10.0, 0.5));
        v["grid_count"] = "60";
        v["grid_scale"] = "log";
    } else if (name == "fig4a" || name == "fig4b") {
        v["zeta12"] = "4.8";
        v["theta"] = "1.2";
        v["kRo"] = "2";
        v["phi1"] = num(pi / 2.15);
        v["phi2"] = num(pi / 2.15 + pi / 50);
        if (name == "fig4a") {
            v["tau1"] = "0";
            v["tau2"] = "0";
        } else {
            v["tau1"] = "0.75";
            v["tau2"] = "0.5";
        }
        v["n"] = "10000000";
        v["seeds"] = "100";
        v["base_seed"] = "20260847";
        v["bound_lo"] = "0";
        v["bound_hi"] = "1.3";
        v["grid_start"] = "0.05";
        v["grid_stop"] = "1";
        v["grid_count"] = "9";
        v["grid_scale"] = "log";
    } else {
        throw ConfigError("unknown preset: " + name);
    }
    return v;
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key=value");
        cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

bool RunConfig::is_preset(const std::string& name) {
    static const char* names[] = {"fig1b", "fig4a", "fig4b",
                                  "fig5",  "fig6a", "fig6b"};
    for (const char* n : names)
        if (name == n) return true;
    return false;
}

RunConfig RunConfig::preset(const std::string& name) {
    RunConfig cfg;
    cfg.values_ = preset_values(name);
    return cfg;
}

RunConfig RunConfig::resolve(const std::string& name_or_path) {
    return is_preset(name_or_path) ? preset(name_or_path)
                                   : from_file(name_or_path);
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key.empty()) throw ConfigError("empty config key");
    values_[key] = value;
}

void RunConfig::set_pair(const std::string& pair) {
    const std::size_t eq = pair.find('=');
    if (eq == std::string::npos)
        throw ConfigError("--set expects key=value, got: " + pair);
    set(trim(pair.substr(0, eq)), trim(pair.substr(eq + 1)));
}

bool RunConfig::has(const std::string& key) const {
    return values_.count(key) > 0;
}

std::string RunConfig::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("key '" + key + "': missing");
    return it->second;
}

std::string RunConfig::get_string(const std::string& key,
                                  const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key) const {
    return parse_double(key, get_string(key));
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long long RunConfig::get_int(const std::string& key) const {
    const double v = get_double(key);
    const long long i = static_cast<long long>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("key '" + key + "': not an integer");
    return i;
}

long long RunConfig::get_int(const std::string& key, long long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::vector<double> RunConfig::get_list(const std::string& key) const {
    const std::string s = get_string(key);
    std::vector<double> out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

std::vector<double> RunConfig::grid() const {
    if (has("grid")) return get_list("grid");
    const double start = get_double("grid_start");
    const double stop = get_double("grid_stop");
    const long long count = get_int("grid_count");
    if (count < 1) throw ConfigError("key 'grid_count': must be >= 1");
    const std::string scale = get_string("grid_scale", "linear");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        out.push_back(start);
        return out;
    }
    if (scale == "linear") {
        for (long long i = 0; i < count; ++i)
            out.push_back(start + (stop - start) * static_cast<double>(i) /
                                      static_cast<double>(count - 1));
    } else if (scale == "log") {
        if (!(start > 0.0) || !(stop > 0.0))
            throw ConfigError("key 'grid_scale': log grid needs positive bounds");
        const double ls = std::log(start), le = std::log(stop);
        for (long long i = 0; i < count; ++i)
            out.push_back(std::exp(ls + (le - ls) * static_cast<double>(i) /
                                            static_cast<double>(count - 1)));
    } else {
        throw ConfigError("key 'grid_scale': must be linear or log");
    }
    return out;
}

}  // namespace qradar
