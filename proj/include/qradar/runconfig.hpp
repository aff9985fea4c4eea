#ifndef QRADAR_RUNCONFIG_HPP
#define QRADAR_RUNCONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "qradar/errors.hpp"

namespace qradar {

// Flat key-value run configuration. Keys mirror the domain-type field
// names; values are plain decimal numbers, names, or comma lists.
class RunConfig {
public:
    RunConfig() = default;

    static RunConfig from_file(const std::string& path);
    static RunConfig preset(const std::string& name);
    static bool is_preset(const std::string& name);
    // Loads a bundled preset when `name_or_path` matches one, otherwise
    // reads the file at that path.
    static RunConfig resolve(const std::string& name_or_path);

    void set(const std::string& key, const std::string& value);
    // "key=value" as passed on the command line.
    void set_pair(const std::string& pair);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    std::vector<double> get_list(const std::string& key) const;

    // Sweep grid from either an explicit `grid` list or
    // grid_start/grid_stop/grid_count with grid_scale linear|log.
    std::vector<double> grid() const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace qradar

#endif
