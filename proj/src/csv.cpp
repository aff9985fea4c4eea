#include "qradar/csv.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

#include "qradar/errors.hpp"

namespace qradar {

std::string format_value(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) throw NumericalError("refusing to serialize NaN");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& columns,
                     const std::map<std::string, std::string>& metadata)
    : os_(os), columns_(columns.size()) {
    if (columns.empty()) throw ConfigError("CSV needs at least one column");
    os_ << kCsvSchema << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        os_ << (i ? "," : "") << columns[i];
    os_ << "\n";
    for (const auto& [key, value] : metadata)
        os_ << "# " << key << "=" << value << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_)
        throw ConfigError("CSV row width does not match header");
    for (std::size_t i = 0; i < values.size(); ++i)
        os_ << (i ? "," : "") << format_value(values[i]);
    os_ << "\n";
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, sep)) out.push_back(cur);
    return out;
}

double parse_value(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("malformed CSV number: " + s);
    return v;
}

}  // namespace

CsvTable parse_csv(std::istream& is) {
    CsvTable table;
    std::string line;
    if (!std::getline(is, line) || line != kCsvSchema)
        throw ConfigError("missing CSV schema marker");
    if (!std::getline(is, line)) throw ConfigError("missing CSV header line");
    table.columns = split(line, ',');
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            const std::string kv = line.substr(2);
            const std::size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("malformed CSV metadata line: " + line);
            table.metadata[kv.substr(0, eq)] = kv.substr(eq + 1);
            continue;
        }
        const std::vector<std::string> cells = split(line, ',');
        if (cells.size() != table.columns.size())
            throw ConfigError("CSV row width does not match header");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& c : cells) row.push_back(parse_value(c));
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace qradar
