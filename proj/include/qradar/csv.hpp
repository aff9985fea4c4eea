#ifndef QRADAR_CSV_HPP
#define QRADAR_CSV_HPP

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace qradar {

inline constexpr const char* kCsvSchema = "# qradar-fisher v1";

// Formats with 17 significant digits; infinities become "inf"/"-inf".
std::string format_value(double v);

// Writer for the flat numeric tables every subcommand emits. Layout:
// schema marker line, column header line, optional "# key=value"
// metadata lines, then data rows.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& columns,
              const std::map<std::string, std::string>& metadata = {});
    void row(const std::vector<double>& values);

private:
    std::ostream& os_;
    std::size_t columns_;
};

struct CsvTable {
    std::vector<std::string> columns;
    std::map<std::string, std::string> metadata;
    std::vector<std::vector<double>> rows;
};

// Round-trip parser for the schema above.
CsvTable parse_csv(std::istream& is);

}  // namespace qradar

#endif
