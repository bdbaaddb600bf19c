#pragma once

#include <string>
#include <vector>

namespace nlwrad {

/// Column-named numeric table, one row per record.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    bool empty() const { return rows.empty(); }
    /// Index of a column; throws InvalidParameter when absent.
    std::size_t index(const std::string& name) const;
    std::vector<double> column(const std::string& name) const;
    void add(std::vector<double> row);
};

/// Shortest-exact decimal (17 significant digits) so that reading it back
/// yields the identical double.
std::string format_double(double v);

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

}  // namespace nlwrad
