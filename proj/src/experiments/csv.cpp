#include "nlwrad/experiments/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nlwrad/core/error.hpp"

namespace nlwrad {

std::size_t CsvTable::index(const std::string& name) const {
    for (std::size_t k = 0; k < columns.size(); ++k)
        if (columns[k] == name) return k;
    throw InvalidParameter("table has no column '" + name + "'");
}

std::vector<double> CsvTable::column(const std::string& name) const {
    const std::size_t k = index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[k]);
    return out;
}

void CsvTable::add(std::vector<double> row) {
    if (row.size() != columns.size()) throw InvalidParameter("row width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const CsvTable& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParameter("cannot write " + path);
    for (std::size_t k = 0; k < t.columns.size(); ++k) out << (k ? "," : "") << t.columns[k];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
        out << '\n';
    }
    if (!out) throw InvalidParameter("write failed for " + path);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParameter("cannot open " + path);
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw InvalidParameter(path + ": empty file");
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0') throw InvalidParameter(path + ": bad number '" + cell + "'");
            row.push_back(v);
        }
        t.add(std::move(row));
    }
    return t;
}

}  // namespace nlwrad
