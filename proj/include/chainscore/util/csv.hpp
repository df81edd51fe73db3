#pragma once

#include <map>
#include <string>
#include <vector>

namespace chainscore {

// Minimal RFC-4180-ish CSV table: quoted fields may contain commas, doubled
// quotes, and newlines. Header row is required.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::map<std::string, std::size_t> column_index;

    bool has_column(const std::string& name) const { return column_index.count(name) > 0; }
    const std::string& cell(std::size_t row, const std::string& column) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

std::string csv_escape(const std::string& field);

}  // namespace chainscore
