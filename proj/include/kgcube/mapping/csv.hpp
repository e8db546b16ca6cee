#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kgcube/error.hpp"

namespace kgcube::mapping {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF, optional UTF-8
// BOM. The header row is mandatory; every record must have as many fields
// (CsvError names the 1-based line of a ragged record). Blank lines are skipped.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv_file(const std::filesystem::path& path);

std::string write_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

// Read-only view of one record addressed by column name.
class RowView {
public:
    RowView(const std::vector<std::string>& columns, const std::vector<std::string>& cells)
        : columns_(&columns), cells_(&cells) {}

    // nullptr when the column does not exist.
    const std::string* get(std::string_view column) const;
    const std::vector<std::string>& columns() const { return *columns_; }
    const std::vector<std::string>& cells() const { return *cells_; }

private:
    const std::vector<std::string>* columns_;
    const std::vector<std::string>* cells_;
};

}  // namespace kgcube::mapping
