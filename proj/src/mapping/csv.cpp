#include "kgcube/mapping/csv.hpp"

#include <fstream>
#include <sstream>

namespace kgcube::mapping {

namespace {

bool blank_record(const std::vector<std::string>& r) { return r.size() == 1 && r.front().empty(); }

}  // namespace

CsvTable parse_csv(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::vector<std::pair<std::size_t, std::vector<std::string>>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    std::size_t line = 1;
    std::size_t record_line = 1;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        if (!blank_record(record)) records.emplace_back(record_line, std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty() || was_quoted) {
                    throw CsvError("line " + std::to_string(line) + ": unexpected quote inside unquoted field");
                }
                quoted = true;
                was_quoted = true;
                break;
            case ',': end_field(); break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                [[fallthrough]];
            case '\n':
                end_record();
                ++line;
                record_line = line;
                break;
            default:
                if (was_quoted) throw CsvError("line " + std::to_string(line) + ": text after closing quote");
                field += c;
        }
    }
    if (quoted) throw CsvError("line " + std::to_string(record_line) + ": unterminated quoted field");
    if (!field.empty() || !record.empty() || was_quoted) end_record();

    if (records.empty()) throw CsvError("missing header row");
    CsvTable table;
    table.header = std::move(records.front().second);
    for (std::size_t i = 1; i < records.size(); ++i) {
        auto& [ln, r] = records[i];
        if (r.size() != table.header.size()) {
            throw CsvError("line " + std::to_string(ln) + ": record has " + std::to_string(r.size()) + " fields, expected " +
                           std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(r));
    }
    return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_csv(ss.str());
    } catch (const CsvError& e) {
        throw CsvError(path.string() + ": " + e.what());
    }
}

std::string write_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    auto put = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ',';
            const auto& f = r[i];
            if (f.find_first_of(",\"\r\n") == std::string::npos) {
                out += f;
                continue;
            }
            out += '"';
            for (char c : f) {
                if (c == '"') out += '"';
                out += c;
            }
            out += '"';
        }
        out += "\r\n";
    };
    put(header);
    for (const auto& r : rows) put(r);
    return out;
}

const std::string* RowView::get(std::string_view column) const {
    for (std::size_t i = 0; i < columns_->size(); ++i) {
        if ((*columns_)[i] == column) return i < cells_->size() ? &(*cells_)[i] : nullptr;
    }
    return nullptr;
}

}  // namespace kgcube::mapping
