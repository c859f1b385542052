#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace spinctl::cli {

// Locale-independent numeric text, >= 12 significant digits, exact
// round-trip (shortest-or-17 via to_chars).
std::string format_number(double v);

// Comma-separated table, one header row. Cells are preformatted strings.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
    std::string to_csv() const;
};

// Writes via a temp file + rename so readers never see partial output.
void write_atomic(const std::string& path, const std::string& contents);
void write_json_atomic(const std::string& path, const nlohmann::json& j);

} // namespace spinctl::cli
