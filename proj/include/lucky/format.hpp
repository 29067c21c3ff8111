#pragma once

// Rendering of command reports as JSON, CSV or aligned plain text.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lucky/bigint.hpp"

namespace lucky::format {

enum class Format { kJson, kCsv, kPlain };

std::optional<Format> parse_format(std::string_view name);

/// RFC 4180: quote when the field holds a comma, quote, CR or LF; double
/// embedded quotes.
std::string csv_field(std::string_view field);
std::string csv_row(const std::vector<std::string>& fields);

/// Exact integers go out as decimal strings so JSON readers never round them.
inline nlohmann::json exact(const BigInt& v) { return v.str(); }

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;
};

struct Report {
    explicit Report(std::string cmd = {}) : command(std::move(cmd)) {}

    std::string command;
    nlohmann::json summary = nlohmann::json::object();
    std::vector<Table> tables;
    std::vector<std::string> notes;
};

/// JSON: one object, keys sorted, tables as arrays of row objects.
/// CSV: each table with a header row, tables separated by a blank line, then
/// the summary as a key,value table.
/// Plain: summary lines, aligned tables, then notes.
std::string render(const Report& report, Format format);

}  // namespace lucky::format
