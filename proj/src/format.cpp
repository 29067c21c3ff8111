#include "lucky/format.hpp"

#include <algorithm>
#include <sstream>

namespace lucky::format {

std::optional<Format> parse_format(std::string_view name)
{
    if (name == "json") return Format::kJson;
    if (name == "csv") return Format::kCsv;
    if (name == "plain") return Format::kPlain;
    return std::nullopt;
}

std::string csv_field(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields)
{
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += ',';
        out += csv_field(fields[i]);
    }
    return out + "\r\n";
}

namespace {

std::string cell(const nlohmann::json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string out;
        for (const auto& x : v) out += (out.empty() ? "" : ",") + cell(x);
        return out;
    }
    return v.dump();
}

std::string render_json(const Report& r)
{
    nlohmann::json doc = r.summary;
    doc["command"] = r.command;
    for (const auto& t : r.tables) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : t.rows) {
            nlohmann::json obj = nlohmann::json::object();
            for (std::size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c]] = row.at(c);
            rows.push_back(std::move(obj));
        }
        doc[t.name] = std::move(rows);
    }
    if (!r.notes.empty()) doc["notes"] = r.notes;
    return doc.dump(2) + "\n";
}

std::string render_csv(const Report& r)
{
    std::string out;
    for (const auto& t : r.tables) {
        if (!out.empty()) out += "\r\n";
        out += csv_row(t.columns);
        for (const auto& row : t.rows) {
            std::vector<std::string> fields;
            for (const auto& v : row) fields.push_back(cell(v));
            out += csv_row(fields);
        }
    }
    if (!r.summary.empty()) {
        if (!out.empty()) out += "\r\n";
        out += csv_row({"key", "value"});
        for (const auto& [k, v] : r.summary.items()) out += csv_row({k, cell(v)});
    }
    return out;
}

std::string render_plain(const Report& r)
{
    std::ostringstream out;
    for (const auto& t : r.tables) {
        std::vector<std::size_t> width;
        for (const auto& c : t.columns) width.push_back(c.size());
        std::vector<std::vector<std::string>> text;
        for (const auto& row : t.rows) {
            auto& line = text.emplace_back();
            for (std::size_t c = 0; c < row.size(); ++c) {
                line.push_back(cell(row[c]));
                width[c] = std::max(width[c], line.back().size());
            }
        }
        auto emit = [&](const std::vector<std::string>& fields) {
            std::string line;
            for (std::size_t c = 0; c < fields.size(); ++c) {
                if (c > 0) line += "  ";
                line += fields[c] + std::string(width[c] - fields[c].size(), ' ');
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out << line << '\n';
        };
        emit(t.columns);
        for (const auto& line : text) emit(line);
        out << '\n';
    }
    for (const auto& [k, v] : r.summary.items()) out << k << ": " << cell(v) << '\n';
    for (const auto& n : r.notes) out << "note: " << n << '\n';
    return out.str();
}

}  // namespace

std::string render(const Report& report, Format format)
{
    switch (format) {
    case Format::kJson: return render_json(report);
    case Format::kCsv: return render_csv(report);
    case Format::kPlain: return render_plain(report);
    }
    return {};
}

}  // namespace lucky::format
