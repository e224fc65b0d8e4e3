#include "cli/table.hpp"

#include <cstdio>

namespace gonodyn::cli {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string cell_text(const Cell& c) {
    if (c.is_null()) return "";
    if (c.is_boolean()) return c.get<bool>() ? "1" : "0";
    if (c.is_number_float()) return fmt_g17(c.get<double>());
    if (c.is_number()) return c.dump();
    return csv_escape(c.get<std::string>());
}

}  // namespace

std::string to_csv(const Table& t) {
    std::string out;
    for (size_t j = 0; j < t.columns.size(); ++j) {
        if (j) out += ',';
        out += csv_escape(t.columns[j]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += cell_text(row[j]);
        }
        out += '\n';
    }
    for (const auto& [key, value] : t.footers) out += "# " + key + "," + value + "\n";
    return out;
}

std::string to_json(const Table& t) {
    nlohmann::ordered_json doc;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (size_t j = 0; j < row.size() && j < t.columns.size(); ++j)
            obj[t.columns[j]] = row[j];
        doc["rows"].push_back(std::move(obj));
    }
    for (const auto& [key, value] : t.footers) doc[key] = value;
    return doc.dump(2) + "\n";
}

}  // namespace gonodyn::cli
