#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace gonodyn::cli {

using Cell = nlohmann::ordered_json;

// Rectangular output table. Cells hold numbers, strings, booleans or null;
// the writers decide the textual form. Footers become "# key,value" comment
// lines in CSV and top-level keys in JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> footers;
};

// 17 significant digits, enough for a lossless double round-trip.
std::string fmt_g17(double v);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

}  // namespace gonodyn::cli
