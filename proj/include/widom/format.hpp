#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "widom/productnd.hpp"

namespace widom::fmt {

/// Empty, integer, real or text.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Rectangular result set; `meta` holds scalar facts about the whole table.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> meta;

    void add_row(std::vector<Cell> row);
};

/// Seventeen significant digits; "nan", "inf" and "-inf" for non-finite values.
[[nodiscard]] std::string real(double x);

/// "2;0;1".
[[nodiscard]] std::string alpha_text(const MultiIndex& a);

/// Meta lines as "# key,value", then a header row and the data rows.
/// Text cells containing separators or quotes are quoted.
[[nodiscard]] std::string to_csv(const Table& t);

[[nodiscard]] nlohmann::json to_json(const Table& t);

/// Like nlohmann::json::dump, but every floating-point number is written
/// with seventeen significant digits and non-finite numbers become null.
[[nodiscard]] std::string dump(const nlohmann::json& j, int indent = 2);

/// Column layout shared by the CSV and JSON forms of a WidomReport.
[[nodiscard]] std::vector<std::string> widom_columns();
[[nodiscard]] std::vector<Cell> widom_row(const WidomReport& r);
[[nodiscard]] nlohmann::json to_json(const WidomReport& r);

}  // namespace widom::fmt
