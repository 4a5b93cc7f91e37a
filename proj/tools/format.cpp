#include "widom/format.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "widom/errors.hpp"

namespace widom::fmt {

namespace {

std::string csv_field(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return {};
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&c)) return real(*d);
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

nlohmann::json cell_json(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return nullptr;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    if (const auto* d = std::get_if<double>(&c)) return *d;
    return std::get<std::string>(c);
}

void dump_into(std::ostringstream& os, const nlohmann::json& j, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        os << '\n' << std::string(static_cast<size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << '{';
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) os << ',';
                first = false;
                newline(depth + 1);
                os << nlohmann::json(k).dump() << (indent < 0 ? ":" : ": ");
                dump_into(os, v, indent, depth + 1);
            }
            newline(depth);
            os << '}';
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << '[';
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) os << ',';
                newline(depth + 1);
                dump_into(os, j[i], indent, depth + 1);
            }
            newline(depth);
            os << ']';
            return;
        }
        case nlohmann::json::value_t::number_float: {
            const double x = j.get<double>();
            os << (std::isfinite(x) ? real(x) : "null");
            return;
        }
        default: os << j.dump(); return;
    }
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw InvalidInput("row width does not match the table header");
    rows.push_back(std::move(row));
}

std::string real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string alpha_text(const MultiIndex& a) {
    std::string s;
    for (size_t j = 0; j < a.size(); ++j) s += (j ? ";" : "") + std::to_string(a[j]);
    return s;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (const auto& [k, v] : t.meta) out += "# " + k + "," + csv_field(v) + "\n";
    for (size_t j = 0; j < t.columns.size(); ++j) out += (j ? "," : "") + csv_field(t.columns[j]);
    out += "\n";
    for (const auto& row : t.rows) {
        for (size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + csv_field(row[j]);
        out += "\n";
    }
    return out;
}

nlohmann::json to_json(const Table& t) {
    nlohmann::json meta = nlohmann::json::object();
    for (const auto& [k, v] : t.meta) meta[k] = cell_json(v);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json r = nlohmann::json::object();
        for (size_t j = 0; j < row.size(); ++j) r[t.columns[j]] = cell_json(row[j]);
        rows.push_back(std::move(r));
    }
    return {{"columns", t.columns}, {"meta", meta}, {"rows", rows}};
}

std::string dump(const nlohmann::json& j, int indent) {
    std::ostringstream os;
    dump_into(os, j, indent, 0);
    return os.str();
}

std::vector<std::string> widom_columns() {
    return {"alpha",        "degree",       "W2sq",        "Winf",         "S",     "tau_minus",
            "universal_l2", "universal_sup", "doubling_l2", "doubling_sup", "flags", "bounds_hold"};
}

std::vector<Cell> widom_row(const WidomReport& r) {
    const auto opt = [](const std::optional<double>& v) -> Cell {
        if (v) return *v;
        return std::monostate{};
    };
    std::string flags;
    for (size_t j = 0; j < r.flags.size(); ++j) flags += (j ? ";" : "") + to_string(r.flags[j]);
    return {alpha_text(r.alpha),
            static_cast<std::int64_t>(total_degree(r.alpha)),
            r.w2sq(),
            opt(r.winf),
            r.szego,
            r.tau_minus,
            r.bounds.universal_l2,
            r.bounds.universal_sup,
            opt(r.bounds.doubling_l2),
            opt(r.bounds.doubling_sup),
            flags,
            std::string(r.bounds_hold() ? "true" : "false")};
}

nlohmann::json to_json(const WidomReport& r) {
    const auto opt = [](const std::optional<double>& v) -> nlohmann::json {
        if (v) return *v;
        return nullptr;
    };
    nlohmann::json flags = nlohmann::json::array();
    for (auto f : r.flags) flags.push_back(to_string(f));
    return {{"alpha", r.alpha},
            {"degree", total_degree(r.alpha)},
            {"W2sq", r.w2sq()},
            {"Winf", opt(r.winf)},
            {"S", r.szego},
            {"tau_minus", r.tau_minus},
            {"bounds",
             {{"universal_l2", r.bounds.universal_l2},
              {"universal_sup", r.bounds.universal_sup},
              {"doubling_l2", opt(r.bounds.doubling_l2)},
              {"doubling_sup", opt(r.bounds.doubling_sup)}}},
            {"flags", flags},
            {"bounds_hold", r.bounds_hold()}};
}

}  // namespace widom::fmt
