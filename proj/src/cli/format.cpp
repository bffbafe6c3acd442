#include "kpgm/cli/format.hpp"

#include <charconv>
#include <cmath>

#include "json.hpp"

#include "kpgm/version.hpp"

namespace kpgm::cli {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

namespace {

std::string cell_text(const Table::Cell& cell) {
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    return std::get<std::string>(cell);
}

nlohmann::ordered_json cell_json(const Table::Cell& cell) {
    if (const auto* i = std::get_if<long long>(&cell)) return *i;
    if (const auto* d = std::get_if<double>(&cell)) {
        if (!std::isfinite(*d)) return nullptr;
        return *d;
    }
    return std::get<std::string>(cell);
}

}  // namespace

void write_csv(std::ostream& out, const Table& table, const Provenance& prov) {
    out << "# kpgm " << kVersion << " " << prov.command << "\n";
    out << "# config_hash = " << prov.config_hash << "\n";
    for (const auto& [key, value] : table.meta) out << "# " << key << " = " << value << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
        out << "\n";
    }
}

void write_json(std::ostream& out, const Table& table, const Provenance& prov) {
    nlohmann::ordered_json doc;
    doc["kpgm"] = {{"version", kVersion}, {"command", prov.command}, {"config_hash", prov.config_hash}};
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.meta) meta[key] = value;
    doc["meta"] = meta;
    doc["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << "\n";
}

}  // namespace kpgm::cli
