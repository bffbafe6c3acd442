#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kpgm::cli {

/// Shortest representation that parses back to the same double; nan, inf, -inf otherwise.
std::string format_double(double value);

struct Table {
    using Cell = std::variant<long long, double, std::string>;

    std::vector<std::string> columns;
    std::vector<std::pair<std::string, std::string>> meta;  ///< emitted in the header
    std::vector<std::vector<Cell>> rows;
};

struct Provenance {
    std::string command;
    std::string config_hash;
};

/// Comment header (`# ...` lines with version, command, hash and meta), then the table.
void write_csv(std::ostream& out, const Table& table, const Provenance& prov);

/// Object whose first member "kpgm" carries version, command and hash; rows are objects.
/// Non-finite doubles become null.
void write_json(std::ostream& out, const Table& table, const Provenance& prov);

}  // namespace kpgm::cli
