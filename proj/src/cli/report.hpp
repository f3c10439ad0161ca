#pragma once

// Deterministic machine-readable output: insertion-ordered fields, floats at
// 12 significant digits, so identical configs produce byte-identical files.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace insulab::cli {

using Value = std::variant<double, std::int64_t, bool, std::string>;

std::string format_value_json(const Value& v);

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, Value>> config;
    std::vector<std::pair<std::string, Value>> results;
    std::vector<Table> tables;

    void add_config(std::string key, Value v) { config.emplace_back(std::move(key), std::move(v)); }
    void add(std::string key, Value v) { results.emplace_back(std::move(key), std::move(v)); }
};

void write_json(std::ostream& os, const Report& report);

// One row per primary-table row (scalar columns repeated, fully qualified
// names); scalar-only reports emit a single row.
void write_csv(std::ostream& os, const Report& report);

}  // namespace insulab::cli
