#pragma once

#include "atomkit/units.hpp"

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace atomkit {

using Cell = std::variant<double, long long, bool, std::string>;

struct Column {
    std::string name;
    Dimension dim = Dimension::none;
};

// Result table shared by the CLI subcommands.
struct Table {
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;

    Table() = default;
    explicit Table(std::vector<Column> cols) : columns(std::move(cols)) {}
    void add(std::vector<Cell> row);
};

// Scales dimensioned numeric columns from atomic units; column names gain a unit suffix.
Table convert_units(const Table& t, UnitSystem to);
std::string unit_suffix(Dimension d, UnitSystem u);

// Header row then one line per row; doubles with 17 significant digits.
void write_csv(std::ostream& os, const Table& t);
// {"columns": [...], "rows": [[...], ...]}; non-finite doubles become null.
void write_json(std::ostream& os, const Table& t);

}  // namespace atomkit
