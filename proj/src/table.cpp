#include "atomkit/table.hpp"
#include "atomkit/error.hpp"
#include "atomkit/format.hpp"

#include <json.hpp>

#include <cmath>

namespace atomkit {

void Table::add(std::vector<Cell> row)
{
    if (row.size() != columns.size()) throw DomainError("table row has the wrong number of cells");
    rows.push_back(std::move(row));
}

std::string unit_suffix(Dimension d, UnitSystem u)
{
    if (d == Dimension::none) return "";
    const bool si = u == UnitSystem::si;
    switch (u) {
    case UnitSystem::atomic:
        switch (d) {
        case Dimension::energy: return "hartree";
        case Dimension::length: return "bohr";
        case Dimension::area: return "bohr2";
        default: return "au";
        }
    default:
        switch (d) {
        case Dimension::energy: return si ? "J" : "erg";
        case Dimension::length: return si ? "m" : "cm";
        case Dimension::area: return si ? "m2" : "cm2";
        case Dimension::frequency: return "rad_per_s";
        case Dimension::time: return "s";
        case Dimension::velocity: return si ? "m_per_s" : "cm_per_s";
        case Dimension::field: return si ? "T" : "G";
        default: return "";
        }
    }
}

Table convert_units(const Table& t, UnitSystem to)
{
    Table out = t;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        const Dimension d = t.columns[c].dim;
        if (d == Dimension::none) continue;
        out.columns[c].name += "_" + unit_suffix(d, to);
        const double f = conversion_factor(d, to);
        for (auto& row : out.rows)
            if (auto* v = std::get_if<double>(&row[c])) *v *= f;
    }
    return out;
}

namespace {

std::string csv_cell(const Cell& c)
{
    struct V {
        std::string operator()(double x) const { return fmt17(x); }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& s) const
        {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        }
    };
    return std::visit(V{}, c);
}

}  // namespace

void write_csv(std::ostream& os, const Table& t)
{
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c].name;
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
        os << "\n";
    }
}

void write_json(std::ostream& os, const Table& t)
{
    // doubles are written by hand so they carry the same 17 digits as the CSV output
    auto str = [](const std::string& v) { return nlohmann::json(v).dump(); };
    os << "{\"columns\":[";
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << str(t.columns[c].name);
    os << "],\"rows\":[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << (r ? "," : "") << "[";
        for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
            os << (c ? "," : "");
            const Cell& v = t.rows[r][c];
            if (auto* d = std::get_if<double>(&v)) os << (std::isfinite(*d) ? fmt17(*d) : "null");
            else if (auto* i = std::get_if<long long>(&v)) os << *i;
            else if (auto* b = std::get_if<bool>(&v)) os << (*b ? "true" : "false");
            else os << str(std::get<std::string>(v));
        }
        os << "]";
    }
    os << "]}\n";
}

}  // namespace atomkit
