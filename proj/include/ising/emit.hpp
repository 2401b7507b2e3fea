#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace ising {

/// One CSV field: integer, floating-point (emitted at 17 significant digits,
/// enough to round-trip a double exactly), or plain text.
using Cell = std::variant<long long, double, std::string>;
using Row = std::vector<Cell>;

inline std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string cell_to_string(const Cell& cell) {
    struct Visitor {
        std::string operator()(long long i) const { return std::to_string(i); }
        std::string operator()(double d) const { return format_double(d); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, cell);
}

/// Header row plus data rows, comma-separated. Field values here never
/// contain commas or quotes, so no escaping is performed.
inline void emit_csv(std::ostream& os, const std::vector<std::string>& header,
                     const std::vector<Row>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << header[i];
    os << '\n';
    for (const Row& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << cell_to_string(row[i]);
        os << '\n';
    }
}

} // namespace ising
