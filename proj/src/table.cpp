#include "qsb/table.hpp"

#include <cmath>
#include <cstdio>

namespace qsb {

std::string format_significant(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void OutputTable::write_csv(std::ostream& out) const {
    for (const auto& line : metadata) out << "# " << line << '\n';
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (row[i]) out << format_significant(*row[i]);
        }
        out << '\n';
    }
}

}  // namespace qsb
