#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qsb {

/// Locale-independent formatting with 12 significant digits.
std::string format_significant(double value);

/// Numeric table with a '#'-prefixed metadata echo block, emitted as CSV.
/// Empty cells render as empty fields.
struct OutputTable {
    std::vector<std::string> metadata;
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;

    void write_csv(std::ostream& out) const;
};

}  // namespace qsb
