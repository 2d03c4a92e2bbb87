#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// CSV and SVG emission. Numbers are printed with 15 significant digits,
// '.' decimal separator and LF line endings regardless of locale, so
// identical inputs produce byte-identical files.

namespace bohmcl::io {

std::string format_number(double v);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

struct NumericTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;  // column-major, header order

    std::size_t row_count() const { return columns.empty() ? 0 : columns.front().size(); }
};

// Throws ParameterError on an empty table, ragged rows or non-numeric
// cells.
NumericTable read_numeric_csv(std::istream& in);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Single-panel polyline plot with labeled axes; hand-emitted markup with
// deterministic bytes.
void write_polyline_svg(std::ostream& out, const std::vector<Series>& series,
                        const std::string& x_label, const std::string& y_label);

}  // namespace bohmcl::io
