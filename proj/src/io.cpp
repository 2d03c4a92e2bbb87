#include "bohmcl/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "bohmcl/types.hpp"

namespace bohmcl::io {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
}

NumericTable read_numeric_csv(std::istream& in) {
    NumericTable table;
    std::string line;
    if (!std::getline(in, line) || line.empty()) throw ParameterError("CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) table.header.push_back(cell);
    }
    table.columns.assign(table.header.size(), {});
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            if (col >= table.columns.size()) throw ParameterError("CSV row wider than header");
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw ParameterError("non-numeric CSV cell '" + cell + "'");
            }
            if (used != cell.size()) throw ParameterError("non-numeric CSV cell '" + cell + "'");
            table.columns[col++].push_back(value);
        }
        if (col != table.columns.size()) throw ParameterError("CSV row narrower than header");
    }
    if (table.row_count() == 0) throw ParameterError("CSV holds no data rows");
    return table;
}

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 16;
constexpr int kMarginTop = 16;
constexpr int kMarginBottom = 48;

const char* kPalette[] = {"#1b6ca8", "#c0392b", "#1e8449", "#7d3c98",
                          "#b7950b", "#148f77", "#884ea0", "#283747"};

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

void write_polyline_svg(std::ostream& out, const std::vector<Series>& series,
                        const std::string& x_label, const std::string& y_label) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!(xmin <= xmax) || !(ymin <= ymax)) throw ParameterError("nothing to plot");
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto px = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    const auto py = [&](double y) {
        return kMarginTop + plot_h - (y - ymin) / (ymax - ymin) * plot_h;
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    // range labels
    out << "<text x=\"" << kMarginLeft << "\" y=\"" << kHeight - 28
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << format_number(xmin)
        << "</text>\n";
    out << "<text x=\"" << kMarginLeft + plot_w << "\" y=\"" << kHeight - 28
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << format_number(xmax) << "</text>\n";
    out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << kMarginTop + plot_h
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << format_number(ymin) << "</text>\n";
    out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << kMarginTop + 10
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << format_number(ymax) << "</text>\n";
    // axis titles
    out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 8
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << x_label
        << "</text>\n";
    out << "<text x=\"14\" y=\"" << kMarginTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 14 "
        << kMarginTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[s % 8]
            << "\" stroke-width=\"1.4\" points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            if (i) out << ' ';
            out << coord(px(series[s].x[i])) << ',' << coord(py(series[s].y[i]));
        }
        out << "\"/>\n";
        out << "<text x=\"" << kMarginLeft + plot_w - 4 << "\" y=\"" << kMarginTop + 14 + 14 * s
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
            << kPalette[s % 8] << "\">" << series[s].label << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace bohmcl::io
