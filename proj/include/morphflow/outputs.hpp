/**
 * @file outputs.hpp
 * @brief Output formatting: full-precision CSV, significant-figure rounding,
 *        and aligned text tables.
 *
 * CSV files carry full double precision (17 significant digits, LF line
 * endings) so downstream runs can reproduce results bit for bit; rounding
 * happens only in the human-readable table renderer.
 */
#ifndef MORPHFLOW_OUTPUTS_HPP
#define MORPHFLOW_OUTPUTS_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace morphflow {

/// Shortest round-trippable decimal form with 17 significant digits.
inline std::string full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/**
 * Round to n significant decimal digits, halves away from zero. A relative
 * nudge of 1e-12 first absorbs binary representation error, so a computed
 * value sitting a hair below a decimal half still rounds up the way the
 * exact decimal would.
 */
inline double round_to_signif(double v, int n) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    if (n < 1) throw std::invalid_argument("round_to_signif: need n >= 1");
    const double av = std::abs(v) * (1.0 + 1e-12);
    const int exp10 = static_cast<int>(std::floor(std::log10(av)));
    const double scale = std::pow(10.0, n - 1 - exp10);
    return std::copysign(std::round(av * scale) / scale, v);
}

/// Compact display form with n significant digits (e.g. 0.03, 2.5e-03).
inline std::string display_number(double v, int n = 2) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", n, round_to_signif(v, n));
    return buf;
}

/// Comma-separated output, header row first, LF endings, full precision.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : os_(path, std::ios::binary), path_(path) {
        if (!os_) throw std::runtime_error("CsvWriter: cannot open " + path);
    }

    void header(const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < names.size(); ++i) os_ << (i ? "," : "") << names[i];
        os_ << '\n';
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            os_ << (i ? "," : "") << full_precision(values[i]);
        os_ << '\n';
    }

    void close() {
        os_.close();
        if (os_.fail()) throw std::runtime_error("CsvWriter: write failed for " + path_);
    }

  private:
    std::ofstream os_;
    std::string path_;
};

/// Fixed layout text table: one label column plus one column per scenario.
class TextTable {
  public:
    explicit TextTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(const std::string& label, const std::vector<std::string>& cells) {
        if (cells.size() + 1 != columns_.size())
            throw std::invalid_argument("TextTable: cell count does not match columns");
        rows_.push_back({label, cells});
    }

    void render(std::ostream& os) const {
        std::vector<std::size_t> w(columns_.size());
        for (std::size_t c = 0; c < columns_.size(); ++c) w[c] = columns_[c].size();
        for (const auto& r : rows_) {
            w[0] = std::max(w[0], r.label.size());
            for (std::size_t c = 0; c < r.cells.size(); ++c)
                w[c + 1] = std::max(w[c + 1], r.cells[c].size());
        }
        const auto pad = [&os](const std::string& s, std::size_t width) {
            os << s << std::string(width - s.size() + 2, ' ');
        };
        for (std::size_t c = 0; c < columns_.size(); ++c) pad(columns_[c], w[c]);
        os << '\n';
        for (std::size_t c = 0; c < columns_.size(); ++c)
            os << std::string(w[c], '-') << "  ";
        os << '\n';
        for (const auto& r : rows_) {
            pad(r.label, w[0]);
            for (std::size_t c = 0; c < r.cells.size(); ++c) pad(r.cells[c], w[c + 1]);
            os << '\n';
        }
    }

  private:
    struct Row {
        std::string label;
        std::vector<std::string> cells;
    };
    std::vector<std::string> columns_;
    std::vector<Row> rows_;
};

}  // namespace morphflow

#endif  // MORPHFLOW_OUTPUTS_HPP
