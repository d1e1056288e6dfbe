#ifndef ADMLAB_IO_HPP
#define ADMLAB_IO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace admlab::io {

/// Deterministic numeric formatting shared by every output writer.
std::string format_double(double v);

/// RFC-4180 CSV: CRLF row endings, fields quoted when they contain a comma,
/// a quote, or a line break, embedded quotes doubled.
std::string csv_escape(const std::string& field);

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    /// Throws std::invalid_argument on column-count mismatch.
    void add_row(const std::vector<std::string>& cells);
    void add_row(const std::vector<double>& cells);
    std::size_t rows() const { return rows_; }
    const std::string& str() const { return body_; }

private:
    std::size_t columns_ = 0;
    std::size_t rows_ = 0;
    std::string body_;
    void emit(const std::vector<std::string>& cells);
};

/// FNV-1a 64-bit hash; used to stamp outputs with a scenario fingerprint.
std::uint64_t fnv1a(std::string_view data);
std::string hash_hex(std::string_view data);

/// Minimal standalone line/scatter plot as an SVG document (no display
/// server, no external renderer). log_x / log_y switch the axes to log10;
/// nonpositive samples are dropped from log axes.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<PlotSeries>& series,
                          bool log_x = false, bool log_y = false, int width = 720,
                          int height = 480);

/// Scenario files: INI-style key-value text with [section] headers,
/// '#' or ';' comments, and case-sensitive keys.
class Scenario {
public:
    /// Throws std::invalid_argument with a line number on malformed input.
    static Scenario parse(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    std::vector<double> get_list(const std::string& section, const std::string& key) const;

    /// Canonical re-serialization (sorted sections and keys) used for hashing.
    std::string canonical() const;
    std::string hash() const { return hash_hex(canonical()); }

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace admlab::io

#endif
