#include "admlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace admlab::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    bool needs = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    if (columns_ == 0) throw std::invalid_argument("CsvWriter: empty header");
    emit(header);
}

void CsvWriter::emit(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) body_ += ',';
        body_ += csv_escape(cells[i]);
    }
    body_ += "\r\n";
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
        throw std::invalid_argument("CsvWriter: row width does not match the header");
    emit(cells);
    ++rows_;
}

void CsvWriter::add_row(const std::vector<double>& cells) {
    std::vector<std::string> text;
    text.reserve(cells.size());
    for (double v : cells) text.push_back(format_double(v));
    add_row(text);
}

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hash_hex(std::string_view data) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(data)));
    return buf;
}

namespace {

struct Mapped {
    double lo = 0.0, hi = 1.0;
    bool log = false;
    double to_unit(double v) const {
        double a = log ? std::log10(lo) : lo;
        double b = log ? std::log10(hi) : hi;
        double t = log ? std::log10(v) : v;
        return (b - a) > 0.0 ? (t - a) / (b - a) : 0.5;
    }
};

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += ch;
        }
    }
    return out;
}

} // namespace

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<PlotSeries>& series,
                          bool log_x, bool log_y, int width, int height) {
    const double ml = 70, mr = 20, mt = 40, mb = 50;
    Mapped xm{0.0, 1.0, log_x}, ym{0.0, 1.0, log_y};
    bool any = false;
    for (const PlotSeries& s : series)
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if ((log_x && s.x[i] <= 0.0) || (log_y && s.y[i] <= 0.0)) continue;
            if (!any) {
                xm.lo = xm.hi = s.x[i];
                ym.lo = ym.hi = s.y[i];
                any = true;
            }
            xm.lo = std::min(xm.lo, s.x[i]);
            xm.hi = std::max(xm.hi, s.x[i]);
            ym.lo = std::min(ym.lo, s.y[i]);
            ym.hi = std::max(ym.hi, s.y[i]);
        }
    if (!any) xm = Mapped{0.0, 1.0, false}, ym = Mapped{0.0, 1.0, false};

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << xml_escape(title) << "</text>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"12\">" << xml_escape(x_label) << "</text>\n";
    svg << "<text x=\"16\" y=\"" << height / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " << height / 2
        << ")\">" << xml_escape(y_label) << "</text>\n";
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << width - ml - mr
        << "\" height=\"" << height - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";
    // corner tick labels
    svg << "<text x=\"" << ml << "\" y=\"" << height - mb + 16 << "\" font-size=\"10\">"
        << format_double(xm.lo) << "</text>\n";
    svg << "<text x=\"" << width - mr << "\" y=\"" << height - mb + 16
        << "\" text-anchor=\"end\" font-size=\"10\">" << format_double(xm.hi) << "</text>\n";
    svg << "<text x=\"" << ml - 4 << "\" y=\"" << height - mb
        << "\" text-anchor=\"end\" font-size=\"10\">" << format_double(ym.lo) << "</text>\n";
    svg << "<text x=\"" << ml - 4 << "\" y=\"" << mt + 10
        << "\" text-anchor=\"end\" font-size=\"10\">" << format_double(ym.hi) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const PlotSeries& s = series[si];
        const char* color = palette[si % 6];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if ((log_x && s.x[i] <= 0.0) || (log_y && s.y[i] <= 0.0)) continue;
            double px = ml + xm.to_unit(s.x[i]) * (width - ml - mr);
            double py = height - mb - ym.to_unit(s.y[i]) * (height - mt - mb);
            pts << format_double(px) << ',' << format_double(py) << ' ';
        }
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
            << pts.str() << "\"/>\n";
        svg << "<text x=\"" << width - mr - 8 << "\" y=\"" << mt + 16 + 14 * si
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << color << "\">"
            << xml_escape(s.label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

} // namespace

Scenario Scenario::parse(const std::string& text) {
    Scenario sc;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3)
                throw std::invalid_argument("scenario line " + std::to_string(lineno) +
                                            ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            sc.sections_[section];
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("scenario line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("scenario line " + std::to_string(lineno) + ": empty key");
        sc.sections_[section][key] = value;
    }
    return sc;
}

bool Scenario::has(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) > 0;
}

std::optional<std::string> Scenario::get(const std::string& section,
                                         const std::string& key) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return std::nullopt;
    auto jt = it->second.find(key);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

std::string Scenario::get_string(const std::string& section, const std::string& key,
                                 const std::string& fallback) const {
    auto v = get(section, key);
    return v ? *v : fallback;
}

double Scenario::get_double(const std::string& section, const std::string& key,
                            double fallback) const {
    auto v = get(section, key);
    if (!v) return fallback;
    try {
        std::size_t used = 0;
        double d = std::stod(*v, &used);
        if (used != v->size()) throw std::invalid_argument("");
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("scenario value " + section + "." + key +
                                    " is not a number: " + *v);
    }
}

int Scenario::get_int(const std::string& section, const std::string& key, int fallback) const {
    auto v = get(section, key);
    if (!v) return fallback;
    try {
        std::size_t used = 0;
        int d = std::stoi(*v, &used);
        if (used != v->size()) throw std::invalid_argument("");
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("scenario value " + section + "." + key +
                                    " is not an integer: " + *v);
    }
}

std::vector<double> Scenario::get_list(const std::string& section, const std::string& key) const {
    auto v = get(section, key);
    if (!v) return {};
    std::vector<double> out;
    std::istringstream in(*v);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw std::invalid_argument("scenario value " + section + "." + key +
                                        " has a non-numeric entry: " + tok);
        }
    }
    return out;
}

std::string Scenario::canonical() const {
    std::string out;
    for (const auto& [sec, entries] : sections_) {
        out += "[" + sec + "]\n";
        for (const auto& [k, v] : entries) out += k + " = " + v + "\n";
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace admlab::io
