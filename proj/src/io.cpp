#include "fbmchaos/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fbmchaos::io {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string csv(const std::string& header, const std::vector<std::vector<std::string>>& rows) {
    std::string out = header + "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += row[i];
        }
        out += "\n";
    }
    return out;
}

namespace {

constexpr double kW = 800, kH = 500;
constexpr double kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::polyline(const std::vector<double>& x, const std::vector<double>& y,
                       const std::string& color, const std::string& label) {
    series_.push_back({Series::Kind::line, x, y, color, label});
}

void SvgPlot::stems(const std::vector<double>& x, const std::vector<double>& y,
                    const std::string& color, const std::string& label) {
    series_.push_back({Series::Kind::stem, x, y, color, label});
}

void SvgPlot::hline(double y, const std::string& color, const std::string& label) {
    series_.push_back({Series::Kind::hline, {}, {y}, color, label});
}

std::string SvgPlot::render() const {
    double x_lo = std::numeric_limits<double>::max(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : series_) {
        for (double v : s.x) {
            x_lo = std::min(x_lo, v);
            x_hi = std::max(x_hi, v);
        }
        for (double v : s.y) {
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    }
    if (x_lo > x_hi) {
        x_lo = 0;
        x_hi = 1;
    }
    if (y_lo > y_hi) {
        y_lo = 0;
        y_hi = 1;
    }
    if (x_hi == x_lo) x_hi = x_lo + 1;
    if (y_hi == y_lo) y_hi = y_lo + 1;
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    auto px = [&](double v) {
        return kMarginL + (v - x_lo) / (x_hi - x_lo) * (kW - kMarginL - kMarginR);
    };
    auto py = [&](double v) {
        return kH - kMarginB - (v - y_lo) / (y_hi - y_lo) * (kH - kMarginT - kMarginB);
    };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\">\n";
    s << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    s << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
         "font-family=\"sans-serif\">" << title_ << "</text>\n";

    // axes box and ticks
    s << "<rect x=\"" << num(kMarginL) << "\" y=\"" << num(kMarginT) << "\" width=\""
      << num(kW - kMarginL - kMarginR) << "\" height=\"" << num(kH - kMarginT - kMarginB)
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 5.0;
        const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
        s << "<line x1=\"" << num(px(xv)) << "\" y1=\"" << num(kH - kMarginB) << "\" x2=\""
          << num(px(xv)) << "\" y2=\"" << num(kH - kMarginB + 5) << "\" stroke=\"#444\"/>\n";
        s << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(kH - kMarginB + 18)
          << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
          << tick_label(xv) << "</text>\n";
        s << "<line x1=\"" << num(kMarginL - 5) << "\" y1=\"" << num(py(yv)) << "\" x2=\""
          << num(kMarginL) << "\" y2=\"" << num(py(yv)) << "\" stroke=\"#444\"/>\n";
        s << "<text x=\"" << num(kMarginL - 8) << "\" y=\"" << num(py(yv) + 4)
          << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
          << tick_label(yv) << "</text>\n";
    }
    s << "<text x=\"" << num((kMarginL + kW - kMarginR) / 2) << "\" y=\"" << num(kH - 12)
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << x_label_
      << "</text>\n";
    s << "<text x=\"16\" y=\"" << num((kMarginT + kH - kMarginB) / 2)
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 16 " << num((kMarginT + kH - kMarginB) / 2) << ")\">"
      << y_label_ << "</text>\n";

    double legend_y = kMarginT + 16;
    for (const auto& ser : series_) {
        if (ser.kind == Series::Kind::hline) {
            const double yy = py(ser.y[0]);
            s << "<line x1=\"" << num(kMarginL) << "\" y1=\"" << num(yy) << "\" x2=\""
              << num(kW - kMarginR) << "\" y2=\"" << num(yy) << "\" stroke=\"" << ser.color
              << "\" stroke-dasharray=\"6 4\"/>\n";
        } else if (ser.kind == Series::Kind::stem) {
            const double y0 = py(std::clamp(0.0, y_lo, y_hi));
            for (std::size_t i = 0; i < ser.x.size(); ++i) {
                s << "<line x1=\"" << num(px(ser.x[i])) << "\" y1=\"" << num(y0) << "\" x2=\""
                  << num(px(ser.x[i])) << "\" y2=\"" << num(py(ser.y[i])) << "\" stroke=\""
                  << ser.color << "\"/>\n";
                s << "<circle cx=\"" << num(px(ser.x[i])) << "\" cy=\"" << num(py(ser.y[i]))
                  << "\" r=\"2\" fill=\"" << ser.color << "\"/>\n";
            }
        } else {
            s << "<polyline fill=\"none\" stroke=\"" << ser.color << "\" points=\"";
            for (std::size_t i = 0; i < ser.x.size(); ++i)
                s << num(px(ser.x[i])) << "," << num(py(ser.y[i])) << " ";
            s << "\"/>\n";
        }
        if (!ser.label.empty()) {
            s << "<line x1=\"" << num(kW - 180) << "\" y1=\"" << num(legend_y - 4)
              << "\" x2=\"" << num(kW - 160) << "\" y2=\"" << num(legend_y - 4)
              << "\" stroke=\"" << ser.color << "\"/>\n";
            s << "<text x=\"" << num(kW - 154) << "\" y=\"" << num(legend_y)
              << "\" font-size=\"12\" font-family=\"sans-serif\">" << ser.label
              << "</text>\n";
            legend_y += 16;
        }
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace fbmchaos::io
