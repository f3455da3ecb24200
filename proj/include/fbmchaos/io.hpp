#pragma once

#include <string>
#include <vector>

namespace fbmchaos::io {

// 17 significant digits: enough to round-trip a double exactly.
std::string fmt17(double x);

// Writes bytes as-is (LF line endings preserved on every platform).
void write_file(const std::string& path, const std::string& content);

// Rows of preformatted cells under a comma-joined header line.
std::string csv(const std::string& header,
                const std::vector<std::vector<std::string>>& rows);

// Minimal self-contained SVG line/stem plots on a fixed 800x500 canvas.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    void polyline(const std::vector<double>& x, const std::vector<double>& y,
                  const std::string& color, const std::string& label = "");
    void stems(const std::vector<double>& x, const std::vector<double>& y,
               const std::string& color, const std::string& label = "");
    void hline(double y, const std::string& color, const std::string& label = "");

    std::string render() const;
    void write(const std::string& path) const { write_file(path, render()); }

private:
    struct Series {
        enum class Kind { line, stem, hline } kind;
        std::vector<double> x, y;
        std::string color, label;
    };
    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
};

}  // namespace fbmchaos::io
