#include "stokes_qsl/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "stokes_qsl/errors.hpp"

namespace sqsl::svg {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 48;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::ofstream open_svg(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    return out;
}

void close_svg(std::ofstream& out, const std::filesystem::path& path) {
    out << "</svg>\n";
    out.flush();
    if (out.fail()) throw IoError("write to '" + path.string() + "' failed");
}

void draw_frame(std::ofstream& out, const std::string& title, const std::string& x_label,
                const std::string& y_label) {
    const int pw = kWidth - kMarginLeft - kMarginRight;
    const int ph = kHeight - kMarginTop - kMarginBottom;
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\""
        << " text-anchor=\"middle\">" << title << "</text>\n";
    out << "<text x=\"" << kMarginLeft + pw / 2 << "\" y=\"" << kHeight - 12
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << x_label
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << kMarginTop + ph / 2
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
        << " transform=\"rotate(-90 16 " << kMarginTop + ph / 2 << ")\">" << y_label
        << "</text>\n";
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double m = 0.05 * (hi - lo);
        lo -= m;
        hi += m;
    }
};

}  // namespace

void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series, bool equal_aspect) {
    Range xr, yr;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            xr.add(x);
            yr.add(y);
        }
    }
    if (series.empty() || !std::isfinite(xr.lo) || !std::isfinite(yr.lo)) {
        xr = {0.0, 1.0};
        yr = {0.0, 1.0};
    }
    xr.pad();
    yr.pad();

    const double pw = kWidth - kMarginLeft - kMarginRight;
    const double ph = kHeight - kMarginTop - kMarginBottom;
    double sx = pw / (xr.hi - xr.lo);
    double sy = ph / (yr.hi - yr.lo);
    if (equal_aspect) {
        const double s = std::min(sx, sy);
        const double cx = 0.5 * (xr.lo + xr.hi), cy = 0.5 * (yr.lo + yr.hi);
        xr.lo = cx - 0.5 * pw / s;
        xr.hi = cx + 0.5 * pw / s;
        yr.lo = cy - 0.5 * ph / s;
        yr.hi = cy + 0.5 * ph / s;
        sx = sy = s;
    }
    const auto px = [&](double x) { return kMarginLeft + (x - xr.lo) * sx; };
    const auto py = [&](double y) { return kMarginTop + (yr.hi - y) * sy; };

    std::ofstream out = open_svg(path);
    draw_frame(out, title, x_label, y_label);
    // Corner range annotations instead of full tick machinery.
    out << "<text x=\"" << kMarginLeft << "\" y=\"" << kHeight - kMarginBottom + 16
        << "\" font-family=\"sans-serif\" font-size=\"10\">" << num(xr.lo) << "</text>\n"
        << "<text x=\"" << kWidth - kMarginRight << "\" y=\"" << kHeight - kMarginBottom + 16
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << num(xr.hi)
        << "</text>\n"
        << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << kHeight - kMarginBottom
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << num(yr.lo)
        << "</text>\n"
        << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << kMarginTop + 10
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << num(yr.hi)
        << "</text>\n";

    int legend_y = kMarginTop + 14;
    for (const auto& s : series) {
        if (s.points.empty()) continue;
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points) {
            out << num(px(x)) << ',' << num(py(y)) << ' ';
        }
        out << "\"/>\n";
        if (!s.label.empty()) {
            out << "<text x=\"" << kMarginLeft + 10 << "\" y=\"" << legend_y
                << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << s.color << "\">"
                << s.label << "</text>\n";
            legend_y += 14;
        }
    }
    close_svg(out, path);
}

void write_heatmap(const std::filesystem::path& path, const std::string& title,
                   const std::string& x_label, const std::string& y_label,
                   const Eigen::MatrixXd& values, double x0, double x1, double y0, double y1,
                   double v_max) {
    constexpr int kMaxCells = 128;
    const int rows = static_cast<int>(values.rows());
    const int cols = static_cast<int>(values.cols());
    const int br = std::max(1, (rows + kMaxCells - 1) / kMaxCells);
    const int bc = std::max(1, (cols + kMaxCells - 1) / kMaxCells);
    const int orows = (rows + br - 1) / br;
    const int ocols = (cols + bc - 1) / bc;
    Eigen::MatrixXd binned = Eigen::MatrixXd::Zero(orows, ocols);
    for (int i = 0; i < orows; ++i) {
        for (int j = 0; j < ocols; ++j) {
            double acc = 0.0;
            int count = 0;
            for (int a = i * br; a < std::min(rows, (i + 1) * br); ++a) {
                for (int b = j * bc; b < std::min(cols, (j + 1) * bc); ++b) {
                    acc += values(a, b);
                    ++count;
                }
            }
            binned(i, j) = acc / count;
        }
    }

    const double pw = kWidth - kMarginLeft - kMarginRight;
    const double ph = kHeight - kMarginTop - kMarginBottom;
    const double cw = pw / ocols;
    const double ch = ph / orows;

    std::ofstream out = open_svg(path);
    for (int i = 0; i < orows; ++i) {
        for (int j = 0; j < ocols; ++j) {
            const double v = v_max > 0 ? std::clamp(binned(i, j) / v_max, 0.0, 1.0) : 0.0;
            // Three-stop ramp: dark blue, magenta, yellow.
            int r, g, b;
            if (v < 0.5) {
                const double u = v / 0.5;
                r = static_cast<int>(13 + u * (204 - 13));
                g = static_cast<int>(8 + u * (26 - 8));
                b = static_cast<int>(84 + u * (118 - 84));
            } else {
                const double u = (v - 0.5) / 0.5;
                r = static_cast<int>(204 + u * (240 - 204));
                g = static_cast<int>(26 + u * (230 - 26));
                b = static_cast<int>(118 + u * (66 - 118));
            }
            // Row 0 = y0 drawn at the bottom.
            const double x = kMarginLeft + j * cw;
            const double y = kMarginTop + ph - (i + 1) * ch;
            out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(cw + 0.5)
                << "\" height=\"" << num(ch + 0.5) << "\" fill=\"rgb(" << r << ',' << g << ','
                << b << ")\"/>\n";
        }
    }
    draw_frame(out, title, x_label, y_label);
    out << "<text x=\"" << kMarginLeft << "\" y=\"" << kHeight - kMarginBottom + 16
        << "\" font-family=\"sans-serif\" font-size=\"10\">" << num(x0) << "</text>\n"
        << "<text x=\"" << kWidth - kMarginRight << "\" y=\"" << kHeight - kMarginBottom + 16
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << num(x1)
        << "</text>\n"
        << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << kHeight - kMarginBottom
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << num(y0)
        << "</text>\n"
        << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << kMarginTop + 10
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << num(y1)
        << "</text>\n";
    close_svg(out, path);
}

}  // namespace sqsl::svg
