// svg.hpp — small self-contained SVG writers for the optional --svg sidecar
// plots: plane tracks, heatmaps and scatter/line charts. No external
// plotting dependency; the charts are diagnostic companions to the CSVs.

#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <vector>

namespace sqsl::svg {

struct Series {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;
};

// Polyline chart of (x, y) series with axes and labels. equal_aspect forces
// identical x/y scales (used for tracks in the Stokes equatorial plane).
void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series, bool equal_aspect);

// Heatmap of a matrix over [x0, x1] x [y0, y1]; values are clipped to
// [0, v_max]. Row i maps to y, column j to x. Grids larger than 128 cells
// per axis are averaged down to keep the file size reasonable.
void write_heatmap(const std::filesystem::path& path, const std::string& title,
                   const std::string& x_label, const std::string& y_label,
                   const Eigen::MatrixXd& values, double x0, double x1, double y0, double y1,
                   double v_max);

}  // namespace sqsl::svg
