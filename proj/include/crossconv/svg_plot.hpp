#pragma once

#include <string>
#include <vector>

#include "crossconv/analysis.hpp"

namespace crossconv {

// Colors follow the figure conventions used throughout: ankle/v in orange,
// wrist/u in blue, same-subject sweep in red, cross-subject in green.
inline constexpr const char* kColorOrange = "#ff7f0e";
inline constexpr const char* kColorBlue = "#1f77b4";
inline constexpr const char* kColorRed = "#d62728";
inline constexpr const char* kColorGreen = "#2ca02c";

// Minimal deterministic SVG line chart. Identical inputs render to identical
// bytes; all coordinates are emitted at fixed two-decimal precision.
class LinePlot {
public:
    LinePlot& title(std::string t);
    LinePlot& x_label(std::string t);
    LinePlot& y_label(std::string t);
    LinePlot& add_series(std::string name, std::vector<double> xs, std::vector<double> ys,
                         std::string color);
    std::string render(int width = 900, int height = 540) const;

private:
    struct Series {
        std::string name;
        std::vector<double> xs, ys;
        std::string color;
    };
    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
};

std::string render_dendrogram_svg(const MergeTree& tree, int width = 900, int height = 540);

}  // namespace crossconv
