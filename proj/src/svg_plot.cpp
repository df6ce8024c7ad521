#include "crossconv/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace crossconv {

namespace {

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct TickScale {
    double lo = 0.0, hi = 1.0, step = 0.2;
};

TickScale nice_scale(double min_v, double max_v, int target_ticks = 6) {
    if (min_v == max_v) {
        min_v -= 1.0;
        max_v += 1.0;
    }
    const double raw_step = (max_v - min_v) / std::max(target_ticks - 1, 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
    const double norm = raw_step / mag;
    double step_norm;
    if (norm < 1.5)
        step_norm = 1.0;
    else if (norm < 3.5)
        step_norm = 2.0;
    else if (norm < 7.5)
        step_norm = 5.0;
    else
        step_norm = 10.0;
    const double step = step_norm * mag;
    TickScale s;
    s.step = step;
    s.lo = std::floor(min_v / step) * step;
    s.hi = std::ceil(max_v / step) * step;
    return s;
}

struct Frame {
    double left, top, w, h;
    TickScale xs, ys;

    double px(double x) const { return left + (x - xs.lo) / (xs.hi - xs.lo) * w; }
    double py(double y) const { return top + (1.0 - (y - ys.lo) / (ys.hi - ys.lo)) * h; }
};

void render_axes(std::string& svg, const Frame& f, const std::string& x_label,
                 const std::string& y_label, const std::string& title, int width) {
    svg += "<rect x=\"" + fmt2(f.left) + "\" y=\"" + fmt2(f.top) + "\" width=\"" + fmt2(f.w) +
           "\" height=\"" + fmt2(f.h) + "\" fill=\"none\" stroke=\"#333333\"/>\n";
    for (double t = f.xs.lo; t <= f.xs.hi + f.xs.step * 0.5; t += f.xs.step) {
        const double x = f.px(t);
        svg += "<line x1=\"" + fmt2(x) + "\" y1=\"" + fmt2(f.top + f.h) + "\" x2=\"" + fmt2(x) +
               "\" y2=\"" + fmt2(f.top + f.h + 5) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + fmt2(x) + "\" y=\"" + fmt2(f.top + f.h + 18) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + fmt_tick(t) + "</text>\n";
    }
    for (double t = f.ys.lo; t <= f.ys.hi + f.ys.step * 0.5; t += f.ys.step) {
        const double y = f.py(t);
        svg += "<line x1=\"" + fmt2(f.left - 5) + "\" y1=\"" + fmt2(y) + "\" x2=\"" + fmt2(f.left) +
               "\" y2=\"" + fmt2(y) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + fmt2(f.left - 8) + "\" y=\"" + fmt2(y + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + fmt_tick(t) + "</text>\n";
    }
    if (!title.empty())
        svg += "<text x=\"" + fmt2(width / 2.0) +
               "\" y=\"20\" font-size=\"15\" text-anchor=\"middle\">" + escape_xml(title) +
               "</text>\n";
    if (!x_label.empty())
        svg += "<text x=\"" + fmt2(f.left + f.w / 2.0) + "\" y=\"" + fmt2(f.top + f.h + 36) +
               "\" font-size=\"12\" text-anchor=\"middle\">" + escape_xml(x_label) + "</text>\n";
    if (!y_label.empty())
        svg += "<text x=\"16\" y=\"" + fmt2(f.top + f.h / 2.0) +
               "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
               fmt2(f.top + f.h / 2.0) + ")\">" + escape_xml(y_label) + "</text>\n";
}

}  // namespace

LinePlot& LinePlot::title(std::string t) {
    title_ = std::move(t);
    return *this;
}

LinePlot& LinePlot::x_label(std::string t) {
    x_label_ = std::move(t);
    return *this;
}

LinePlot& LinePlot::y_label(std::string t) {
    y_label_ = std::move(t);
    return *this;
}

LinePlot& LinePlot::add_series(std::string name, std::vector<double> xs, std::vector<double> ys,
                               std::string color) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("LinePlot: series '" + name + "' has mismatched x/y sizes");
    if (xs.empty()) throw std::invalid_argument("LinePlot: series '" + name + "' is empty");
    series_.push_back({std::move(name), std::move(xs), std::move(ys), std::move(color)});
    return *this;
}

std::string LinePlot::render(int width, int height) const {
    if (series_.empty()) throw std::invalid_argument("LinePlot: nothing to plot");

    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = std::numeric_limits<double>::infinity(), max_y = -min_y;
    for (const Series& s : series_) {
        for (double v : s.xs) {
            min_x = std::min(min_x, v);
            max_x = std::max(max_x, v);
        }
        for (double v : s.ys) {
            min_y = std::min(min_y, v);
            max_y = std::max(max_y, v);
        }
    }

    Frame f;
    f.left = 64;
    f.top = 34;
    f.w = width - f.left - 20;
    f.h = height - f.top - 50;
    f.xs = nice_scale(min_x, max_x);
    f.ys = nice_scale(min_y, max_y);

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(width) + "\" height=\"" + std::to_string(height) +
                      "\" font-family=\"sans-serif\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    render_axes(svg, f, x_label_, y_label_, title_, width);

    for (const Series& s : series_) {
        svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (i) svg += ' ';
            svg += fmt2(f.px(s.xs[i])) + "," + fmt2(f.py(s.ys[i]));
        }
        svg += "\"/>\n";
    }

    // legend, top-right inside the frame
    double ly = f.top + 14;
    for (const Series& s : series_) {
        const double lx = f.left + f.w - 150;
        svg += "<line x1=\"" + fmt2(lx) + "\" y1=\"" + fmt2(ly - 4) + "\" x2=\"" + fmt2(lx + 22) +
               "\" y2=\"" + fmt2(ly - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt2(lx + 28) + "\" y=\"" + fmt2(ly) + "\" font-size=\"12\">" +
               escape_xml(s.name) + "</text>\n";
        ly += 16;
    }

    svg += "</svg>\n";
    return svg;
}

std::string render_dendrogram_svg(const MergeTree& tree, int width, int height) {
    const std::size_t n = tree.leaf_labels.size();
    if (tree.merges.size() + 1 != n)
        throw std::invalid_argument("render_dendrogram_svg: malformed merge tree");

    // leaf display order: in-order traversal of the final tree
    const std::size_t total = n + tree.merges.size();
    std::vector<std::size_t> order;
    order.reserve(n);
    auto walk = [&](auto&& self, std::size_t id) -> void {
        if (id < n) {
            order.push_back(id);
            return;
        }
        const Merge& m = tree.merges[id - n];
        self(self, m.a);
        self(self, m.b);
    };
    walk(walk, total - 1);

    std::vector<double> x_pos(total, 0.0), node_height(total, 0.0);
    for (std::size_t slot = 0; slot < order.size(); ++slot)
        x_pos[order[slot]] = static_cast<double>(slot);

    Frame f;
    f.left = 64;
    f.top = 34;
    f.w = width - f.left - 20;
    f.h = height - f.top - 50;
    double max_h = 0.0;
    for (const Merge& m : tree.merges) max_h = std::max(max_h, m.height);
    f.ys = nice_scale(0.0, max_h > 0.0 ? max_h : 1.0);
    f.ys.lo = 0.0;
    f.xs = {-0.5, static_cast<double>(n) - 0.5, 1.0};

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(width) + "\" height=\"" + std::to_string(height) +
                      "\" font-family=\"sans-serif\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (double t = f.ys.lo; t <= f.ys.hi + f.ys.step * 0.5; t += f.ys.step) {
        const double y = f.py(t);
        svg += "<line x1=\"" + fmt2(f.left - 5) + "\" y1=\"" + fmt2(y) + "\" x2=\"" + fmt2(f.left) +
               "\" y2=\"" + fmt2(y) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + fmt2(f.left - 8) + "\" y=\"" + fmt2(y + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + fmt_tick(t) + "</text>\n";
    }
    svg += "<line x1=\"" + fmt2(f.left) + "\" y1=\"" + fmt2(f.top) + "\" x2=\"" + fmt2(f.left) +
           "\" y2=\"" + fmt2(f.top + f.h) + "\" stroke=\"#333333\"/>\n";

    for (const Merge& m : tree.merges) {
        const double xa = f.px(x_pos[m.a]);
        const double xb = f.px(x_pos[m.b]);
        const double ya = f.py(node_height[m.a]);
        const double yb = f.py(node_height[m.b]);
        const double ym = f.py(m.height);
        svg += "<path fill=\"none\" stroke=\"" + std::string(kColorBlue) + "\" d=\"M " + fmt2(xa) +
               " " + fmt2(ya) + " L " + fmt2(xa) + " " + fmt2(ym) + " L " + fmt2(xb) + " " +
               fmt2(ym) + " L " + fmt2(xb) + " " + fmt2(yb) + "\"/>\n";
        x_pos[m.id] = (x_pos[m.a] + x_pos[m.b]) / 2.0;
        node_height[m.id] = m.height;
    }

    for (std::size_t i = 0; i < n; ++i) {
        svg += "<text x=\"" + fmt2(f.px(x_pos[i])) + "\" y=\"" + fmt2(f.top + f.h + 18) +
               "\" font-size=\"12\" text-anchor=\"middle\">" + escape_xml(tree.leaf_labels[i]) +
               "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace crossconv
