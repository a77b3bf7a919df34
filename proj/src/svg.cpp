#include "pqbezier/svg.hpp"

#include "pqbezier/identities.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pqbezier {

namespace {

PlanarPoint planar(const Point<double>& pt, double t) {
    if (pt.dimension() == 1) return {t, pt[0]};
    return {pt[0], pt[1]};
}

void append_points(std::ostringstream& out, const std::vector<PlanarPoint>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        out << (i ? " " : "") << to_string(pts[i].x) << "," << to_string(pts[i].y);
}

}  // namespace

PqBezierCurve<double> graph_curve(const PqBezierCurve<double>& curve) {
    if (curve.dimension() != 1) throw std::invalid_argument("graph_curve: expected a scalar curve");
    const int n = curve.degree();
    std::vector<double> abscissa(static_cast<std::size_t>(n) + 1, 0.0);
    if (n >= 1) abscissa = monomial_coefficients(n, 1, curve.params());
    std::vector<Point<double>> pts;
    for (int i = 0; i <= n; ++i) pts.push_back(Point<double>{abscissa[i], curve.control_points()[i][0]});
    return PqBezierCurve<double>(std::move(pts), curve.params());
}

ViewBox expanded_view_box(const std::vector<PlanarPoint>& points, double margin) {
    if (points.empty()) return {0, -1, 1, 1};
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    for (const auto& p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    auto widen = [](double& lo, double& hi) {
        if (hi - lo <= 0) {
            lo -= 0.5;
            hi += 0.5;
        }
    };
    widen(min_x, max_x);
    widen(min_y, max_y);
    const double dx = (max_x - min_x) * margin, dy = (max_y - min_y) * margin;
    min_x -= dx;
    max_x += dx;
    min_y -= dy;
    max_y += dy;
    return {min_x, -max_y, max_x - min_x, max_y - min_y};
}

PlotGeometry plot_geometry(const PqBezierCurve<double>& curve, const PlotOptions& options) {
    if (options.samples < 2) throw std::invalid_argument("samples must be >= 2");
    PlotGeometry g;
    const int n = curve.degree();
    const auto samples = flatten(curve, options.samples);
    for (int i = 0; i < options.samples; ++i)
        g.curve.push_back(planar(samples[i], static_cast<double>(i) / (options.samples - 1)));

    // A scalar curve is drawn as its graph (t, S(t)), itself a planar curve
    // whose abscissa control values are the weights of t in the basis.
    const PqBezierCurve<double> planar_curve = curve.dimension() == 1 ? graph_curve(curve) : curve;
    if (options.show_polygon)
        for (const auto& pt : planar_curve.control_points()) g.polygon.push_back(planar(pt, 0));
    if (options.triangle_t && n >= 1) {
        auto levels = intermediate_points(planar_curve, *options.triangle_t, Algorithm::dc1).affine_levels();
        for (std::size_t k = 1; k < levels.size(); ++k) {
            std::vector<PlanarPoint> row;
            for (const auto& pt : levels[k]) row.push_back(planar(pt, 0));
            g.triangle.push_back(std::move(row));
        }
    }

    std::vector<PlanarPoint> all = g.curve;
    all.insert(all.end(), g.polygon.begin(), g.polygon.end());
    for (const auto& row : g.triangle) all.insert(all.end(), row.begin(), row.end());
    g.view = expanded_view_box(all);
    return g;
}

std::string render_svg(const PlotGeometry& g, const PlotOptions& options) {
    const double width = options.width_px;
    const double height = width * g.view.height / g.view.width;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << to_string(width) << "\" height=\""
        << to_string(height) << "\" viewBox=\"" << to_string(g.view.x) << " " << to_string(g.view.y) << " "
        << to_string(g.view.width) << " " << to_string(g.view.height) << "\">\n";
    out << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linejoin=\"round\">\n";
    if (!g.polygon.empty()) {
        out << "<polyline class=\"control-polygon\" stroke=\"#888888\" stroke-width=\"1\" "
               "stroke-dasharray=\"6 4\" vector-effect=\"non-scaling-stroke\" points=\"";
        append_points(out, g.polygon);
        out << "\"/>\n";
    }
    for (std::size_t k = 0; k < g.triangle.size(); ++k) {
        const auto& row = g.triangle[k];
        if (row.size() == 1) {
            out << "<circle class=\"triangle-apex\" data-level=\"" << k + 1 << "\" cx=\"" << to_string(row[0].x)
                << "\" cy=\"" << to_string(row[0].y) << "\" r=\"" << to_string(0.01 * g.view.width)
                << "\" fill=\"#d62728\" stroke=\"none\"/>\n";
            continue;
        }
        out << "<polyline class=\"triangle\" data-level=\"" << k + 1
            << "\" stroke=\"#2ca02c\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\" points=\"";
        append_points(out, row);
        out << "\"/>\n";
    }
    out << "<polyline class=\"curve\" stroke=\"#1f77b4\" stroke-width=\"2\" vector-effect=\"non-scaling-stroke\" "
           "points=\"";
    append_points(out, g.curve);
    out << "\"/>\n";
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace pqbezier
