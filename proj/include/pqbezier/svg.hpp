#pragma once

// Standalone SVG export. Geometry is written in document coordinates inside a
// group carrying transform="scale(1,-1)", so y points up as in the document.
// Planar coordinates: (x, y) for d = 2, the graph (t, S(t)) for d = 1, and the
// (x, y) projection for d = 3.

#include "pqbezier/curve.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pqbezier {

struct PlotOptions {
    int samples = 200;
    bool show_polygon = false;
    std::optional<double> triangle_t;
    double width_px = 800;
};

struct PlanarPoint {
    double x = 0;
    double y = 0;
    friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

struct ViewBox {
    double x = 0;
    double y = 0;  // already flipped: top edge is -max_y
    double width = 0;
    double height = 0;
};

/// Everything that goes into the picture, in document coordinates.
struct PlotGeometry {
    std::vector<PlanarPoint> curve;
    std::vector<PlanarPoint> polygon;                // empty unless requested
    std::vector<std::vector<PlanarPoint>> triangle;  // levels 1..n of the dc1 scheme, affine
    ViewBox view;
};

PlotGeometry plot_geometry(const PqBezierCurve<double>& curve, const PlotOptions& options);
std::string render_svg(const PlotGeometry& geometry, const PlotOptions& options);

inline std::string render_svg(const PqBezierCurve<double>& curve, const PlotOptions& options) {
    return render_svg(plot_geometry(curve, options), options);
}

/// The planar curve (t, S(t)) of a scalar curve, with abscissa control values
/// p^{n-k} [k]_{p,q} / [n]_{p,q} so that it traces the graph exactly.
PqBezierCurve<double> graph_curve(const PqBezierCurve<double>& curve);

/// Bounding box of the points grown by `margin` of its extent on each side;
/// a degenerate extent is widened to 1 first.
ViewBox expanded_view_box(const std::vector<PlanarPoint>& points, double margin = 0.05);

template <Scalar T>
PqBezierCurve<double> to_double(const PqBezierCurve<T>& curve) {
    std::vector<Point<double>> pts;
    for (const auto& pt : curve.control_points()) pts.push_back(to_double(pt));
    return PqBezierCurve<double>(std::move(pts), to_double(curve.params()));
}

}  // namespace pqbezier
