#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "beurlab/common.hpp"
#include "beurlab/lipschitz_graph.hpp"

namespace beurlab {

/// Half-plane on the left of the oriented boundary line through `point`.
/// The canonical upper half-plane is {point = 0, direction = 1}.
struct HalfPlane {
    cplx point{0.0, 0.0};
    cplx direction{1.0, 0.0};  // unit tangent of the boundary line
};

struct Disk {
    cplx center{0.0, 0.0};
    double radius = 1.0;
};

struct GraphDomain {
    LipschitzGraph graph;
};

/// Bounded domain enclosed by a simple closed polyline (counterclockwise).
struct LipschitzPolygon {
    std::vector<cplx> vertices;      // closed: first vertex not repeated
    double chord_arc_constant = 1.0; // max over vertex pairs of arc/chord
    double flatness_radius = 0.0;    // R of the (delta,R) description, stored per instance
};

class PlaneDomain {
  public:
    using Variant = std::variant<HalfPlane, Disk, GraphDomain, LipschitzPolygon>;

    explicit PlaneDomain(Variant v);

    static PlaneDomain half_plane(cplx point = {0, 0}, cplx direction = {1, 0});
    static PlaneDomain disk(cplx center, double radius);
    static PlaneDomain graph(LipschitzGraph g);
    static PlaneDomain polygon(std::vector<cplx> vertices);

    /// Regular n-gon approximation of a circle, counterclockwise.
    static PlaneDomain circle_polygon(cplx center, double radius, int n);

    const Variant& variant() const { return v_; }
    bool is_bounded() const;
    bool is_graph() const { return std::holds_alternative<GraphDomain>(v_); }
    const GraphDomain* as_graph() const { return std::get_if<GraphDomain>(&v_); }
    const LipschitzPolygon* as_polygon() const { return std::get_if<LipschitzPolygon>(&v_); }
    const Disk* as_disk() const { return std::get_if<Disk>(&v_); }
    const HalfPlane* as_half_plane() const { return std::get_if<HalfPlane>(&v_); }

    bool contains(cplx z) const;
    double area() const;  // +inf for unbounded variants
    double boundary_length() const;  // H^1 of the boundary; +inf for unbounded
    double diameter() const;         // +inf for unbounded

    /// Point on the boundary at arc-length parameter s (bounded variants),
    /// measured counterclockwise from vertices[0] / angle 0.
    cplx boundary_point(double s) const;

    /// JSON round trip; see README for the documented keys.
    static PlaneDomain from_json_file(const std::string& path);
    static PlaneDomain from_json_text(const std::string& text);
    std::string to_json_text() const;

  private:
    Variant v_;
};

/// Exact distance to the boundary polyline (graphs include the flat rays
/// beyond the support; half-plane and disk are exact).
double dist_to_boundary(const PlaneDomain& domain, cplx z);

/// Closest point of the boundary to z.
cplx nearest_boundary_point(const PlaneDomain& domain, cplx z);

/// Arc-length parameterizer with cached cumulative lengths (O(log n) lookup).
class BoundaryParam {
  public:
    explicit BoundaryParam(const PlaneDomain& domain);

    double total_length() const { return cum_.empty() ? 0.0 : cum_.back(); }
    cplx point(double s) const;
    /// Unit tangent at parameter s (edge direction; undefined at vertices).
    cplx tangent(double s) const;

  private:
    const PlaneDomain* domain_;
    std::vector<cplx> verts_;   // closed polyline, first vertex repeated at end
    std::vector<double> cum_;   // cum_[i] = arc length up to verts_[i]
};

/// Chord-arc constant measured over all vertex pairs of a closed polyline.
double measure_chord_arc_constant(const std::vector<cplx>& vertices);

}  // namespace beurlab
