#include "beurlab/plane_domain.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace beurlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double dist_point_segment(cplx z, cplx a, cplx b) {
    cplx d = b - a;
    double L2 = std::norm(d);
    if (L2 == 0.0) return std::abs(z - a);
    double t = std::clamp(((z - a).real() * d.real() + (z - a).imag() * d.imag()) / L2, 0.0, 1.0);
    return std::abs(z - (a + t * d));
}

cplx closest_point_segment(cplx z, cplx a, cplx b) {
    cplx d = b - a;
    double L2 = std::norm(d);
    if (L2 == 0.0) return a;
    double t = std::clamp(((z - a).real() * d.real() + (z - a).imag() * d.imag()) / L2, 0.0, 1.0);
    return a + t * d;
}

bool polygon_is_simple(const std::vector<cplx>& v) {
    auto segs_intersect = [](cplx p1, cplx p2, cplx q1, cplx q2) {
        auto orient = [](cplx a, cplx b, cplx c) {
            double r = cross(b - a, c - a);
            return (r > 0) - (r < 0);
        };
        int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
        int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
        return o1 != o2 && o3 != o4;
    };
    std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        cplx a = v[i], b = v[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segs_intersect(a, b, v[j], v[(j + 1) % n])) return false;
        }
    }
    return true;
}

double signed_area(const std::vector<cplx>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * s;
}

}  // namespace

PlaneDomain::PlaneDomain(Variant v) : v_(std::move(v)) {
    if (auto* d = std::get_if<Disk>(&v_)) {
        if (d->radius <= 0.0) throw std::invalid_argument("Disk: radius must be positive");
    } else if (auto* hp = std::get_if<HalfPlane>(&v_)) {
        double n = std::abs(hp->direction);
        if (n == 0.0) throw std::invalid_argument("HalfPlane: zero direction");
        hp->direction /= n;
    } else if (auto* pg = std::get_if<LipschitzPolygon>(&v_)) {
        auto& vs = pg->vertices;
        if (vs.size() < 3) throw std::invalid_argument("LipschitzPolygon: need >= 3 vertices");
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (std::abs(vs[i] - vs[(i + 1) % vs.size()]) == 0.0)
                throw std::invalid_argument("LipschitzPolygon: repeated consecutive vertices");
        if (!polygon_is_simple(vs)) throw std::invalid_argument("LipschitzPolygon: not simple");
        if (signed_area(vs) < 0.0) std::reverse(vs.begin(), vs.end());
        if (pg->chord_arc_constant < 1.0) pg->chord_arc_constant = measure_chord_arc_constant(vs);
        if (pg->flatness_radius <= 0.0) {
            double L = 0.0;
            for (std::size_t i = 0; i < vs.size(); ++i) L = std::max(L, std::abs(vs[i] - vs[(i + 1) % vs.size()]));
            pg->flatness_radius = L;
        }
    }
}

PlaneDomain PlaneDomain::half_plane(cplx point, cplx direction) {
    return PlaneDomain(HalfPlane{point, direction});
}
PlaneDomain PlaneDomain::disk(cplx center, double radius) { return PlaneDomain(Disk{center, radius}); }
PlaneDomain PlaneDomain::graph(LipschitzGraph g) { return PlaneDomain(GraphDomain{std::move(g)}); }
PlaneDomain PlaneDomain::polygon(std::vector<cplx> vertices) {
    LipschitzPolygon p;
    p.vertices = std::move(vertices);
    p.chord_arc_constant = 0.0;
    return PlaneDomain(std::move(p));
}

PlaneDomain PlaneDomain::circle_polygon(cplx center, double radius, int n) {
    std::vector<cplx> vs;
    vs.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        double th = 2.0 * pi * double(i) / double(n);
        vs.push_back(center + radius * cplx(std::cos(th), std::sin(th)));
    }
    return polygon(std::move(vs));
}

bool PlaneDomain::is_bounded() const {
    return std::holds_alternative<Disk>(v_) || std::holds_alternative<LipschitzPolygon>(v_);
}

bool PlaneDomain::contains(cplx z) const {
    return std::visit(
        [&](const auto& d) -> bool {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, HalfPlane>) {
                return cross(d.direction, z - d.point) > 0.0;
            } else if constexpr (std::is_same_v<T, Disk>) {
                return std::abs(z - d.center) < d.radius;
            } else if constexpr (std::is_same_v<T, GraphDomain>) {
                return z.imag() > d.graph.value(z.real());
            } else {
                // even-odd crossing rule
                const auto& vs = d.vertices;
                bool in = false;
                for (std::size_t i = 0, j = vs.size() - 1; i < vs.size(); j = i++) {
                    bool c = (vs[i].imag() <= z.imag()) != (vs[j].imag() <= z.imag());
                    if (!c) continue;
                    double xint = vs[i].real() + (z.imag() - vs[i].imag()) *
                                                     (vs[j].real() - vs[i].real()) /
                                                     (vs[j].imag() - vs[i].imag());
                    if (xint > z.real()) in = !in;
                }
                return in;
            }
        },
        v_);
}

double PlaneDomain::area() const {
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Disk>)
                return pi * d.radius * d.radius;
            else if constexpr (std::is_same_v<T, LipschitzPolygon>)
                return std::abs(signed_area(d.vertices));
            else
                return kInf;
        },
        v_);
}

double PlaneDomain::boundary_length() const {
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return 2.0 * pi * d.radius;
            } else if constexpr (std::is_same_v<T, LipschitzPolygon>) {
                double L = 0.0;
                for (std::size_t i = 0; i < d.vertices.size(); ++i)
                    L += std::abs(d.vertices[(i + 1) % d.vertices.size()] - d.vertices[i]);
                return L;
            } else {
                return kInf;
            }
        },
        v_);
}

double PlaneDomain::diameter() const {
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return 2.0 * d.radius;
            } else if constexpr (std::is_same_v<T, LipschitzPolygon>) {
                double m = 0.0;
                for (std::size_t i = 0; i < d.vertices.size(); ++i)
                    for (std::size_t j = i + 1; j < d.vertices.size(); ++j)
                        m = std::max(m, std::abs(d.vertices[i] - d.vertices[j]));
                return m;
            } else {
                return kInf;
            }
        },
        v_);
}

cplx PlaneDomain::boundary_point(double s) const {
    if (auto* d = std::get_if<Disk>(&v_)) {
        double th = s / d->radius;
        return d->center + d->radius * cplx(std::cos(th), std::sin(th));
    }
    if (auto* pg = std::get_if<LipschitzPolygon>(&v_)) {
        double L = boundary_length();
        s = std::fmod(s, L);
        if (s < 0.0) s += L;
        const auto& vs = pg->vertices;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            cplx a = vs[i], b = vs[(i + 1) % vs.size()];
            double el = std::abs(b - a);
            if (s <= el) return a + (s / el) * (b - a);
            s -= el;
        }
        return vs[0];
    }
    throw std::invalid_argument("boundary_point: arc-length parameterization needs a bounded domain");
}

double dist_to_boundary(const PlaneDomain& domain, cplx z) {
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, HalfPlane>) {
                cplx n(-d.direction.imag(), d.direction.real());
                return std::abs((z - d.point).real() * n.real() + (z - d.point).imag() * n.imag());
            } else if constexpr (std::is_same_v<T, Disk>) {
                return std::abs(std::abs(z - d.center) - d.radius);
            } else if constexpr (std::is_same_v<T, GraphDomain>) {
                const auto& g = d.graph;
                double best = std::abs(z.imag());  // flat rays y = 0
                // only cells within |x - Re z| <= best + ... can improve; scan with pruning
                double x = z.real();
                for (std::size_t i = 0; i < g.cell_count(); ++i) {
                    double xa = g.function().x_at(i);
                    double dxh = std::max(0.0, std::max(xa - x, x - (xa + g.grid_step())));
                    if (dxh >= best) continue;
                    best = std::min(best, dist_point_segment(z, g.vertex(i), g.vertex(i + 1)));
                }
                return best;
            } else {
                double best = kInf;
                const auto& vs = d.vertices;
                for (std::size_t i = 0; i < vs.size(); ++i)
                    best = std::min(best, dist_point_segment(z, vs[i], vs[(i + 1) % vs.size()]));
                return best;
            }
        },
        domain.variant());
}

cplx nearest_boundary_point(const PlaneDomain& domain, cplx z) {
    return std::visit(
        [&](const auto& d) -> cplx {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, HalfPlane>) {
                cplx u = d.direction;
                double t = (z - d.point).real() * u.real() + (z - d.point).imag() * u.imag();
                return d.point + t * u;
            } else if constexpr (std::is_same_v<T, Disk>) {
                cplx r = z - d.center;
                double m = std::abs(r);
                return m > 0.0 ? d.center + d.radius * r / m : d.center + cplx(d.radius, 0.0);
            } else if constexpr (std::is_same_v<T, GraphDomain>) {
                const auto& g = d.graph;
                cplx best(z.real(), 0.0);  // flat rays
                double bd = std::abs(z.imag());
                for (std::size_t i = 0; i < g.cell_count(); ++i) {
                    double xa = g.function().x_at(i);
                    double dxh = std::max(0.0, std::max(xa - z.real(), z.real() - (xa + g.grid_step())));
                    if (dxh >= bd) continue;
                    cplx c = closest_point_segment(z, g.vertex(i), g.vertex(i + 1));
                    double dd = std::abs(z - c);
                    if (dd < bd) {
                        bd = dd;
                        best = c;
                    }
                }
                return best;
            } else {
                cplx best = d.vertices[0];
                double bd = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < d.vertices.size(); ++i) {
                    cplx c = closest_point_segment(z, d.vertices[i],
                                                   d.vertices[(i + 1) % d.vertices.size()]);
                    double dd = std::abs(z - c);
                    if (dd < bd) {
                        bd = dd;
                        best = c;
                    }
                }
                return best;
            }
        },
        domain.variant());
}

BoundaryParam::BoundaryParam(const PlaneDomain& domain) : domain_(&domain) {
    if (auto* pg = domain.as_polygon()) {
        verts_ = pg->vertices;
        verts_.push_back(verts_.front());
    } else if (auto* d = domain.as_disk()) {
        // fine polyline for parameter lookups; disk geometry stays exact elsewhere
        int n = 4096;
        verts_.reserve(std::size_t(n) + 1);
        for (int i = 0; i <= n; ++i) {
            double th = 2.0 * pi * double(i) / double(n);
            verts_.push_back(d->center + d->radius * cplx(std::cos(th), std::sin(th)));
        }
    } else {
        throw std::invalid_argument("BoundaryParam: needs a bounded domain");
    }
    cum_.resize(verts_.size());
    cum_[0] = 0.0;
    for (std::size_t i = 1; i < verts_.size(); ++i)
        cum_[i] = cum_[i - 1] + std::abs(verts_[i] - verts_[i - 1]);
}

cplx BoundaryParam::point(double s) const {
    double L = total_length();
    s = std::fmod(s, L);
    if (s < 0.0) s += L;
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    auto i = std::size_t(std::max<std::ptrdiff_t>(1, it - cum_.begin())) - 1;
    if (i + 1 >= verts_.size()) i = verts_.size() - 2;
    double el = cum_[i + 1] - cum_[i];
    double t = el > 0.0 ? (s - cum_[i]) / el : 0.0;
    return verts_[i] + t * (verts_[i + 1] - verts_[i]);
}

cplx BoundaryParam::tangent(double s) const {
    double L = total_length();
    s = std::fmod(s, L);
    if (s < 0.0) s += L;
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    auto i = std::size_t(std::max<std::ptrdiff_t>(1, it - cum_.begin())) - 1;
    if (i + 1 >= verts_.size()) i = verts_.size() - 2;
    cplx d = verts_[i + 1] - verts_[i];
    double n = std::abs(d);
    return n > 0.0 ? d / n : cplx(1.0, 0.0);
}

double measure_chord_arc_constant(const std::vector<cplx>& vertices) {
    std::size_t n = vertices.size();
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        cum[i + 1] = cum[i] + std::abs(vertices[(i + 1) % n] - vertices[i]);
    double L = cum[n];
    double worst = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double arc = cum[j] - cum[i];
            arc = std::min(arc, L - arc);
            double chord = std::abs(vertices[j] - vertices[i]);
            if (chord > 0.0) worst = std::max(worst, arc / chord);
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// JSON I/O

namespace {

using nlohmann::json;

std::vector<double> load_csv_column_pair(const std::string& path, std::vector<double>& xs) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV file: " + path);
    std::vector<double> ys;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, y;
        if (!(ss >> x >> y)) {
            if (first) { first = false; continue; }  // header row
            throw std::runtime_error("bad CSV row in " + path + ": " + line);
        }
        first = false;
        xs.push_back(x);
        ys.push_back(y);
    }
    return ys;
}

LipschitzGraph graph_from_json(const json& j) {
    double slope_bound = j.value("slope_bound", 1.0);
    double support = j.at("support_radius").get<double>();
    std::vector<double> xs, ys;
    if (j.contains("samples_csv")) {
        ys = load_csv_column_pair(j.at("samples_csv").get<std::string>(), xs);
        if (xs.size() < 2) throw std::runtime_error("graph CSV: need >= 2 rows");
        double h = xs[1] - xs[0];
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            if (std::abs(xs[i + 1] - xs[i] - h) > 1e-9 * std::abs(h))
                throw std::runtime_error("graph CSV: x column must be uniformly spaced");
        return LipschitzGraph(xs[0], h, std::move(ys), slope_bound, support);
    }
    double origin = j.at("grid_origin").get<double>();
    double step = j.at("grid_step").get<double>();
    ys = j.at("samples").get<std::vector<double>>();
    return LipschitzGraph(origin, step, std::move(ys), slope_bound, support);
}

}  // namespace

PlaneDomain PlaneDomain::from_json_text(const std::string& text) {
    json j = json::parse(text);
    std::string variant = j.at("variant").get<std::string>();
    if (variant == "half_plane") {
        cplx p{j.value("point_x", 0.0), j.value("point_y", 0.0)};
        cplx d{j.value("direction_x", 1.0), j.value("direction_y", 0.0)};
        return half_plane(p, d);
    }
    if (variant == "disk") {
        cplx c{j.value("center_x", 0.0), j.value("center_y", 0.0)};
        return disk(c, j.at("radius").get<double>());
    }
    if (variant == "graph") return graph(graph_from_json(j));
    if (variant == "polygon") {
        std::vector<cplx> vs;
        for (const auto& v : j.at("vertices")) vs.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        return polygon(std::move(vs));
    }
    throw std::runtime_error("unknown domain variant: " + variant);
}

PlaneDomain PlaneDomain::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open domain file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string PlaneDomain::to_json_text() const {
    json j;
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, HalfPlane>) {
                j["variant"] = "half_plane";
                j["point_x"] = d.point.real();
                j["point_y"] = d.point.imag();
                j["direction_x"] = d.direction.real();
                j["direction_y"] = d.direction.imag();
            } else if constexpr (std::is_same_v<T, Disk>) {
                j["variant"] = "disk";
                j["center_x"] = d.center.real();
                j["center_y"] = d.center.imag();
                j["radius"] = d.radius;
            } else if constexpr (std::is_same_v<T, GraphDomain>) {
                j["variant"] = "graph";
                j["grid_origin"] = d.graph.function().origin;
                j["grid_step"] = d.graph.function().step;
                j["samples"] = d.graph.function().values;
                j["slope_bound"] = d.graph.slope_bound();
                j["support_radius"] = d.graph.support_radius();
            } else {
                j["variant"] = "polygon";
                json vs = json::array();
                for (cplx v : d.vertices) vs.push_back({v.real(), v.imag()});
                j["vertices"] = vs;
                j["chord_arc_constant"] = d.chord_arc_constant;
                j["flatness_radius"] = d.flatness_radius;
            }
        },
        v_);
    return j.dump(2);
}

}  // namespace beurlab
