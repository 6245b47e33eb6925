//
// io.hpp — curve serialization (JSON), CSV reports, and SVG rendering of
// curves, curve pairs, and locus scans.
//
#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "eqt/curves2d.hpp"
#include "eqt/ovaloid3d.hpp"

namespace eqt::io {

using json = nlohmann::json;

using PlanarCurve = std::variant<SupportCurve, ArcSplineCurve>;

//! %.17g rendering used for all CSV output.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Curve JSON
// ---------------------------------------------------------------------------

inline json to_json(const ArcSplineCurve& curve) {
    json arcs = json::array();
    for (const Arc2& a : curve.arcs())
        arcs.push_back({{"cx", a.circle.center.x},
                        {"cy", a.circle.center.y},
                        {"r", a.circle.radius},
                        {"a0", a.a0},
                        {"a1", a.a1},
                        {"ccw", a.ccw}});
    return {{"type", "arcspline"}, {"arcs", arcs}};
}

inline json to_json(const SupportCurve& curve, int n_samples = 256) {
    json samples = json::array();
    for (int i = 0; i < n_samples; ++i) {
        const double t = kTwoPi * double(i) / double(n_samples);
        samples.push_back({{"theta", t}, {"h", curve.h(t)}});
    }
    return {{"type", "support"}, {"samples", samples}};
}

inline json to_json(const PlanarCurve& curve) {
    return std::visit([](const auto& c) { return to_json(c); }, curve);
}

inline PlanarCurve curve_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        fail("BadCurveFile", "curve object must carry a \"type\" field");
    const std::string type = j.at("type").get<std::string>();
    if (type == "arcspline") {
        std::vector<Arc2> arcs;
        for (const json& a : j.at("arcs"))
            arcs.emplace_back(Circle2({a.at("cx").get<double>(), a.at("cy").get<double>()},
                                      a.at("r").get<double>()),
                              a.at("a0").get<double>(), a.at("a1").get<double>(),
                              a.value("ccw", true));
        return ArcSplineCurve(std::move(arcs));
    }
    if (type == "support") {
        const json& samples = j.at("samples");
        const std::size_t n = samples.size();
        if (n < 8) fail("BadCurveFile", "support curve needs at least 8 samples");
        std::vector<double> h;
        h.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double expect = kTwoPi * double(i) / double(n);
            if (std::abs(samples[i].at("theta").get<double>() - expect) > 1e-9)
                fail("BadCurveFile", "support samples must sit on the uniform theta grid");
            h.push_back(samples[i].at("h").get<double>());
        }
        return SupportCurve::from_samples(h);
    }
    fail("BadCurveFile", "unknown curve type \"" + type + "\"");
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("FileNotFound", path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail("BadJsonFile", std::string("JSON parse error: ") + e.what());
    }
    return j;
}

//! Accepts a bare curve object or a construction output carrying "gamma".
inline PlanarCurve load_curve(const std::string& path) {
    const json j = read_json_file(path);
    if (j.is_object() && j.contains("gamma")) return curve_from_json(j.at("gamma"));
    return curve_from_json(j);
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("FileNotWritable", path);
    out << content;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

struct WidthCsvRow {
    double x, len1, len2, width;
};

inline std::string width_profile_csv(const std::vector<WidthCsvRow>& rows) {
    std::string out = "x,L1,L2,width\n";
    for (const WidthCsvRow& r : rows)
        out += format_double(r.x) + "," + format_double(r.len1) + "," + format_double(r.len2) +
               "," + format_double(r.width) + "\n";
    return out;
}

//! Contact curve as an ordered CSV polyline (the curve closes up).
inline std::string contact_curve_csv(const ContactCurve& cc) {
    std::string out = "x,y,z\n";
    for (const Vec3& p : cc.points)
        out += format_double(p.x) + "," + format_double(p.y) + "," + format_double(p.z) + "\n";
    return out;
}

inline std::string locus_csv(const LocusScan& scan) {
    std::string out = "x,y,z,spread\n";
    for (const LocusRow& r : scan.exterior_rows)
        out += format_double(r.point.x) + "," + format_double(r.point.y) + "," +
               format_double(r.point.z) + "," + format_double(r.spread) + "\n";
    return out;
}

inline std::vector<LocusRow> parse_locus_csv(const std::string& text) {
    std::vector<LocusRow> rows;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) fail("BadScanFile", "empty CSV");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        LocusRow r{{0, 0, 0}, 0};
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &r.point.x, &r.point.y, &r.point.z,
                        &r.spread) != 4)
            fail("BadScanFile", "malformed CSV row: " + line);
        rows.push_back(r);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

//! Minimal SVG scene builder; math y axis points up, flipped on emission.
class SvgScene {
public:
    void add_arcspline(const ArcSplineCurve& curve, const std::string& stroke = "#1f4fa0") {
        std::string d;
        bool first = true;
        for (const Arc2& a : curve.arcs()) {
            if (a.circle.radius == 0.0) continue;
            if (first) {
                d += move_to(a.start_point());
                first = false;
            }
            d += arc_path(a);
        }
        paths_.push_back({d + " Z", stroke, stroke_width_, "none"});
        grow(bounding_box(curve));
    }

    void add_support_curve(const SupportCurve& curve, const std::string& stroke = "#1f4fa0") {
        std::string d = move_to(curve.point_at(0.0));
        for (int i = 1; i <= 720; ++i)
            d += line_to(curve.point_at(kTwoPi * double(i) / 720.0));
        paths_.push_back({d + " Z", stroke, stroke_width_, "none"});
        grow(bounding_box(curve));
    }

    void add_curve(const PlanarCurve& curve, const std::string& stroke = "#1f4fa0") {
        std::visit([&](const auto& c) { add(c, stroke); }, curve);
    }

    void add_segment(Point2 a, Point2 b, const std::string& stroke = "#888888",
                     bool dashed = false) {
        paths_.push_back({move_to(a) + line_to(b), stroke,
                          stroke_width_ * 0.6, "none", dashed});
        grow_point(a);
        grow_point(b);
    }

    void add_polygon(const std::vector<Point2>& pts, const std::string& stroke = "#222222") {
        if (pts.empty()) return;
        std::string d = move_to(pts[0]);
        for (std::size_t i = 1; i < pts.size(); ++i) d += line_to(pts[i]);
        paths_.push_back({d + " Z", stroke, stroke_width_, "none"});
        for (const Point2& p : pts) grow_point(p);
    }

    void add_dot(Point2 p, const std::string& fill = "#000000") {
        dots_.push_back({p, fill});
        grow_point(p);
    }

    //! Infinite line clipped to the current extent (call after the content).
    void add_line(const Line2& line, const std::string& stroke = "#c03030") {
        pending_lines_.push_back({line, stroke});
    }

    std::string str() const {
        Box2 box = box_;
        if (!has_content_) box = {{-1.0, -1.0}, {1.0, 1.0}};
        const double margin = 0.08 * std::max(1e-9, box.diagonal());
        box.min -= Vec2{margin, margin};
        box.max += Vec2{margin, margin};
        std::string body;
        for (const auto& [line, stroke] : pending_lines_) {
            const double reach = box.diagonal();
            const Point2 mid = project_onto_line(box.center(), line);
            body += path_element({move_to(mid - reach * line.dir) + line_to(mid + reach * line.dir),
                                  stroke, stroke_width_ * 0.8, "none"});
        }
        for (const auto& p : paths_) body += path_element(p);
        for (const auto& [p, fill] : dots_) {
            body += "<circle cx=\"" + num(p.x) + "\" cy=\"" + num(-p.y) + "\" r=\"" +
                    num(dot_radius_) + "\" fill=\"" + fill + "\"/>\n";
        }
        std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(box.min.x) + " " +
               num(-box.max.y) + " " + num(box.max.x - box.min.x) + " " +
               num(box.max.y - box.min.y) + "\">\n";
        out += body;
        out += "</svg>\n";
        return out;
    }

    void set_stroke_width(double w) { stroke_width_ = w; }
    void set_dot_radius(double r) { dot_radius_ = r; }

private:
    struct PathSpec {
        std::string d, stroke;
        double width;
        std::string fill;
        bool dashed = false;
    };

    void add(const ArcSplineCurve& c, const std::string& stroke) { add_arcspline(c, stroke); }
    void add(const SupportCurve& c, const std::string& stroke) { add_support_curve(c, stroke); }

    static std::string num(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.8g", v);
        return buf;
    }
    static std::string move_to(Point2 p) { return "M " + num(p.x) + " " + num(-p.y) + " "; }
    static std::string line_to(Point2 p) { return "L " + num(p.x) + " " + num(-p.y) + " "; }

    //! Arc as <= 90-degree SVG segments; a math-ccw arc maps to sweep flag 0
    //! after the y flip.
    static std::string arc_path(const Arc2& a) {
        std::string d;
        const double sweep = a.sweep();
        const int pieces = std::max(1, int(std::ceil(sweep / (kPi / 2.0))));
        for (int i = 1; i <= pieces; ++i) {
            const double ang =
                a.ccw ? a.a0 + sweep * double(i) / pieces : a.a0 - sweep * double(i) / pieces;
            const Point2 p = a.point_at_angle(ang);
            d += "A " + num(a.circle.radius) + " " + num(a.circle.radius) + " 0 0 " +
                 (a.ccw ? "0" : "1") + " " + num(p.x) + " " + num(-p.y) + " ";
        }
        return d;
    }

    std::string path_element(const PathSpec& p) const {
        std::string e = "<path d=\"" + p.d + "\" fill=\"" + p.fill + "\" stroke=\"" + p.stroke +
                        "\" stroke-width=\"" + num(p.width) + "\"";
        if (p.dashed) e += " stroke-dasharray=\"" + num(p.width * 4.0) + "\"";
        return e + "/>\n";
    }

    void grow(const Box2& b) {
        grow_point(b.min);
        grow_point(b.max);
    }
    void grow_point(Point2 p) {
        if (!has_content_) {
            box_ = {p, p};
            has_content_ = true;
            return;
        }
        box_.min.x = std::min(box_.min.x, p.x);
        box_.min.y = std::min(box_.min.y, p.y);
        box_.max.x = std::max(box_.max.x, p.x);
        box_.max.y = std::max(box_.max.y, p.y);
    }

    std::vector<PathSpec> paths_;
    std::vector<std::pair<Point2, std::string>> dots_;
    std::vector<std::pair<Line2, std::string>> pending_lines_;
    Box2 box_{{0, 0}, {0, 0}};
    bool has_content_ = false;
    double stroke_width_ = 0.035;
    double dot_radius_ = 0.05;
};

//! Render a curve file (bare curve or construction output) in the style of
//! the planar figures: curve in blue, the locus line in red, tangent
//! segments dashed, polygon in black.
inline std::string render_construction_svg(const json& j) {
    SvgScene scene;
    if (j.is_object() && j.contains("gamma")) {
        const PlanarCurve gamma = curve_from_json(j.at("gamma"));
        scene.add_curve(gamma);
        auto point_of = [](const json& arr) {
            return Point2{arr.at(0).get<double>(), arr.at(1).get<double>()};
        };
        if (j.contains("Gamma")) {
            std::vector<Point2> poly;
            for (const json& v : j.at("Gamma")) poly.push_back(point_of(v));
            scene.add_polygon(poly);
            for (const Point2& p : poly) scene.add_dot(p);
        }
        if (j.contains("vertices")) {
            std::vector<Point2> vs;
            for (const json& v : j.at("vertices")) vs.push_back(point_of(v));
            scene.add_polygon(vs, "#777777");
            for (const Point2& p : vs) scene.add_dot(p);
        }
        if (j.contains("tangency")) {
            const json& t = j.at("tangency");
            const Point2 x = point_of(j.at("x")), y = point_of(j.at("y"));
            for (const char* k : {"a", "b"})
                scene.add_segment(x, point_of(t.at(k)), "#888888", true);
            for (const char* k : {"c", "d"})
                scene.add_segment(y, point_of(t.at(k)), "#888888", true);
            for (const char* k : {"a", "b", "c", "d"}) scene.add_dot(point_of(t.at(k)));
            scene.add_dot(x);
            scene.add_dot(y);
        }
        if (j.contains("ell")) {
            const json& l = j.at("ell");
            scene.add_line(Line2({l.at("px").get<double>(), l.at("py").get<double>()},
                                 {l.at("dx").get<double>(), l.at("dy").get<double>()}));
        }
    } else {
        scene.add_curve(curve_from_json(j));
    }
    return scene.str();
}

//! Scatter of a locus scan projected to the (x, z) plane; members within
//! tol are emphasized.
inline std::string render_scan_svg(const std::vector<LocusRow>& rows, double tol) {
    SvgScene scene;
    scene.set_dot_radius(0.03);
    // axes
    scene.add_segment({-1.0, 0.0}, {1.0, 0.0}, "#bbbbbb");
    scene.add_segment({0.0, -1.0}, {0.0, 1.0}, "#bbbbbb");
    for (const LocusRow& r : rows) {
        const Point2 p{r.point.x, r.point.z};
        if (r.spread < tol)
            scene.add_dot(p, "#c03030");
    }
    return scene.str();
}

} // namespace eqt::io
