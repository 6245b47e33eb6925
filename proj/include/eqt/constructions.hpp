//
// constructions.hpp — the two explicit planar constructions: the four-arc
// equitangent curve built from two circles and a pair of points on their
// radical axis, and the rounded Reuleaux polygon with its radical-axis
// polygon.
//
#pragma once

#include <tuple>
#include <vector>

#include "eqt/curves2d.hpp"

namespace eqt {

//! Build a counterclockwise convex loop from (circle, from, to) segments.
//! If the forward traversal does not turn by 2*pi, the complementary
//! traversal is tried; anything else does not close up convexly.
inline std::vector<Arc2> assemble_convex_loop(
    const std::vector<std::tuple<Circle2, Point2, Point2>>& chain) {
    auto build = [](const std::vector<std::tuple<Circle2, Point2, Point2>>& ch) {
        std::vector<Arc2> arcs;
        arcs.reserve(ch.size());
        for (const auto& [circle, from, to] : ch)
            arcs.emplace_back(circle, (from - circle.center).angle(),
                              (to - circle.center).angle(), true);
        return arcs;
    };
    auto turning = [](const std::vector<Arc2>& arcs) {
        double t = 0.0;
        for (const Arc2& a : arcs) t += a.sweep();
        return t;
    };
    std::vector<Arc2> arcs = build(chain);
    if (std::abs(turning(arcs) - kTwoPi) < 1e-6) return arcs;
    std::vector<std::tuple<Circle2, Point2, Point2>> flipped;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
        flipped.emplace_back(std::get<0>(*it), std::get<2>(*it), std::get<1>(*it));
    arcs = build(flipped);
    if (std::abs(turning(arcs) - kTwoPi) < 1e-6) return arcs;
    fail("ArcsDoNotClose", "arc chain does not close into a convex loop");
}

// ---------------------------------------------------------------------------
// Four-arc curve from two circles and two radical-axis viewing points
// ---------------------------------------------------------------------------

struct FigureOneCurve {
    ArcSplineCurve curve;
    Line2 axis;        // radical axis of the generator circles
    Point2 x, y;       // viewing points, snapped onto the axis
    Point2 a, b, c, d; // tangency points: a, c on c1; b, d on c2
};

namespace detail {

//! Tangency points on c1 and c2 from v whose tangent lines support the
//! union of both disks. A point outside the hull sees exactly two support
//! lines; the construction needs them to touch different circles.
inline std::pair<Point2, Point2> union_support_pair(Point2 v, const Circle2& c1,
                                                    const Circle2& c2) {
    auto supports = [&](const Circle2& mine, const Circle2& other) {
        std::vector<Point2> found;
        const auto [p1, p2] = tangent_points_to_circle(v, mine);
        for (const Point2& t : {p1, p2}) {
            const Line2 line(v, t - v);
            const double s_mine = signed_distance(mine.center, line);
            const double s_other = signed_distance(other.center, line);
            if (s_mine * s_other > 0.0 && std::abs(s_other) >= other.radius - kGeomTol)
                found.push_back(t);
        }
        return found;
    };
    const std::vector<Point2> on1 = supports(c1, c2);
    const std::vector<Point2> on2 = supports(c2, c1);
    if (on1.empty() && on2.empty())
        fail("PointInsideHull", "viewing point lies inside the hull of the two disks");
    if (on1.size() != 1 || on2.size() != 1)
        fail("ArcsDoNotClose", "support lines from the viewing point do not touch both circles");
    return {on1.front(), on2.front()};
}

//! Circle tangent to both tangent lines at the given tangency points: its
//! center is the intersection of the two circle normals. Equal tangent
//! lengths make it equidistant from both lines; checked, not assumed.
inline Circle2 bridging_circle(Point2 ta, const Circle2& ca, Point2 tb, const Circle2& cb) {
    Point2 o{0.0, 0.0};
    try {
        o = line_intersection(Line2(ta, ta - ca.center), Line2(tb, tb - cb.center));
    } catch (const Error&) {
        fail("ArcsDoNotClose", "tangency normals are parallel");
    }
    const double ra = distance(o, ta);
    const double rb = distance(o, tb);
    if (std::abs(ra - rb) > 1e-9 * (1.0 + ra))
        fail("ArcsDoNotClose", "bridging arc is not equidistant from its two tangent lines");
    return Circle2(o, 0.5 * (ra + rb));
}

} // namespace detail

//! Four-arc equitangent curve: arcs of the two given circles joined by two
//! bridging arcs tangent to the tangent lines from x and y. The viewing
//! points must lie on the radical axis (within axis_tol; they are snapped
//! onto it) and outside the hull of the two disks.
inline FigureOneCurve build_figure1(const Circle2& c1, const Circle2& c2, Point2 x, Point2 y,
                                    double axis_tol = 1e-2) {
    const Line2 axis = radical_axis(c1, c2);
    for (const Point2& v : {x, y})
        if (distance_to_line(v, axis) > axis_tol)
            fail("NotOnRadicalAxis", "viewing point is off the radical axis by " +
                                         std::to_string(distance_to_line(v, axis)));
    x = project_onto_line(x, axis);
    y = project_onto_line(y, axis);
    if (distance(x, y) < 1e-9) fail("ArcsDoNotClose", "the two viewing points coincide");
    for (const Point2& v : {x, y})
        if (power_of_point(v, c1) <= kGeomTol || power_of_point(v, c2) <= kGeomTol)
            fail("PointInsideHull", "viewing point is not exterior to both circles");

    const auto [a, b] = detail::union_support_pair(x, c1, c2);
    const auto [c, d] = detail::union_support_pair(y, c1, c2);

    const Circle2 bridge_x = detail::bridging_circle(a, c1, b, c2);
    const Circle2 bridge_y = detail::bridging_circle(d, c2, c, c1);

    const std::vector<Arc2> arcs = assemble_convex_loop({
        {bridge_x, a, b},
        {c2, b, d},
        {bridge_y, d, c},
        {c1, c, a},
    });
    // A bridging arc spans pi minus its wedge opening, so it must stay
    // under pi; the complementary (major) arc closes up convexly for some
    // non-interleaving inputs but is not tangent on the viewing-point side.
    for (const Arc2& arc : arcs)
        for (const Circle2& bridge : {bridge_x, bridge_y})
            if (distance(arc.circle.center, bridge.center) < 1e-12 && arc.sweep() >= kPi)
                fail("ArcsDoNotClose", "bridging arc does not fit inside its tangent wedge");
    ArcSplineCurve curve(arcs);
    const ArcSplineValidation val = curve.validate();
    if (!val.c1() || !val.convex_closed())
        fail("ArcsDoNotClose", "assembled curve fails the C1/convexity checks");
    return FigureOneCurve{std::move(curve), axis, x, y, a, b, c, d};
}

// ---------------------------------------------------------------------------
// Rounded Reuleaux polygon
// ---------------------------------------------------------------------------

struct RoundedReuleaux {
    ArcSplineCurve curve;
    std::vector<Point2> vertices; // the regular n-gon vertices
    double lambda;
    double epsilon;
};

//! Classical constant-width construction on a regular n-gon (odd n): arcs of
//! radius lambda+eps about each vertex between its two diagonals, joined by
//! corner arcs of radius eps. For eps = 0 the corner arcs have zero radius
//! and the curve is the classical Reuleaux polygon with corners there.
inline RoundedReuleaux build_rounded_reuleaux(int n, double lambda, double epsilon) {
    if (n < 3 || n % 2 == 0) fail("EvenN", "n must be an odd integer >= 3");
    if (!(lambda > 0.0)) fail("NonPositiveLambda", "diagonal length must be positive");
    if (epsilon < 0.0) fail("NegativeEpsilon", "rounding radius must be >= 0");

    const int m = (n - 1) / 2;
    // Circumradius such that the diagonals used by the construction have
    // length lambda.
    const double R = lambda / (2.0 * std::sin(double(m) * kPi / double(n)));
    std::vector<Point2> v;
    v.reserve(std::size_t(n));
    for (int k = 0; k < n; ++k)
        v.push_back(R * unit_vector(kPi / 2.0 + kTwoPi * double(k) / double(n)));
    auto vert = [&](int k) { return v[std::size_t(((k % n) + n) % n)]; };

    std::vector<Arc2> arcs;
    arcs.reserve(std::size_t(2 * n));
    for (int k = 0; k < n; ++k) {
        const Point2 vk = vert(k);
        const Point2 far1 = vert(k + m);
        const Point2 far2 = vert(k + m + 1);
        arcs.emplace_back(Circle2(vk, lambda + epsilon), (far1 - vk).angle(),
                          (far2 - vk).angle(), true);
        arcs.emplace_back(Circle2(far2, epsilon), (far2 - vk).angle(),
                          (far2 - vert(k + 1)).angle(), true);
    }
    ArcSplineCurve curve(std::move(arcs));
    const ArcSplineValidation val = curve.validate();
    if (!val.c1(1e-9, 1e-9) || !val.convex_closed())
        fail("ArcsDoNotClose", "Reuleaux assembly failed validation");
    return RoundedReuleaux{std::move(curve), std::move(v), lambda, epsilon};
}

// ---------------------------------------------------------------------------
// Radical-axis polygon
// ---------------------------------------------------------------------------

struct RadicalEdge {
    Line2 axis;           // radical axis carrying this edge
    Point2 from, to;      // consecutive polygon vertices
    Circle2 small_circle; // (V_i, eps)
    Circle2 big_circle;   // (V_j, lambda+eps), V_i V_j an n-gon side
    Vec2 side_dir;        // unit direction of that side
};

struct RadicalPolygon {
    std::vector<Point2> vertices; // 2n, counterclockwise
    std::vector<RadicalEdge> edges;
};

//! Regular 2n-gon whose edge lines are the radical axes of the vertex-circle
//! pairs (V_i, eps), (V_j, lambda+eps) over the n-gon sides V_i V_j, taken
//! with both roles of each side. Every boundary point is equitangent to the
//! rounded Reuleaux curve with the same parameters.
inline RadicalPolygon build_radical_polygon(int n, double lambda, double epsilon) {
    const RoundedReuleaux rr = build_rounded_reuleaux(n, lambda, epsilon);
    const auto& v = rr.vertices;

    struct AxisEntry {
        Line2 axis;
        Circle2 small_circle, big_circle;
        Vec2 side_dir;
        double foot_angle;
    };
    std::vector<AxisEntry> axes;
    axes.reserve(std::size_t(2 * n));
    for (int i = 0; i < n; ++i) {
        const Point2 vi = v[std::size_t(i)];
        const Point2 vj = v[std::size_t((i + 1) % n)];
        for (const auto& [small_c, big_c] : {std::pair{vi, vj}, std::pair{vj, vi}}) {
            const Circle2 cs(small_c, epsilon);
            const Circle2 cb(big_c, lambda + epsilon);
            const Line2 ax = radical_axis(cs, cb);
            const Point2 foot = project_onto_line({0.0, 0.0}, ax);
            axes.push_back({ax, cs, cb, (vj - vi).normalized(), foot.angle()});
        }
    }
    std::sort(axes.begin(), axes.end(),
              [](const AxisEntry& a, const AxisEntry& b) { return a.foot_angle < b.foot_angle; });

    RadicalPolygon poly;
    const std::size_t count = axes.size();
    for (std::size_t k = 0; k < count; ++k) {
        const AxisEntry& prev = axes[(k + count - 1) % count];
        const AxisEntry& cur = axes[k];
        const AxisEntry& next = axes[(k + 1) % count];
        const Point2 from = line_intersection(prev.axis, cur.axis);
        const Point2 to = line_intersection(cur.axis, next.axis);
        poly.vertices.push_back(from);
        poly.edges.push_back({cur.axis, from, to, cur.small_circle, cur.big_circle, cur.side_dir});
    }
    return poly;
}

//! n points spread uniformly along the open segment (a, b), endpoints excluded.
inline std::vector<Point2> segment_samples(Point2 a, Point2 b, int n) {
    std::vector<Point2> out;
    out.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        const double t = (double(i) + 0.5) / double(n);
        out.push_back(a + t * (b - a));
    }
    return out;
}

} // namespace eqt
