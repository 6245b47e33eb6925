//
// hyperbolic.hpp — upper half-plane model machinery: geodesic distance,
// geodesic chords and orthogonality, equitangency from the boundary line,
// width profiles along tangency chords, and a constant-width witness built
// from geodesic circles (a rounded hyperbolic Reuleaux triangle).
//
#pragma once

#include <array>
#include <vector>

#include "eqt/curves2d.hpp"

namespace eqt {

struct HalfPlanePoint {
    double x;
    double y;

    HalfPlanePoint(double xx, double yy) : x(xx), y(yy) {
        if (!(y > 0.0)) fail("NotInUpperHalfPlane", "point must have y > 0");
    }
    Point2 to_point() const { return {x, y}; }
    static HalfPlanePoint from(Point2 p) { return {p.x, p.y}; }
};

//! Geodesic distance in the upper half-plane model:
//! cosh d = 1 + |p - q|^2 / (2 p_y q_y).
inline double hyp_distance(HalfPlanePoint p, HalfPlanePoint q) {
    const double d2 = (p.to_point() - q.to_point()).norm2();
    const double c = 1.0 + d2 / (2.0 * p.y * q.y);
    return std::acosh(std::max(1.0, c));
}

//! The hyperbolic circle about `center` with hyperbolic radius rho is the
//! Euclidean circle below.
inline Circle2 euclidean_circle_of_hyperbolic(HalfPlanePoint center, double rho) {
    return Circle2({center.x, center.y * std::cosh(rho)}, center.y * std::sinh(rho));
}

//! Hyperbolic disk as a support-function curve (its boundary circle).
inline SupportCurve hyperbolic_disk_curve(HalfPlanePoint center, double rho) {
    const Circle2 c = euclidean_circle_of_hyperbolic(center, rho);
    return SupportCurve::circle(c.radius, c.center);
}

// ---------------------------------------------------------------------------
// Geodesics
// ---------------------------------------------------------------------------

//! Point on the geodesic through `from` and `through`, beyond `through` by
//! hyperbolic distance `extra` (extra may be negative to back off).
inline HalfPlanePoint extend_along_geodesic(HalfPlanePoint from, HalfPlanePoint through,
                                            double extra) {
    if (std::abs(from.x - through.x) < 1e-12 * (1.0 + std::abs(from.x) + std::abs(through.x))) {
        // vertical geodesic: arclength parameter is log y
        const double dir = through.y > from.y ? 1.0 : -1.0;
        return {through.x, through.y * std::exp(dir * extra)};
    }
    const double cx = (through.to_point().norm2() - from.to_point().norm2()) /
                      (2.0 * (through.x - from.x));
    const double r = (from.to_point() - Point2{cx, 0.0}).norm();
    // On the semicircle (cx + r cos phi, r sin phi) the hyperbolic arclength
    // parameter is u(phi) = log tan(phi / 2).
    auto u_of = [&](HalfPlanePoint p) {
        const double phi = std::atan2(p.y, p.x - cx);
        return std::log(std::tan(0.5 * phi));
    };
    const double uf = u_of(from), ut = u_of(through);
    const double un = ut + (ut > uf ? extra : -extra);
    const double phi = 2.0 * std::atan(std::exp(un));
    return {cx + r * std::cos(phi), r * std::sin(phi)};
}

//! Geodesic segment: carried by a circle centered on the boundary line, or
//! by a vertical line in the degenerate case.
struct GeodesicChord {
    bool vertical;
    Circle2 carrier;  // vertical chords keep a placeholder carrier
    double x_line;    // vertical case: the line x = x_line
    HalfPlanePoint p, q;

    Vec2 tangent_at(Point2 at) const {
        if (vertical) return {0.0, 1.0};
        return (at - carrier.center).normalized().perp();
    }
};

inline GeodesicChord geodesic_chord(HalfPlanePoint p, HalfPlanePoint q) {
    if (std::abs(p.x - q.x) < 1e-12 * (1.0 + std::abs(p.x) + std::abs(q.x)))
        return {true, Circle2({p.x, 0.0}, 1.0), p.x, p, q};
    const double cx =
        (q.to_point().norm2() - p.to_point().norm2()) / (2.0 * (q.x - p.x));
    const double r = (p.to_point() - Point2{cx, 0.0}).norm();
    return {false, Circle2({cx, 0.0}, r), 0.0, p, q};
}

//! Chord carried by the circle centered at (x0, 0); endpoints must lie on it.
inline GeodesicChord geodesic_chord_on_circle(double x0, double radius, HalfPlanePoint p,
                                              HalfPlanePoint q) {
    const Circle2 carrier({x0, 0.0}, radius);
    for (const HalfPlanePoint& e : {p, q})
        if (std::abs((e.to_point() - carrier.center).norm() - radius) > kGeomTol)
            fail("EndpointMismatch", "chord endpoint is not on the carrier circle");
    return {false, carrier, 0.0, p, q};
}

// ---------------------------------------------------------------------------
// Orthogonality and equitangency from the boundary line
// ---------------------------------------------------------------------------

//! |cos| of the Euclidean angle between the chord carrier and the curve at
//! each endpoint. The model is conformal, so 0 means hyperbolically
//! orthogonal.
template <PlanarConvexCurve Curve>
std::pair<double, double> orthogonality_residual(const GeodesicChord& chord, const Curve& curve,
                                                 double param_p, double param_q) {
    const Point2 cp = curve.point_at(param_p);
    const Point2 cq = curve.point_at(param_q);
    if (distance(cp, chord.p.to_point()) > kGeomTol || distance(cq, chord.q.to_point()) > kGeomTol)
        fail("EndpointMismatch", "chord endpoints do not coincide with the curve points");
    const double rp = std::abs(dot(chord.tangent_at(cp), curve.tangent_at(param_p)));
    const double rq = std::abs(dot(chord.tangent_at(cq), curve.tangent_at(param_q)));
    return {rp, rq};
}

template <PlanarConvexCurve Curve>
void require_above_boundary(const Curve& curve) {
    for (const Point2& p : sample_points(curve, 720))
        if (!(p.y > kGeomTol))
            fail("NotInUpperHalfPlane", "curve must lie strictly above the boundary line");
}

struct BoundaryEquitangency {
    double max_residual = 0.0;
    double worst_x = 0.0;
};

//! max over samples x of | L1 - L2 | for the tangent segments from (x, 0).
template <TangentQueryable Curve>
BoundaryEquitangency equitangent_from_boundary_residual(const Curve& curve,
                                                        const std::vector<double>& x_samples) {
    require_above_boundary(curve);
    BoundaryEquitangency out;
    for (double x : x_samples) {
        const auto [t1, t2] = tangents_from_point(curve, Point2{x, 0.0});
        const double r = std::abs(t1.length - t2.length);
        if (r > out.max_residual) {
            out.max_residual = r;
            out.worst_x = x;
        }
    }
    return out;
}

struct WidthSample {
    double x;      // boundary sample
    double len1;   // the two Euclidean tangent-segment lengths
    double len2;
    double width;  // hyperbolic length of the tangency chord
};

//! Width profile along the double normals realized as tangency chords: for
//! each boundary sample the chord joins the two tangency points along the
//! geodesic circle centered at (x, 0). Constant profile means constant
//! hyperbolic width.
template <TangentQueryable Curve>
std::vector<WidthSample> hyperbolic_width_profile(const Curve& curve,
                                                  const std::vector<double>& x_samples,
                                                  double equitangency_tol = 1e-6) {
    require_above_boundary(curve);
    std::vector<WidthSample> rows;
    rows.reserve(x_samples.size());
    for (double x : x_samples) {
        const auto [t1, t2] = tangents_from_point(curve, Point2{x, 0.0});
        if (std::abs(t1.length - t2.length) > equitangency_tol)
            fail("NotEquitangentAtSample",
                 "tangent lengths differ by " + std::to_string(std::abs(t1.length - t2.length)) +
                     " at x = " + std::to_string(x));
        const double w =
            hyp_distance(HalfPlanePoint::from(t1.point), HalfPlanePoint::from(t2.point));
        rows.push_back({x, t1.length, t2.length, w});
    }
    return rows;
}

inline std::pair<double, double> width_profile_range(const std::vector<WidthSample>& rows) {
    double lo = rows.empty() ? 0.0 : rows.front().width;
    double hi = lo;
    for (const WidthSample& r : rows) {
        lo = std::min(lo, r.width);
        hi = std::max(hi, r.width);
    }
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// Constant-width witness
// ---------------------------------------------------------------------------

//! Three mutually equidistant hyperbolic points (pairwise distance w),
//! symmetric about the y-axis, anchored at height y0.
inline std::array<HalfPlanePoint, 3> equilateral_hyperbolic_centers(double w, double y0 = 1.0) {
    const double s = std::sinh(0.5 * w);
    const double t = y0 * s;
    const double disc = s * s * (3.0 + 4.0 * s * s);
    const double y3 = y0 * (1.0 + 2.0 * s * s + std::sqrt(disc));
    return {HalfPlanePoint{-t, y0}, HalfPlanePoint{t, y0}, HalfPlanePoint{0.0, y3}};
}

struct HyperbolicReuleaux {
    ArcSplineCurve curve;
    std::array<HalfPlanePoint, 3> centers;
    double width;    // hyperbolic width w + 2 eps
    double epsilon;  // hyperbolic rounding radius
};

//! Reuleaux triangle over three geodesic circles of hyperbolic radius
//! w + eps about mutually w-distant centers, rounded by hyperbolic radius
//! eps. All pieces are Euclidean circular arcs in the model, so the result
//! is an ordinary arc spline of constant hyperbolic width w + 2 eps.
inline HyperbolicReuleaux build_hyperbolic_reuleaux(double w, double eps, double y0 = 1.0) {
    if (!(w > 0.0)) fail("NonPositiveWidth", "hyperbolic width must be positive");
    if (eps < 0.0) fail("NegativeEpsilon", "rounding radius must be >= 0");
    std::array<HalfPlanePoint, 3> c = equilateral_hyperbolic_centers(w, y0);
    if (cross(c[1].to_point() - c[0].to_point(), c[2].to_point() - c[0].to_point()) < 0.0)
        std::swap(c[1], c[2]);

    std::array<Circle2, 3> big = {euclidean_circle_of_hyperbolic(c[0], w + eps),
                                  euclidean_circle_of_hyperbolic(c[1], w + eps),
                                  euclidean_circle_of_hyperbolic(c[2], w + eps)};
    // e[i][j]: point beyond c[j] on the geodesic from c[i], at distance
    // w + eps from c[i]. For eps = 0 this is c[j] itself.
    std::array<std::array<Point2, 3>, 3> e{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            e[std::size_t(i)][std::size_t(j)] =
                eps == 0.0 ? c[std::size_t(j)].to_point()
                           : extend_along_geodesic(c[std::size_t(i)], c[std::size_t(j)], eps)
                                 .to_point();
        }

    auto build = [&]() {
        std::vector<Arc2> arcs;
        for (int i = 0; i < 3; ++i) {
            const std::size_t iu = std::size_t(i);
            const std::size_t n1 = std::size_t((i + 1) % 3);
            const std::size_t n2 = std::size_t((i + 2) % 3);
            const double b0 = (e[iu][n1] - big[iu].center).angle();
            const double b1 = (e[iu][n2] - big[iu].center).angle();
            arcs.emplace_back(big[iu], b0, b1, true);
            // corner/small arc at vertex n2, between big(i) and big(n1);
            // its normal cone is read off the adjacent big circles.
            const double s1 = (e[n1][n2] - big[n1].center).angle();
            const Circle2 small_circle = eps == 0.0
                                             ? Circle2(c[n2].to_point(), 0.0)
                                             : euclidean_circle_of_hyperbolic(c[n2], eps);
            arcs.emplace_back(small_circle, b1, s1, true);
        }
        return arcs;
    };
    auto turning = [](const std::vector<Arc2>& arcs) {
        double t = 0.0;
        for (const Arc2& a : arcs) t += a.sweep();
        return t;
    };
    std::vector<Arc2> arcs = build();
    if (std::abs(turning(arcs) - kTwoPi) > 1e-6) {
        // wrong cyclic sense: the convex loop uses the complementary arcs
        // traversed in reverse order
        std::reverse(arcs.begin(), arcs.end());
        for (Arc2& a : arcs) std::swap(a.a0, a.a1);
    }
    if (std::abs(turning(arcs) - kTwoPi) > 1e-6)
        fail("ArcsDoNotClose", "hyperbolic Reuleaux assembly does not close");
    ArcSplineCurve curve(std::move(arcs));
    const ArcSplineValidation val = curve.validate();
    if (!val.c1(1e-9, 1e-9) || !val.convex_closed())
        fail("ArcsDoNotClose", "hyperbolic Reuleaux assembly failed validation");
    return HyperbolicReuleaux{std::move(curve), c, w + 2.0 * eps, eps};
}

} // namespace eqt
