//
// geom2d.hpp — planar kernel: points, lines, circles, arcs, power of a
// point, radical axes, tangents from a point.
//
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace eqt {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Global geometric tolerance for on/outside/inside predicates, in absolute
// length units on unit-scale inputs.
inline constexpr double kGeomTol = 1e-9;

//! Error with a stable machine-readable name (printed by the CLI on stderr).
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& detail = "")
        : std::runtime_error(detail.empty() ? name : name + ": " + detail),
          name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void fail(std::string name, const std::string& detail = "") {
    throw Error(std::move(name), detail);
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double xx, double yy) : x(xx), y(yy) {}

    Vec2 operator+(Vec2 v) const { return {x + v.x, y + v.y}; }
    Vec2 operator-(Vec2 v) const { return {x - v.x, y - v.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 v) { x += v.x; y += v.y; return *this; }
    Vec2& operator-=(Vec2 v) { x -= v.x; y -= v.y; return *this; }

    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
    //! Counterclockwise quarter turn.
    Vec2 perp() const { return {-y, x}; }
    double angle() const { return std::atan2(y, x); }

    Vec2 normalized() const {
        const double n = norm();
        if (n == 0.0) fail("ZeroVector", "cannot normalize the zero vector");
        return {x / n, y / n};
    }
};

using Point2 = Vec2;

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }

//! Unit vector at angle theta.
inline Vec2 unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }

//! Reduce an angle to [0, 2*pi).
inline double mod_two_pi(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

//! Counterclockwise sweep from a0 to a1, in (0, 2*pi].
inline double ccw_sweep(double a0, double a1) {
    const double s = mod_two_pi(a1 - a0);
    return s == 0.0 ? kTwoPi : s;
}

//! Smallest absolute angular difference, in [0, pi].
inline double angle_difference(double a, double b) {
    const double d = mod_two_pi(a - b);
    return std::min(d, kTwoPi - d);
}

//! Line through `point` with unit direction `dir`; normalized at construction.
struct Line2 {
    Point2 point;
    Vec2 dir;

    Line2(Point2 p, Vec2 direction) : point(p), dir(direction.normalized()) {}

    Point2 at(double t) const { return point + t * dir; }
};

//! Signed distance of p from L: positive on the left of `dir`.
inline double signed_distance(Point2 p, const Line2& L) {
    return cross(L.dir, p - L.point);
}

inline double distance_to_line(Point2 p, const Line2& L) {
    return std::abs(signed_distance(p, L));
}

inline Point2 project_onto_line(Point2 p, const Line2& L) {
    return L.point + dot(p - L.point, L.dir) * L.dir;
}

inline Point2 reflect_across_line(Point2 p, const Line2& L) {
    const Point2 f = project_onto_line(p, L);
    return f + (f - p);
}

//! Unsigned acute angle between the direction vectors, in [0, pi/2].
inline double angle_between(const Line2& a, const Line2& b) {
    return std::atan2(std::abs(cross(a.dir, b.dir)), std::abs(dot(a.dir, b.dir)));
}

//! Intersection point of two non-parallel lines.
inline Point2 line_intersection(const Line2& a, const Line2& b) {
    const double den = cross(a.dir, b.dir);
    if (std::abs(den) < 1e-14)
        fail("ParallelLines", "lines do not intersect in a unique point");
    const double t = cross(b.point - a.point, b.dir) / den;
    return a.at(t);
}

//! Circle with non-negative radius. Zero-radius circles represent corner
//! points of degenerate arc splines; operations that need a proper circle
//! reject them individually.
struct Circle2 {
    Point2 center;
    double radius = 1.0;

    Circle2(Point2 c, double r) : center(c), radius(r) {
        if (!(r >= 0.0) || !std::isfinite(r))
            fail("InvalidRadius", "circle radius must be finite and >= 0");
    }
};

//! |p - center|^2 - r^2: positive outside, zero on, negative inside.
inline double power_of_point(Point2 p, const Circle2& c) {
    return (p - c.center).norm2() - c.radius * c.radius;
}

//! Locus of equal power with respect to two circles; perpendicular to the
//! line of centers.
inline Line2 radical_axis(const Circle2& c1, const Circle2& c2) {
    const Vec2 d = c2.center - c1.center;
    const double dist = d.norm();
    if (dist < 1e-12)
        fail("ConcentricCircles", "radical axis undefined for concentric circles");
    const Vec2 u = d / dist;
    // Crossing point on the center line: equate the two power polynomials.
    const double t = (dist * dist + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * dist);
    return Line2(c1.center + t * u, u.perp());
}

//! The two tangency points on c as seen from the exterior point x.
//! Both satisfy |a - center| = r and (a - x).(a - center) = 0; returned in
//! counterclockwise order as seen from x.
inline std::pair<Point2, Point2> tangent_points_to_circle(Point2 x, const Circle2& c) {
    const double pow = power_of_point(x, c);
    if (pow <= kGeomTol)
        fail("PointNotExterior", "tangents require power of the point > tolerance");
    const double d = (x - c.center).norm();
    if (c.radius == 0.0) return {c.center, c.center};
    const Vec2 u = (x - c.center) / d;
    const double ca = c.radius / d;           // cos of half-aperture at the center
    const double sa = std::sqrt(pow) / d;     // sin of half-aperture
    const Point2 a1 = c.center + c.radius * (ca * u + sa * u.perp());
    const Point2 a2 = c.center + c.radius * (ca * u - sa * u.perp());
    // cross(a1 - x, a2 - x) > 0: a1 comes first counterclockwise around x.
    return {a1, a2};
}

//! Circular arc on `circle` from angle a0 to a1. `ccw` arcs sweep the angle
//! counterclockwise by ccw_sweep(a0, a1); clockwise arcs the reverse way.
//! Zero-radius arcs mark corner points: both endpoints coincide with the
//! center and the angles span the corner's normal cone.
struct Arc2 {
    Circle2 circle;
    double a0 = 0.0;
    double a1 = 0.0;
    bool ccw = true;

    Arc2(Circle2 c, double start_angle, double end_angle, bool counterclockwise = true)
        : circle(c), a0(start_angle), a1(end_angle), ccw(counterclockwise) {}

    double sweep() const { return ccw ? ccw_sweep(a0, a1) : ccw_sweep(a1, a0); }
    double length() const { return circle.radius * sweep(); }

    Point2 point_at_angle(double ang) const {
        return circle.center + circle.radius * unit_vector(ang);
    }
    Point2 start_point() const { return point_at_angle(a0); }
    Point2 end_point() const { return point_at_angle(a1); }

    //! Same point set traversed the other way.
    Arc2 reversed() const { return Arc2(circle, a1, a0, !ccw); }

    //! Is normal angle `ang` inside the swept interval (inclusive within tol)?
    bool contains_angle(double ang, double tol = 1e-12) const {
        const double from = ccw ? a0 : a1;
        const double off = mod_two_pi(ang - from);
        return off <= sweep() + tol || off >= kTwoPi - tol;
    }
};

} // namespace eqt
