//
// ellipse_optics.hpp — the focal-angle property of ellipse tangents, the
// projection product identity from its proof, and a numerical converse
// check that reconstructs the candidate ellipse from the foci and one
// tangent line.
//
#pragma once

#include <optional>
#include <vector>

#include "eqt/curves2d.hpp"

namespace eqt {

//! A convex curve with two marked interior points and a tangent line at
//! parameter p0.
template <class Curve>
    requires PlanarConvexCurve<Curve> && TangentQueryable<Curve>
struct FocalConfig {
    Curve curve;
    Point2 P, Q;
    Line2 ell;
    double p0;
    double diameter;
};

template <class Curve>
FocalConfig<Curve> make_focal_config(const Curve& curve, Point2 P, Point2 Q, double p0) {
    for (const Point2& f : {P, Q})
        if (std::abs(winding_number(curve, f)) < 0.5)
            fail("PointNotInterior", "focus candidates must lie inside the curve");
    return FocalConfig<Curve>{curve, P, Q, tangent_line_at(curve, p0), p0,
                              curve_diameter(curve)};
}

//! The tangent line from X distinct from ell (X on ell, exterior).
template <class Curve>
Line2 second_tangent(const FocalConfig<Curve>& cfg, Point2 X) {
    const Point2 t0 = cfg.curve.point_at(cfg.p0);
    if (distance_to_line(X, cfg.ell) > 1e-6 * (1.0 + cfg.diameter))
        fail("PointNotOnTangentLine", "X must lie on the marked tangent line");
    if (distance(X, t0) < 1e-4 * (1.0 + cfg.diameter))
        fail("XAtTangency", "X coincides with the tangency point of ell");
    const auto [t1, t2] = tangents_from_point(cfg.curve, X);
    const double period = param_period(cfg.curve);
    const TangentData& other =
        circular_param_distance(t1.param, cfg.p0, period) >
                circular_param_distance(t2.param, cfg.p0, period)
            ? t1
            : t2;
    return Line2(X, other.point - X);
}

//! | angle(ell, XP) - angle(L_X, XQ) |, both unsigned acute.
template <class Curve>
double focal_angle_residual(const FocalConfig<Curve>& cfg, Point2 X) {
    const Line2 lx = second_tangent(cfg, X);
    const double a1 = angle_between(cfg.ell, Line2(X, cfg.P - X));
    const double a2 = angle_between(lx, Line2(X, cfg.Q - X));
    return std::abs(a1 - a2);
}

//! | RP * SQ - PB * QA | with R, S the projections of P, Q on ell and
//! A, B the projections of Q, P on L_X; each factor is a point-to-line
//! distance.
template <class Curve>
double product_identity_residual(const FocalConfig<Curve>& cfg, Point2 X) {
    const Line2 lx = second_tangent(cfg, X);
    const double rp = distance_to_line(cfg.P, cfg.ell);
    const double sq = distance_to_line(cfg.Q, cfg.ell);
    const double pb = distance_to_line(cfg.P, lx);
    const double qa = distance_to_line(cfg.Q, lx);
    return std::abs(rp * sq - pb * qa);
}

//! Hausdorff distance between two convex curves as the sup of the support
//! difference, evaluated over n directions.
template <class CurveA, class CurveB>
double hausdorff_convex(const CurveA& a, const CurveB& b, int n = 720) {
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = kTwoPi * double(i) / double(n);
        d = std::max(d, std::abs(support_value(a, t) - support_value(b, t)));
    }
    return d;
}

//! The unique ellipse with foci P, Q tangent to ell: reflecting one focus
//! across the tangent line gives the major axis length.
inline SupportCurve ellipse_from_foci_tangent(Point2 P, Point2 Q, const Line2& ell) {
    const double two_a = distance(P, reflect_across_line(Q, ell));
    const double a = 0.5 * two_a;
    const double c = 0.5 * distance(P, Q);
    if (!(a > c + 1e-15))
        fail("DegenerateEllipse", "foci/tangent configuration admits no ellipse");
    const double b = std::sqrt(a * a - c * c);
    const Point2 center = 0.5 * (P + Q);
    const double tilt = c > 1e-14 ? (Q - P).angle() : 0.0;
    return SupportCurve::ellipse(a, b, center, tilt);
}

struct ConverseReport {
    double max_angle_residual = 0.0;
    double max_product_residual = 0.0;
    double hausdorff = std::numeric_limits<double>::quiet_NaN();
    int n_used = 0;
    int n_excluded = 0;
    bool is_ellipse = false;
};

//! Sample X along ell over +-8 curve diameters around the tangency point
//! (excluding a small neighborhood of it and X where L_X degenerates),
//! test the focal-angle hypothesis, and when it holds compare the curve
//! against the ellipse with foci P, Q tangent to ell.
template <class Curve>
ConverseReport converse_check(const FocalConfig<Curve>& cfg, int n_samples = 64,
                              double angle_tol = 1e-7, double hausdorff_tol = 1e-6) {
    ConverseReport rep;
    const Point2 t0 = cfg.curve.point_at(cfg.p0);
    const double d = cfg.diameter;
    for (int i = 0; i < n_samples; ++i) {
        const double s = -8.0 * d + 16.0 * d * (double(i) + 0.5) / double(n_samples);
        if (std::abs(s) < 1e-3 * d) {
            ++rep.n_excluded;
            continue;
        }
        const Point2 X = t0 + s * cfg.ell.dir;
        try {
            const Line2 lx = second_tangent(cfg, X);
            if (angle_between(lx, cfg.ell) < 1e-6) {
                ++rep.n_excluded;
                continue;
            }
            rep.max_angle_residual =
                std::max(rep.max_angle_residual, focal_angle_residual(cfg, X));
            rep.max_product_residual =
                std::max(rep.max_product_residual, product_identity_residual(cfg, X));
            ++rep.n_used;
        } catch (const Error&) {
            ++rep.n_excluded;
        }
    }
    if (rep.n_used == 0) fail("NoUsableSamples", "all converse samples were excluded");
    if (rep.max_angle_residual < angle_tol) {
        const SupportCurve model = ellipse_from_foci_tangent(cfg.P, cfg.Q, cfg.ell);
        rep.hausdorff = hausdorff_convex(cfg.curve, model);
        rep.is_ellipse = rep.hausdorff < hausdorff_tol;
    }
    return rep;
}

} // namespace eqt
