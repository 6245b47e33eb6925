//
// curves2d.hpp — strictly convex closed planar curves in two
// representations (support function, circular-arc spline), tangents from
// exterior points, widths, and the equitangency residual.
//
#pragma once

#include <algorithm>
#include <concepts>
#include <functional>
#include <memory>
#include <vector>

#include "eqt/geom2d.hpp"

namespace eqt {

//! One tangency seen from an exterior source point.
struct TangentData {
    Point2 point;   // tangency point on the curve
    double length;  // |point - source|
    double param;   // curve parameter of the tangency
};

// ---------------------------------------------------------------------------
// SupportCurve: gamma(theta) = h(theta) u(theta) + h'(theta) u_perp(theta),
// u = (cos theta, sin theta). Strict convexity means h + h'' > 0.
// ---------------------------------------------------------------------------

class SupportCurve {
public:
    using Fn = std::function<double(double)>;

    SupportCurve(Fn h, Fn dh, Fn d2h, bool check = true)
        : h_(std::move(h)), dh_(std::move(dh)), d2h_(std::move(d2h)) {
        if (check) validate();
    }

    static SupportCurve circle(double r, Point2 center = {0.0, 0.0}) {
        if (!(r > 0.0)) fail("InvalidRadius", "circle radius must be positive");
        return SupportCurve(
            [=](double t) { return r + dot(center, unit_vector(t)); },
            [=](double t) { return dot(center, unit_vector(t).perp()); },
            [=](double t) { return -dot(center, unit_vector(t)); });
    }

    //! Ellipse with semi-axes a, b, the a-axis rotated by `tilt`.
    static SupportCurve ellipse(double a, double b, Point2 center = {0.0, 0.0},
                                double tilt = 0.0) {
        if (!(a > 0.0) || !(b > 0.0)) fail("InvalidRadius", "ellipse semi-axes must be positive");
        // s(t) = a^2 cos^2(t - tilt) + b^2 sin^2(t - tilt); h = c.u + sqrt(s)
        auto s = [=](double t) {
            const double c = std::cos(t - tilt), sn = std::sin(t - tilt);
            return a * a * c * c + b * b * sn * sn;
        };
        auto ds = [=](double t) { return (b * b - a * a) * std::sin(2.0 * (t - tilt)); };
        auto d2s = [=](double t) { return 2.0 * (b * b - a * a) * std::cos(2.0 * (t - tilt)); };
        return SupportCurve(
            [=](double t) { return std::sqrt(s(t)) + dot(center, unit_vector(t)); },
            [=](double t) {
                return ds(t) / (2.0 * std::sqrt(s(t))) + dot(center, unit_vector(t).perp());
            },
            [=](double t) {
                const double sv = s(t);
                return d2s(t) / (2.0 * std::sqrt(sv)) -
                       ds(t) * ds(t) / (4.0 * sv * std::sqrt(sv)) -
                       dot(center, unit_vector(t));
            });
    }

    //! h(t) = a0 + sum_k ( ac[k-1] cos kt + as[k-1] sin kt ).
    static SupportCurve fourier(double a0, std::vector<double> ac, std::vector<double> as) {
        if (as.size() < ac.size()) as.resize(ac.size(), 0.0);
        if (ac.size() < as.size()) ac.resize(as.size(), 0.0);
        auto coef = std::make_shared<std::pair<std::vector<double>, std::vector<double>>>(
            std::move(ac), std::move(as));
        auto eval = [coef, a0](double t, int deriv) {
            double v = deriv == 0 ? a0 : 0.0;
            for (std::size_t i = 0; i < coef->first.size(); ++i) {
                const double k = double(i + 1);
                const double a = coef->first[i], b = coef->second[i];
                switch (deriv) {
                    case 0: v += a * std::cos(k * t) + b * std::sin(k * t); break;
                    case 1: v += k * (-a * std::sin(k * t) + b * std::cos(k * t)); break;
                    default: v += k * k * (-a * std::cos(k * t) - b * std::sin(k * t)); break;
                }
            }
            return v;
        };
        return SupportCurve([eval](double t) { return eval(t, 0); },
                            [eval](double t) { return eval(t, 1); },
                            [eval](double t) { return eval(t, 2); });
    }

    //! Trigonometric interpolation of support values sampled at
    //! theta_j = 2 pi j / N. Exact at the sample points.
    static SupportCurve from_samples(const std::vector<double>& h_samples) {
        const std::size_t n = h_samples.size();
        if (n < 8) fail("BadCurveData", "need at least 8 support samples");
        double a0 = 0.0;
        for (double v : h_samples) a0 += v;
        a0 /= double(n);
        const std::size_t kmax = n / 2;
        std::vector<double> ac(kmax, 0.0), as(kmax, 0.0);
        for (std::size_t k = 1; k <= kmax; ++k) {
            double ck = 0.0, sk = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double ang = kTwoPi * double(k) * double(j) / double(n);
                ck += h_samples[j] * std::cos(ang);
                sk += h_samples[j] * std::sin(ang);
            }
            const bool nyquist = (n % 2 == 0) && (k == kmax);
            ac[k - 1] = (nyquist ? 1.0 : 2.0) * ck / double(n);
            as[k - 1] = (nyquist ? 0.0 : 2.0) * sk / double(n);
        }
        return fourier(a0, std::move(ac), std::move(as));
    }

    double h(double t) const { return h_(t); }
    double dh(double t) const { return dh_(t); }
    double d2h(double t) const { return d2h_(t); }

    //! Radius of curvature h + h'' (positive on strictly convex curves).
    double curvature_radius(double t) const { return h_(t) + d2h_(t); }

    Point2 point_at(double t) const {
        return h_(t) * unit_vector(t) + dh_(t) * unit_vector(t).perp();
    }
    Vec2 tangent_at(double t) const { return unit_vector(t).perp(); }
    Vec2 normal_at(double t) const { return unit_vector(t); }

private:
    void validate(int n = 720) const {
        if (std::abs(h_(0.0) - h_(kTwoPi)) > 1e-12)
            fail("NotPeriodic", "support function must have period 2*pi");
        for (int i = 0; i < n; ++i) {
            const double t = kTwoPi * double(i) / double(n);
            if (!(curvature_radius(t) > 0.0))
                fail("NotStrictlyConvex", "h + h'' must be positive everywhere");
        }
    }

    Fn h_, dh_, d2h_;
};

// ---------------------------------------------------------------------------
// ArcSplineCurve: closed chain of circular arcs, traversed counterclockwise.
// Zero-radius arcs represent corner points; their sweep carries the turning
// of the corner so that total turning stays 2*pi.
// ---------------------------------------------------------------------------

struct ArcSplineValidation {
    double max_joint_gap = 0.0;     // endpoint position mismatch at joints
    double max_tangent_gap = 0.0;   // joint tangent mismatch, radians
    double total_turning = 0.0;     // sum of sweeps, 2*pi for a convex loop
    bool uniformly_ccw = true;
    std::vector<double> corner_params;  // arclength positions of zero-radius arcs

    bool c1(double pos_tol = kGeomTol, double ang_tol = 1e-9) const {
        return max_joint_gap <= pos_tol && max_tangent_gap <= ang_tol;
    }
    bool convex_closed(double turn_tol = 1e-9) const {
        return uniformly_ccw && std::abs(total_turning - kTwoPi) <= turn_tol;
    }
};

class ArcSplineCurve {
public:
    explicit ArcSplineCurve(std::vector<Arc2> arcs) : arcs_(std::move(arcs)) {
        if (arcs_.empty()) fail("BadCurveData", "arc spline needs at least one arc");
        // Normalize the global traversal direction to counterclockwise.
        double signed_turn = 0.0;
        for (const Arc2& a : arcs_) signed_turn += a.ccw ? a.sweep() : -a.sweep();
        if (signed_turn < 0.0) {
            std::vector<Arc2> rev;
            rev.reserve(arcs_.size());
            for (auto it = arcs_.rbegin(); it != arcs_.rend(); ++it)
                rev.push_back(it->reversed());
            arcs_ = std::move(rev);
        }
        cum_len_.resize(arcs_.size() + 1, 0.0);
        for (std::size_t i = 0; i < arcs_.size(); ++i)
            cum_len_[i + 1] = cum_len_[i] + arcs_[i].length();
        cum_turn_.resize(arcs_.size() + 1, 0.0);
        for (std::size_t i = 0; i < arcs_.size(); ++i)
            cum_turn_[i + 1] = cum_turn_[i] + arcs_[i].sweep();
    }

    const std::vector<Arc2>& arcs() const { return arcs_; }
    double total_length() const { return cum_len_.back(); }

    //! Arclength position of the start of arc i.
    double arc_start_param(std::size_t i) const { return cum_len_[i]; }

    ArcSplineValidation validate() const {
        ArcSplineValidation v;
        const std::size_t n = arcs_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Arc2& a = arcs_[i];
            const Arc2& b = arcs_[(i + 1) % n];
            v.max_joint_gap = std::max(v.max_joint_gap, distance(a.end_point(), b.start_point()));
            v.max_tangent_gap = std::max(v.max_tangent_gap, angle_difference(a.a1, b.a0));
            v.total_turning += a.ccw ? a.sweep() : -a.sweep();
            if (!a.ccw) v.uniformly_ccw = false;
            if (a.circle.radius == 0.0) v.corner_params.push_back(cum_len_[i]);
        }
        return v;
    }

    Point2 point_at(double s) const { return eval(s).first; }
    Vec2 tangent_at(double s) const { return eval(s).second.perp(); }
    Vec2 normal_at(double s) const { return eval(s).second; }

    //! Support value h(theta) = sup_p p.u(theta): the arc whose normal cone
    //! contains theta realizes the support.
    double support_value(double theta) const {
        require_ccw();
        const double t = mod_two_pi(theta - arcs_[0].a0);
        auto it = std::upper_bound(cum_turn_.begin(), cum_turn_.end(), t);
        std::size_t i = std::min<std::size_t>(std::distance(cum_turn_.begin(), it) - 1,
                                              arcs_.size() - 1);
        const Arc2& a = arcs_[i];
        return dot(a.circle.center, unit_vector(theta)) + a.circle.radius;
    }

    void require_ccw() const {
        for (const Arc2& a : arcs_)
            if (!a.ccw) fail("InvalidArcSpline", "operation requires a counterclockwise curve");
    }

private:
    // (point, outward normal) at arclength s
    std::pair<Point2, Vec2> eval(double s) const {
        double sm = std::fmod(s, total_length());
        if (sm < 0.0) sm += total_length();
        auto it = std::upper_bound(cum_len_.begin(), cum_len_.end(), sm);
        std::size_t i = std::min<std::size_t>(std::distance(cum_len_.begin(), it) - 1,
                                              arcs_.size() - 1);
        while (arcs_[i].circle.radius == 0.0 && i + 1 < arcs_.size()) ++i;
        const Arc2& a = arcs_[i];
        const double local = (sm - cum_len_[i]) / a.circle.radius;
        const double phi = a.ccw ? a.a0 + local : a.a0 - local;
        const Vec2 nrm = unit_vector(phi);
        return {a.circle.center + a.circle.radius * nrm, a.ccw ? nrm : -nrm};
    }

    std::vector<Arc2> arcs_;
    std::vector<double> cum_len_;
    std::vector<double> cum_turn_;
};

// ---------------------------------------------------------------------------
// Shared frame/containment queries
// ---------------------------------------------------------------------------

inline double param_period(const SupportCurve&) { return kTwoPi; }
inline double param_period(const ArcSplineCurve& c) { return c.total_length(); }

inline double circular_param_distance(double a, double b, double period) {
    double d = std::fmod(std::abs(a - b), period);
    return std::min(d, period - d);
}

template <class Curve>
concept PlanarConvexCurve = requires(const Curve& c, double t) {
    { c.point_at(t) } -> std::convertible_to<Point2>;
    { c.tangent_at(t) } -> std::convertible_to<Vec2>;
    { c.normal_at(t) } -> std::convertible_to<Vec2>;
    { param_period(c) } -> std::convertible_to<double>;
};

template <PlanarConvexCurve Curve>
std::vector<Point2> sample_points(const Curve& curve, int n) {
    const double period = param_period(curve);
    std::vector<Point2> pts;
    pts.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) pts.push_back(curve.point_at(period * double(i) / double(n)));
    return pts;
}

//! Winding number of the curve around x (summed signed angles / 2*pi).
template <PlanarConvexCurve Curve>
double winding_number(const Curve& curve, Point2 x, int n = 720) {
    const auto pts = sample_points(curve, n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec2 a = pts[std::size_t(i)] - x;
        const Vec2 b = pts[std::size_t((i + 1) % n)] - x;
        total += std::atan2(cross(a, b), dot(a, b));
    }
    return total / kTwoPi;
}

template <PlanarConvexCurve Curve>
bool is_exterior_point(const Curve& curve, Point2 x) {
    return std::abs(winding_number(curve, x)) < 0.5;
}

template <PlanarConvexCurve Curve>
Line2 tangent_line_at(const Curve& curve, double param) {
    return Line2(curve.point_at(param), curve.tangent_at(param));
}

struct Box2 {
    Point2 min, max;
    Point2 center() const { return 0.5 * (min + max); }
    double diagonal() const { return distance(min, max); }
};

template <PlanarConvexCurve Curve>
Box2 bounding_box(const Curve& curve, int n = 720) {
    const auto pts = sample_points(curve, n);
    Box2 b{pts[0], pts[0]};
    for (const Point2& p : pts) {
        b.min.x = std::min(b.min.x, p.x);
        b.min.y = std::min(b.min.y, p.y);
        b.max.x = std::max(b.max.x, p.x);
        b.max.y = std::max(b.max.y, p.y);
    }
    return b;
}

// ---------------------------------------------------------------------------
// Widths
// ---------------------------------------------------------------------------

inline double support_value(const SupportCurve& c, double theta) { return c.h(theta); }
inline double support_value(const ArcSplineCurve& c, double theta) {
    return c.support_value(theta);
}

//! Distance between the two support lines with normals u(theta), -u(theta).
inline double euclidean_width(const SupportCurve& c, double theta) {
    return c.h(theta) + c.h(theta + kPi);
}

inline double euclidean_width(const ArcSplineCurve& c, double theta) {
    return c.support_value(theta) + c.support_value(theta + kPi);
}

template <PlanarConvexCurve Curve>
double curve_diameter(const Curve& c, int n = 360) {
    double d = 0.0;
    for (int i = 0; i < n; ++i) d = std::max(d, euclidean_width(c, kPi * double(i) / double(n)));
    return d;
}

// ---------------------------------------------------------------------------
// Tangents from an exterior point
// ---------------------------------------------------------------------------

//! Tangencies from x on a support-function curve. The tangency condition
//! g(theta) = (gamma(theta) - x).n(theta) = h(theta) - x.u(theta) = 0 is
//! bracketed on a 720-point grid and polished by bisection plus Newton.
inline std::pair<TangentData, TangentData> tangents_from_point(const SupportCurve& curve,
                                                               Point2 x) {
    if (!is_exterior_point(curve, x))
        fail("PointNotExterior", "tangents require a point strictly outside the curve");
    auto g = [&](double t) { return curve.h(t) - dot(x, unit_vector(t)); };
    auto dg = [&](double t) { return curve.dh(t) - dot(x, unit_vector(t).perp()); };

    constexpr int grid = 720;
    std::vector<double> gv(grid);
    for (int i = 0; i < grid; ++i) gv[std::size_t(i)] = g(kTwoPi * double(i) / double(grid));
    std::vector<double> roots;
    for (int i = 0; i < grid; ++i) {
        const double ta = kTwoPi * double(i) / double(grid);
        const double tb = kTwoPi * double(i + 1) / double(grid);
        const double ga = gv[std::size_t(i)];
        // close the loop with the node-0 value so a root at the seam is kept
        const double gb = gv[std::size_t((i + 1) % grid)];
        if (ga == 0.0) {
            roots.push_back(ta);
        } else if (ga * gb < 0.0) {
            double lo = ta, hi = tb, glo = ga;
            while (hi - lo > 1e-14) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(mid);
                if (gm == 0.0) { lo = hi = mid; break; }
                if (glo * gm < 0.0) hi = mid;
                else { lo = mid; glo = gm; }
            }
            double root = 0.5 * (lo + hi);
            for (int it = 0; it < 3; ++it) {  // Newton polish
                const double d = dg(root);
                if (d == 0.0) break;
                const double step = g(root) / d;
                if (std::abs(step) > kTwoPi / grid) break;
                root -= step;
            }
            roots.push_back(mod_two_pi(root));
        }
    }
    // Merge duplicates straddling grid nodes.
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                roots.end());
    if (roots.size() > 1 && roots.back() - roots.front() > kTwoPi - 1e-9) roots.pop_back();

    if (roots.size() != 2)
        fail("TangencyNotFound", "expected exactly two tangencies, found " +
                                     std::to_string(roots.size()));
    auto mk = [&](double t) {
        const Point2 p = curve.point_at(t);
        return TangentData{p, distance(p, x), t};
    };
    TangentData t1 = mk(roots[0]), t2 = mk(roots[1]);
    if (cross(t1.point - x, t2.point - x) < 0.0) std::swap(t1, t2);
    return {t1, t2};
}

//! Tangencies from x on an arc spline: closed-form circle tangency per arc,
//! restricted to the arc's normal cone; corner arcs admit the corner itself
//! when the sight line's normal falls inside the cone. Joint duplicates are
//! merged by parameter proximity.
inline std::pair<TangentData, TangentData> tangents_from_point(const ArcSplineCurve& curve,
                                                               Point2 x) {
    curve.require_ccw();
    if (!is_exterior_point(curve, x))
        fail("PointNotExterior", "tangents require a point strictly outside the curve");

    std::vector<TangentData> cand;
    const auto& arcs = curve.arcs();
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const Arc2& a = arcs[i];
        if (a.circle.radius == 0.0) {
            const Point2 c = a.circle.center;
            if (distance(c, x) < kGeomTol) continue;
            const Vec2 nu = (c - x).normalized().perp();
            if (a.contains_angle(nu.angle(), 1e-9) || a.contains_angle((-nu).angle(), 1e-9))
                cand.push_back({c, distance(c, x), curve.arc_start_param(i)});
            continue;
        }
        if (power_of_point(x, a.circle) <= kGeomTol) continue;
        const auto [p1, p2] = tangent_points_to_circle(x, a.circle);
        for (const Point2& p : {p1, p2}) {
            const double ang = (p - a.circle.center).angle();
            if (!a.contains_angle(ang, 1e-9)) continue;
            double local = mod_two_pi(ang - a.a0);
            if (local > a.sweep())  // tolerance region just outside either end
                local = (kTwoPi - local < local - a.sweep()) ? 0.0 : a.sweep();
            const double s = curve.arc_start_param(i) + local * a.circle.radius;
            cand.push_back({p, distance(p, x), s});
        }
    }

    // Deduplicate tangencies reported by both arcs at a joint.
    const double period = curve.total_length();
    const double tol = 1e-8 * std::max(1.0, period);
    std::sort(cand.begin(), cand.end(),
              [](const TangentData& a, const TangentData& b) { return a.param < b.param; });
    std::vector<TangentData> uniq;
    for (const TangentData& t : cand) {
        if (!uniq.empty() && circular_param_distance(uniq.back().param, t.param, period) < tol)
            continue;
        uniq.push_back(t);
    }
    if (uniq.size() > 1 &&
        circular_param_distance(uniq.front().param, uniq.back().param, period) < tol)
        uniq.pop_back();

    if (uniq.size() != 2)
        fail("TangencyNotFound", "expected exactly two tangencies, found " +
                                     std::to_string(uniq.size()));
    TangentData t1 = uniq[0], t2 = uniq[1];
    if (cross(t1.point - x, t2.point - x) < 0.0) std::swap(t1, t2);
    return {t1, t2};
}

template <class Curve>
concept TangentQueryable = requires(const Curve& c, Point2 x) {
    { tangents_from_point(c, x) } -> std::convertible_to<std::pair<TangentData, TangentData>>;
};

// ---------------------------------------------------------------------------
// Equitangency residual
// ---------------------------------------------------------------------------

struct EquitangentResult {
    double max_residual = 0.0;
    Point2 worst_point{0.0, 0.0};
    std::size_t worst_index = 0;
};

//! max |L1 - L2| over the locus; zero means the locus is equitangent.
template <TangentQueryable Curve>
EquitangentResult equitangent_residual(const Curve& curve, const std::vector<Point2>& locus) {
    EquitangentResult r;
    if (locus.empty()) return r;
    r.worst_point = locus.front();
    for (std::size_t i = 0; i < locus.size(); ++i) {
        std::pair<TangentData, TangentData> t;
        try {
            t = tangents_from_point(curve, locus[i]);
        } catch (const Error& e) {
            fail(e.name(), "locus point " + std::to_string(i) + ": " + e.what());
        }
        const double res = std::abs(t.first.length - t.second.length);
        if (res > r.max_residual) {
            r.max_residual = res;
            r.worst_point = locus[i];
            r.worst_index = i;
        }
    }
    return r;
}

//! Tangency residual of the curve against the foliation of circles tangent
//! to the curve's tangent line at p0. Each curve point q determines the
//! unique leaf through q (circle tangent to the line at the base point);
//! the residual is |cos| of the angle between the curve and that leaf.
//! A vanishing residual over the whole curve means the curve is itself a
//! leaf, hence a circle.
template <PlanarConvexCurve Curve>
double tangent_circle_foliation_residual(const Curve& curve, double p0, int n_samples = 720,
                                         double exclusion = 0.05) {
    const Point2 base = curve.point_at(p0);
    const Vec2 normal = curve.normal_at(p0);
    const double period = param_period(curve);
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double t = period * double(i) / double(n_samples);
        if (circular_param_distance(t, p0, period) < exclusion * period) continue;
        const Point2 q = curve.point_at(t);
        const Vec2 delta = q - base;
        const double denom = dot(normal, delta);
        if (std::abs(denom) < 1e-12) continue;
        const Point2 center = base + (delta.norm2() / (2.0 * denom)) * normal;
        worst = std::max(worst, std::abs(dot((q - center).normalized(), curve.tangent_at(t))));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

//! Arclength-uniform samples (point, unit tangent) traversing the curve
//! counterclockwise.
inline std::vector<std::pair<Point2, Vec2>> arcspline_to_samples(const ArcSplineCurve& curve,
                                                                 int n) {
    if (n < 3) fail("BadSampleCount", "need at least 3 samples");
    curve.require_ccw();
    std::vector<std::pair<Point2, Vec2>> out;
    out.reserve(std::size_t(n));
    const double L = curve.total_length();
    for (int i = 0; i < n; ++i) {
        const double s = L * double(i) / double(n);
        out.emplace_back(curve.point_at(s), curve.tangent_at(s));
    }
    return out;
}

} // namespace eqt
