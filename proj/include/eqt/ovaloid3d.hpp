//
// ovaloid3d.hpp — implicitly defined closed strictly convex surfaces:
// contact curves of the tangent cone from an exterior point, tangent-length
// spread, equitangent-locus grid scans, principal curvatures and umbilics,
// and the line-of-curvature alignment check along contact curves.
//
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eqt/geom2d.hpp" // Error/fail and numeric constants

namespace eqt {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double xx, double yy, double zz) : x(xx), y(yy), z(zz) {}

    Vec3 operator+(Vec3 v) const { return {x + v.x, y + v.y, z + v.z}; }
    Vec3 operator-(Vec3 v) const { return {x - v.x, y - v.y, z - v.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }

    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const {
        const double n = norm();
        if (n == 0.0) fail("ZeroVector", "cannot normalize the zero 3-vector");
        return *this / n;
    }
};

inline Vec3 operator*(double s, Vec3 v) { return v * s; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double distance(Vec3 a, Vec3 b) { return (a - b).norm(); }

//! Symmetric 3x3 matrix (second-derivative fields).
struct Mat3 {
    std::array<std::array<double, 3>, 3> m{};

    static Mat3 diagonal(double a, double b, double c) {
        Mat3 r;
        r.m[0][0] = a;
        r.m[1][1] = b;
        r.m[2][2] = c;
        return r;
    }
    Vec3 operator*(Vec3 v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }
};

// ---------------------------------------------------------------------------
// Implicit surface
// ---------------------------------------------------------------------------

//! Closed strictly convex surface {F = 0} with F < 0 inside, given with
//! gradient and second-derivative fields.
class ImplicitOvaloid {
public:
    using ScalarFn = std::function<double(Vec3)>;
    using GradFn = std::function<Vec3(Vec3)>;
    using HessFn = std::function<Mat3(Vec3)>;

    ImplicitOvaloid(std::string name, ScalarFn f, GradFn grad, HessFn hess,
                    Vec3 inner = {0.0, 0.0, 0.0})
        : name_(std::move(name)), f_(std::move(f)), grad_(std::move(grad)),
          hess_(std::move(hess)), inner_(inner) {}

    double f(Vec3 p) const { return f_(p); }
    Vec3 grad(Vec3 p) const { return grad_(p); }
    Mat3 hess(Vec3 p) const { return hess_(p); }
    Vec3 inner_point() const { return inner_; }
    const std::string& name() const { return name_; }

    //! Semi-axes when the surface is a coordinate-aligned ellipsoid.
    std::optional<Vec3> quadric_semiaxes() const { return semiaxes_; }

    static ImplicitOvaloid sphere(double R) {
        ImplicitOvaloid s(
            "sphere", [=](Vec3 p) { return p.norm2() - R * R; },
            [](Vec3 p) { return 2.0 * p; },
            [](Vec3) { return Mat3::diagonal(2.0, 2.0, 2.0); });
        s.semiaxes_ = Vec3{R, R, R};
        return s;
    }

    static ImplicitOvaloid ellipsoid(double a, double b, double c) {
        const double ia = 1.0 / (a * a), ib = 1.0 / (b * b), ic = 1.0 / (c * c);
        ImplicitOvaloid s(
            "ellipsoid",
            [=](Vec3 p) { return p.x * p.x * ia + p.y * p.y * ib + p.z * p.z * ic - 1.0; },
            [=](Vec3 p) { return Vec3{2.0 * p.x * ia, 2.0 * p.y * ib, 2.0 * p.z * ic}; },
            [=](Vec3) { return Mat3::diagonal(2.0 * ia, 2.0 * ib, 2.0 * ic); });
        s.semiaxes_ = Vec3{a, b, c};
        return s;
    }

    //! F = |p|^2 - 1 + delta (x^4 + y^4 + z^4): a non-quadric ovaloid for
    //! small delta.
    static ImplicitOvaloid quartic_sphere(double delta) {
        return ImplicitOvaloid(
            "quartic",
            [=](Vec3 p) {
                return p.norm2() - 1.0 +
                       delta * (p.x * p.x * p.x * p.x + p.y * p.y * p.y * p.y +
                                p.z * p.z * p.z * p.z);
            },
            [=](Vec3 p) {
                return Vec3{2.0 * p.x + 4.0 * delta * p.x * p.x * p.x,
                            2.0 * p.y + 4.0 * delta * p.y * p.y * p.y,
                            2.0 * p.z + 4.0 * delta * p.z * p.z * p.z};
            },
            [=](Vec3 p) {
                return Mat3::diagonal(2.0 + 12.0 * delta * p.x * p.x,
                                      2.0 + 12.0 * delta * p.y * p.y,
                                      2.0 + 12.0 * delta * p.z * p.z);
            });
    }

private:
    std::string name_;
    ScalarFn f_;
    GradFn grad_;
    HessFn hess_;
    Vec3 inner_;
    std::optional<Vec3> semiaxes_;
};

// ---------------------------------------------------------------------------
// Surface point queries
// ---------------------------------------------------------------------------

inline std::vector<Vec3> fibonacci_sphere_directions(int n) {
    std::vector<Vec3> dirs;
    dirs.reserve(std::size_t(n));
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (double(i) + 0.5) / double(n);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double t = golden * double(i);
        dirs.push_back({r * std::cos(t), r * std::sin(t), z});
    }
    return dirs;
}

//! First surface crossing along the ray inner + t dir, t > 0.
inline Vec3 surface_point_along_ray(const ImplicitOvaloid& M, Vec3 dir) {
    const Vec3 o = M.inner_point();
    const Vec3 d = dir.normalized();
    if (!(M.f(o) < 0.0)) fail("BadInnerPoint", "reference point must be interior");
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (M.f(o + hi * d) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 60) fail("DegenerateSurface", "no surface crossing along ray");
    }
    for (int i = 0; i < 90; ++i) {
        const double mid = 0.5 * (lo + hi);
        (M.f(o + mid * d) < 0.0 ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    for (int i = 0; i < 5; ++i) { // Newton polish along the ray
        const Vec3 p = o + t * d;
        const double df = dot(M.grad(p), d);
        if (df == 0.0) break;
        t -= M.f(p) / df;
    }
    return o + t * d;
}

//! Newton projection of q onto {F = 0} along the gradient.
inline Vec3 project_to_surface(const ImplicitOvaloid& M, Vec3 q) {
    Vec3 p = q;
    for (int i = 0; i < 100; ++i) {
        const double f = M.f(p);
        if (std::abs(f) < 1e-13) return p;
        const Vec3 g = M.grad(p);
        const double g2 = g.norm2();
        if (g2 == 0.0) fail("DegenerateGradient", "gradient vanished during projection");
        p = p - (f / g2) * g;
    }
    if (std::abs(M.f(p)) > 1e-10) fail("ProjectionFailed", "surface projection did not converge");
    return p;
}

//! Exterior test: F > 0 (with a strictness margin so on-surface points do
//! not slip through as degenerate tangent-cone sources) and the segment to
//! the inner reference point crosses the surface exactly once.
inline bool is_exterior(const ImplicitOvaloid& M, Vec3 x, int samples = 128) {
    if (!(M.f(x) > 1e-12 * (1.0 + M.grad(x).norm()))) return false;
    const Vec3 o = M.inner_point();
    int crossings = 0;
    double prev = M.f(x);
    for (int i = 1; i <= samples; ++i) {
        const double t = double(i) / double(samples);
        const double v = M.f(x + t * (o - x));
        if (prev > 0.0 && v <= 0.0) ++crossings;
        if (prev <= 0.0 && v > 0.0) ++crossings;
        prev = v;
    }
    return crossings == 1;
}

// ---------------------------------------------------------------------------
// Curvature
// ---------------------------------------------------------------------------

struct CurvatureData {
    double k1 = 0.0, k2 = 0.0; // principal curvatures, k1 >= k2
    Vec3 e1, e2;               // principal directions (unit, tangent)
    Vec3 normal;               // outward unit normal
};

//! Shape operator of {F = 0} restricted to the tangent plane: the second
//! fundamental form in an orthonormal tangent basis is (t_i . H t_j)/|grad F|.
inline CurvatureData principal_curvatures(const ImplicitOvaloid& M, Vec3 p) {
    if (std::abs(M.f(p)) > 1e-9) fail("NotOnSurface", "curvature query off the surface");
    const Vec3 g = M.grad(p);
    const double gn = g.norm();
    if (gn == 0.0) fail("DegenerateGradient", "gradient vanishes on the surface");
    const Vec3 n = g / gn;
    // tangent basis from the least-aligned coordinate axis
    const double ax = std::abs(n.x), ay = std::abs(n.y), az = std::abs(n.z);
    Vec3 seed = ax <= ay && ax <= az ? Vec3{1, 0, 0} : (ay <= az ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    const Vec3 t1 = cross(n, seed).normalized();
    const Vec3 t2 = cross(n, t1);
    const Mat3 H = M.hess(p);
    const double a11 = dot(t1, H * t1) / gn;
    const double a12 = dot(t1, H * t2) / gn;
    const double a22 = dot(t2, H * t2) / gn;
    const double mean = 0.5 * (a11 + a22);
    const double disc = std::hypot(0.5 * (a11 - a22), a12);
    CurvatureData out;
    out.k1 = mean + disc;
    out.k2 = mean - disc;
    out.normal = n;
    // eigenvector for k1 from the better-conditioned row
    double v1, v2;
    if (std::abs(a12) > 1e-300) {
        if (std::abs(out.k1 - a11) > std::abs(out.k1 - a22)) {
            v1 = a12;
            v2 = out.k1 - a11;
        } else {
            v1 = out.k1 - a22;
            v2 = a12;
        }
    } else {
        v1 = a11 >= a22 ? 1.0 : 0.0;
        v2 = a11 >= a22 ? 0.0 : 1.0;
    }
    const double vn = std::hypot(v1, v2);
    out.e1 = ((v1 / vn) * t1 + (v2 / vn) * t2).normalized();
    out.e2 = cross(n, out.e1);
    return out;
}

inline bool is_umbilic(const ImplicitOvaloid& M, Vec3 p, double tol) {
    const CurvatureData c = principal_curvatures(M, p);
    return std::abs(c.k1 - c.k2) < tol * (1.0 + std::abs(c.k1));
}

//! Sampled strict-convexity / regularity check; factories and loaders use it
//! to reject degenerate fields.
inline void validate_ovaloid(const ImplicitOvaloid& M, int n_samples = 200) {
    for (const Vec3& d : fibonacci_sphere_directions(n_samples)) {
        const Vec3 p = surface_point_along_ray(M, d);
        const CurvatureData c = principal_curvatures(M, p);
        if (!(c.k2 > 1e-9))
            fail("NotStrictlyConvex", "second fundamental form is not positive definite");
    }
}

// ---------------------------------------------------------------------------
// Contact curves
// ---------------------------------------------------------------------------

//! Tangency points of the tangent cone from the exterior source point,
//! sampled at uniform azimuth around the axis source -> inner point.
struct ContactCurve {
    Vec3 source;
    std::vector<Vec3> points;
    std::vector<Vec3> tangents; // unit tangents of the curve
};

namespace detail3d {

struct Frame {
    Vec3 d, u, v; // d: axis, (u, v): orthonormal complement
};

inline Frame axis_frame(Vec3 x, Vec3 inner) {
    const Vec3 d = (inner - x).normalized();
    const double ax = std::abs(d.x), ay = std::abs(d.y), az = std::abs(d.z);
    Vec3 seed = ax <= ay && ax <= az ? Vec3{1, 0, 0} : (ay <= az ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    const Vec3 u = cross(d, seed).normalized();
    return {d, u, cross(d, u)};
}

//! Newton solve of {F = 0, grad F . (p - x) = 0, (p - x) . m = 0} from p.
inline bool corrector(const ImplicitOvaloid& M, Vec3 x, Vec3 m, Vec3& p, double tol = 1e-11) {
    for (int it = 0; it < 50; ++it) {
        const double f = M.f(p);
        const Vec3 g = M.grad(p);
        const Vec3 rel = p - x;
        const double t = dot(g, rel);
        const double a = dot(rel, m);
        if (std::abs(f) < tol && std::abs(t) < tol && std::abs(a) < tol) return true;
        const Mat3 H = M.hess(p);
        const Vec3 gt = (H * rel) + g; // gradient of the tangency residual
        // rows: g, gt, m; rhs: -(f, t, a)
        const Vec3 r1 = g, r2 = gt, r3 = m;
        const double det = dot(r1, cross(r2, r3));
        if (std::abs(det) < 1e-300) return false;
        const Vec3 c1 = cross(r2, r3), c2 = cross(r3, r1), c3 = cross(r1, r2);
        const Vec3 step = (c1 * (-f) + c2 * (-t) + c3 * (-a)) / det;
        p = p + step;
        if (!std::isfinite(p.x + p.y + p.z)) return false;
    }
    return false;
}

//! Grazing-ray seed in the half-plane {x + alpha d + beta w, beta >= 0}:
//! bisect the cone angle between hitting and missing rays, then polish.
inline Vec3 seed_contact_point(const ImplicitOvaloid& M, Vec3 x, Vec3 d, Vec3 w) {
    double body_radius = 0.0;
    for (const Vec3& axis : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1},
                             Vec3{-1, 0, 0}, Vec3{0, -1, 0}, Vec3{0, 0, -1}})
        body_radius = std::max(
            body_radius, distance(surface_point_along_ray(M, axis), M.inner_point()));
    const double reach = distance(x, M.inner_point()) + 3.0 * body_radius;
    auto ray_min = [&](double psi, double* t_at_min) {
        const Vec3 dir = std::cos(psi) * d + std::sin(psi) * w;
        double best = std::numeric_limits<double>::infinity();
        double tb = 0.0;
        const int steps = 192;
        for (int i = 1; i <= steps; ++i) {
            const double t = reach * double(i) / double(steps);
            const double v = M.f(x + t * dir);
            if (v < best) {
                best = v;
                tb = t;
            }
        }
        if (t_at_min) *t_at_min = tb;
        return best;
    };
    double lo = 0.0; // hits (points at the body)
    double hi = kPi / 2.0;
    while (ray_min(hi, nullptr) < 0.0) {
        hi = 0.5 * (hi + kPi);
        if (hi > kPi - 1e-3) fail("ContinuationFailed", "no missing ray found from source");
    }
    if (!(ray_min(lo, nullptr) < 0.0))
        fail("ContinuationFailed", "axis ray does not hit the surface");
    for (int i = 0; i < 50; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ray_min(mid, nullptr) < 0.0 ? lo : hi) = mid;
    }
    double t_best = 0.0;
    ray_min(lo, &t_best);
    const Vec3 dir = std::cos(lo) * d + std::sin(lo) * w;
    return x + t_best * dir;
}

} // namespace detail3d

inline ContactCurve contact_curve(const ImplicitOvaloid& M, Vec3 x, int n = 256) {
    if (n < 16) fail("BadSampleCount", "contact curve needs at least 16 samples");
    if (!is_exterior(M, x)) fail("PointNotExterior", "contact curve needs an exterior source");
    const detail3d::Frame fr = detail3d::axis_frame(x, M.inner_point());

    ContactCurve out;
    out.source = x;
    out.points.reserve(std::size_t(n));
    out.tangents.reserve(std::size_t(n));

    Vec3 p = detail3d::seed_contact_point(M, x, fr.d, fr.u);
    if (!detail3d::corrector(M, x, fr.v, p))
        fail("ContinuationFailed", "seed correction did not converge");

    for (int k = 0; k < n; ++k) {
        const double phi = kTwoPi * double(k) / double(n);
        if (k > 0) {
            // predictor: rotate the previous point to the next azimuth
            const double dphi = kTwoPi / double(n);
            const Vec3 rel = p - x;
            const double ra = dot(rel, fr.d);
            const Vec3 perp = rel - ra * fr.d;
            const Vec3 perp_rot = std::cos(dphi) * perp + std::sin(dphi) * cross(fr.d, perp);
            p = x + ra * fr.d + perp_rot;
            // corrector with the azimuth locked to phi
            const Vec3 m = -std::sin(phi) * fr.u + std::cos(phi) * fr.v;
            if (!detail3d::corrector(M, x, m, p))
                fail("ContinuationFailed", "corrector failed at azimuth " + std::to_string(phi));
        }
        const Vec3 g = M.grad(p);
        const Vec3 gt = (M.hess(p) * (p - x)) + g;
        Vec3 tangent = cross(g, gt);
        const double tn = tangent.norm();
        if (tn == 0.0) fail("ContinuationFailed", "contact curve tangent degenerated");
        tangent = tangent / tn;
        const Vec3 ephi = cross(fr.d, p - x);
        if (dot(tangent, ephi) < 0.0) tangent = -tangent;
        out.points.push_back(p);
        out.tangents.push_back(tangent);
    }
    return out;
}

struct LengthSpread {
    double min = 0.0, max = 0.0, spread = 0.0;
};

inline LengthSpread tangent_length_spread(const ImplicitOvaloid& M, Vec3 x, int n = 256) {
    const ContactCurve cc = contact_curve(M, x, n);
    LengthSpread s;
    s.min = std::numeric_limits<double>::infinity();
    for (const Vec3& p : cc.points) {
        const double len = distance(p, x);
        s.min = std::min(s.min, len);
        s.max = std::max(s.max, len);
    }
    s.spread = s.max - s.min;
    return s;
}

// ---------------------------------------------------------------------------
// Equitangent locus scan
// ---------------------------------------------------------------------------

struct LocusRow {
    Vec3 point;
    double spread;
};

struct LocusScan {
    std::vector<LocusRow> exterior_rows; // grid order, one row per exterior point
    std::vector<Vec3> members;           // exterior points with spread < tol
    int n_interior = 0;
    int n_failed = 0;
};

//! Regular grid in [lo, hi]^3, x-major then y then z.
inline std::vector<Vec3> grid_points(int nx, int ny, int nz, double lo, double hi) {
    std::vector<Vec3> pts;
    pts.reserve(std::size_t(nx) * std::size_t(ny) * std::size_t(nz));
    auto coord = [&](int i, int n) {
        return n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * double(i) / double(n - 1);
    };
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            for (int iz = 0; iz < nz; ++iz)
                pts.push_back({coord(ix, nx), coord(iy, ny), coord(iz, nz)});
    return pts;
}

inline LocusScan sample_equitangent_locus(const ImplicitOvaloid& M, const std::vector<Vec3>& grid,
                                          double tol, int n_contact = 256) {
    LocusScan scan;
    for (const Vec3& p : grid) {
        if (!is_exterior(M, p)) {
            ++scan.n_interior;
            continue;
        }
        try {
            const LengthSpread s = tangent_length_spread(M, p, n_contact);
            scan.exterior_rows.push_back({p, s.spread});
            if (s.spread < tol) scan.members.push_back(p);
        } catch (const Error&) {
            ++scan.n_failed;
        }
    }
    return scan;
}

//! Lines through >= 3 of the given points (within tol). Intended for small
//! member sets; dense loci (the sphere) are reported as such.
struct LocusLine {
    Vec3 point, dir;
    int count = 0;
};

inline std::vector<LocusLine> find_collinear_lines(const std::vector<Vec3>& pts, double tol,
                                                   std::size_t max_points = 400) {
    std::vector<LocusLine> lines;
    if (pts.size() < 3 || pts.size() > max_points) return lines;
    auto on_line = [&](const LocusLine& L, Vec3 q) {
        return cross(q - L.point, L.dir).norm() <= tol;
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (distance(pts[i], pts[j]) < tol) continue;
            LocusLine cand{pts[i], (pts[j] - pts[i]).normalized(), 0};
            bool known = false;
            for (const LocusLine& L : lines)
                if (on_line(L, pts[i]) && on_line(L, pts[j])) known = true;
            if (known) continue;
            for (const Vec3& q : pts)
                if (on_line(cand, q)) ++cand.count;
            if (cand.count >= 3) lines.push_back(cand);
        }
    }
    return lines;
}

//! Exterior points of a sampled plane patch whose tangent-length spread
//! exceeds the threshold: witnesses that the plane is not inside H.
inline std::vector<LocusRow> plane_spread_witnesses(const ImplicitOvaloid& M, Vec3 plane_point,
                                                    Vec3 plane_normal, double extent,
                                                    int n_per_axis, double threshold,
                                                    int n_contact = 128, int max_witnesses = 1) {
    const Vec3 n = plane_normal.normalized();
    const double ax = std::abs(n.x), ay = std::abs(n.y), az = std::abs(n.z);
    Vec3 seed = ax <= ay && ax <= az ? Vec3{1, 0, 0} : (ay <= az ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    const Vec3 u = cross(n, seed).normalized();
    const Vec3 v = cross(n, u);
    std::vector<LocusRow> witnesses;
    for (int i = 0; i < n_per_axis && int(witnesses.size()) < max_witnesses; ++i) {
        for (int j = 0; j < n_per_axis && int(witnesses.size()) < max_witnesses; ++j) {
            const double s = -extent + 2.0 * extent * double(i) / double(n_per_axis - 1);
            const double t = -extent + 2.0 * extent * double(j) / double(n_per_axis - 1);
            const Vec3 p = plane_point + s * u + t * v;
            if (!is_exterior(M, p)) continue;
            try {
                const LengthSpread sp = tangent_length_spread(M, p, n_contact);
                if (sp.spread > threshold) witnesses.push_back({p, sp.spread});
            } catch (const Error&) {
                continue;
            }
        }
    }
    return witnesses;
}

// ---------------------------------------------------------------------------
// Umbilic search
// ---------------------------------------------------------------------------

namespace detail3d {

inline double umbilic_deviation(const ImplicitOvaloid& M, Vec3 p) {
    const CurvatureData c = principal_curvatures(M, p);
    return (c.k1 - c.k2) / (1.0 + std::abs(c.k1));
}

//! Nelder-Mead on the surface chart q(s, t) = project(p + s t1 + t t2).
inline Vec3 refine_umbilic(const ImplicitOvaloid& M, Vec3 p0, double scale) {
    const CurvatureData c0 = principal_curvatures(M, p0);
    const Vec3 t1 = c0.e1, t2 = c0.e2;
    auto eval = [&](double s, double t) {
        return umbilic_deviation(M, project_to_surface(M, p0 + s * t1 + t * t2));
    };
    struct Node {
        double s, t, val;
    };
    std::array<Node, 3> simplex{Node{0.0, 0.0, eval(0.0, 0.0)},
                                Node{scale, 0.0, eval(scale, 0.0)},
                                Node{0.0, scale, eval(0.0, scale)}};
    for (int it = 0; it < 220; ++it) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Node& a, const Node& b) { return a.val < b.val; });
        if (std::hypot(simplex[2].s - simplex[0].s, simplex[2].t - simplex[0].t) < 1e-12) break;
        const double cs = 0.5 * (simplex[0].s + simplex[1].s);
        const double ct = 0.5 * (simplex[0].t + simplex[1].t);
        Node refl{cs + (cs - simplex[2].s), ct + (ct - simplex[2].t), 0.0};
        refl.val = eval(refl.s, refl.t);
        if (refl.val < simplex[0].val) {
            Node exp{cs + 2.0 * (cs - simplex[2].s), ct + 2.0 * (ct - simplex[2].t), 0.0};
            exp.val = eval(exp.s, exp.t);
            simplex[2] = exp.val < refl.val ? exp : refl;
        } else if (refl.val < simplex[1].val) {
            simplex[2] = refl;
        } else {
            Node con{cs + 0.5 * (simplex[2].s - cs), ct + 0.5 * (simplex[2].t - ct), 0.0};
            con.val = eval(con.s, con.t);
            if (con.val < simplex[2].val) {
                simplex[2] = con;
            } else { // shrink toward the best vertex
                for (int i = 1; i < 3; ++i) {
                    simplex[std::size_t(i)].s =
                        simplex[0].s + 0.5 * (simplex[std::size_t(i)].s - simplex[0].s);
                    simplex[std::size_t(i)].t =
                        simplex[0].t + 0.5 * (simplex[std::size_t(i)].t - simplex[0].t);
                    simplex[std::size_t(i)].val =
                        eval(simplex[std::size_t(i)].s, simplex[std::size_t(i)].t);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(),
              [](const Node& a, const Node& b) { return a.val < b.val; });
    return project_to_surface(M, p0 + simplex[0].s * t1 + simplex[0].t * t2);
}

} // namespace detail3d

//! Umbilic points found from a coarse surface sampling followed by local
//! minimization of (k1 - k2)/(1 + |k1|), clustered by proximity. Intended
//! for surfaces with isolated umbilics.
inline std::vector<Vec3> find_umbilics(const ImplicitOvaloid& M, int n_samples = 10000,
                                       double tol = 1e-6) {
    struct Cand {
        Vec3 p;
        double val;
    };
    std::vector<Cand> samples;
    samples.reserve(std::size_t(n_samples));
    double scale = 0.0;
    for (const Vec3& d : fibonacci_sphere_directions(n_samples)) {
        const Vec3 p = surface_point_along_ray(M, d);
        scale = std::max(scale, distance(p, M.inner_point()));
        samples.push_back({p, detail3d::umbilic_deviation(M, p)});
    }
    std::sort(samples.begin(), samples.end(),
              [](const Cand& a, const Cand& b) { return a.val < b.val; });
    const double spacing = scale * std::sqrt(4.0 * kPi / double(n_samples));

    std::vector<Vec3> clusters;
    const double merge_radius = 6.0 * spacing;
    int refined = 0;
    for (const Cand& cand : samples) {
        if (refined >= 48) break;
        if (cand.val > std::max(16.0 * samples.front().val, 0.05)) break;
        bool near_known = false;
        for (const Vec3& c : clusters)
            if (distance(c, cand.p) < merge_radius) near_known = true;
        if (near_known) continue;
        ++refined;
        const Vec3 r = detail3d::refine_umbilic(M, cand.p, 1.5 * spacing);
        if (detail3d::umbilic_deviation(M, r) >= tol) continue;
        bool merged = false;
        for (const Vec3& c : clusters)
            if (distance(c, r) < merge_radius) merged = true;
        if (!merged) clusters.push_back(r);
    }
    return clusters;
}

// ---------------------------------------------------------------------------
// Line-of-curvature alignment and the sphere S(x)
// ---------------------------------------------------------------------------

//! Max angle between the contact-curve tangent and the nearest principal
//! direction. Near-umbilic points count as aligned: every direction is
//! principal there.
inline double joachimsthal_check(const ImplicitOvaloid& M, Vec3 x, int n = 256,
                                 double spread_tol = 1e-6) {
    const LengthSpread s = tangent_length_spread(M, x, n);
    if (s.spread >= spread_tol)
        fail("NotEquitangentSource", "tangent-length spread " + std::to_string(s.spread) +
                                         " exceeds " + std::to_string(spread_tol));
    const ContactCurve cc = contact_curve(M, x, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < cc.points.size(); ++i) {
        const CurvatureData c = principal_curvatures(M, cc.points[i]);
        if (std::abs(c.k1 - c.k2) < 1e-7 * (1.0 + std::abs(c.k1))) continue;
        const Vec3 t = cc.tangents[i];
        const double a1 = std::acos(std::clamp(std::abs(dot(t, c.e1)), 0.0, 1.0));
        const double a2 = std::acos(std::clamp(std::abs(dot(t, c.e2)), 0.0, 1.0));
        worst = std::max(worst, std::min(a1, a2));
    }
    return worst;
}

//! Orthogonality of M and the sphere S(x) through the contact curve:
//! max |(p - x) . n(p)| / |p - x| over the curve.
inline double sphere_s_of_x_residual(const ImplicitOvaloid& M, Vec3 x, int n = 256,
                                     double spread_tol = 1e-6) {
    const LengthSpread s = tangent_length_spread(M, x, n);
    if (s.spread >= spread_tol)
        fail("NotEquitangentSource", "tangent-length spread exceeds tolerance");
    const ContactCurve cc = contact_curve(M, x, n);
    double worst = 0.0;
    for (const Vec3& p : cc.points) {
        const Vec3 rel = p - x;
        worst = std::max(worst, std::abs(dot(rel, M.grad(p).normalized())) / rel.norm());
    }
    return worst;
}

} // namespace eqt
