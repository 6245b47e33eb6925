#include <catch2/catch_amalgamated.hpp>

#include "eqt/constructions.hpp"
#include "eqt/curves2d.hpp"
#include "oracles.hpp"

using namespace eqt;
using Catch::Approx;

namespace {

bool error_named(const Error& e, const std::string& name) { return e.name() == name; }

ArcSplineCurve full_circle(double r, Point2 c = {0.0, 0.0}) {
    return ArcSplineCurve({Arc2(Circle2(c, r), 0.0, kTwoPi, true)});
}

} // namespace

TEST_CASE("support curve frame") {
    const SupportCurve unit = SupportCurve::circle(1.0);
    CHECK(distance(unit.point_at(0.0), {1.0, 0.0}) < 1e-15);
    CHECK(distance(unit.tangent_at(0.0), Vec2{0.0, 1.0}) < 1e-15);
    const SupportCurve c3 = SupportCurve::circle(3.0);
    for (double t : {0.0, 0.7, 2.0, 4.5})
        CHECK(distance(c3.point_at(t), 3.0 * unit_vector(t)) < 1e-14);
    const SupportCurve e = SupportCurve::ellipse(2.0, 1.0);
    for (int i = 0; i < 64; ++i) {
        const double t = kTwoPi * i / 64.0;
        CHECK(std::abs(dot(e.normal_at(t), e.tangent_at(t))) < 1e-15);
        const Point2 p = e.point_at(t);
        CHECK(p.x * p.x / 4.0 + p.y * p.y == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("support curve constructor rejects non-convex data") {
    CHECK_THROWS_MATCHES(
        SupportCurve::fourier(1.0, {0.0, 0.9}, {}), Error,
        Catch::Matchers::Predicate<Error>(
            [](const Error& e) { return error_named(e, "NotStrictlyConvex"); }));
}

TEST_CASE("tangents from a point on the circle case") {
    const SupportCurve unit = SupportCurve::circle(1.0);
    const auto [t1, t2] = tangents_from_point(unit, {5.0, 0.0});
    CHECK(t1.length == Approx(std::sqrt(24.0)).epsilon(1e-12));
    CHECK(t2.length == Approx(std::sqrt(24.0)).epsilon(1e-12));
    CHECK(cross(t1.point - Point2{5.0, 0.0}, t2.point - Point2{5.0, 0.0}) > 0.0);
}

TEST_CASE("ellipse tangencies match the polar-line oracle") {
    const SupportCurve e = SupportCurve::ellipse(2.0, 1.0);
    SECTION("axis point (4, 0)") {
        const auto [t1, t2] = tangents_from_point(e, {4.0, 0.0});
        const auto [o1, o2] = oracles::ellipse_tangency_polar(2.0, 1.0, {4.0, 0.0});
        // oracle: tangency points (1, +-sqrt(3)/2), both lengths sqrt(9 + 3/4)
        CHECK(std::min(distance(t1.point, o1), distance(t1.point, o2)) < 1e-9);
        CHECK(std::min(distance(t2.point, o1), distance(t2.point, o2)) < 1e-9);
        CHECK(t1.point.x == Approx(1.0).epsilon(1e-9));
        CHECK(t1.length == Approx(std::sqrt(9.75)).epsilon(1e-10));
        CHECK(t2.length == Approx(std::sqrt(9.75)).epsilon(1e-10));
    }
    SECTION("generic point (4, 1) gives unequal lengths") {
        const auto [t1, t2] = tangents_from_point(e, {4.0, 1.0});
        CHECK(std::abs(t1.length - t2.length) > 0.1);
        const auto scan = oracles::scan_tangencies(e, {4.0, 1.0});
        REQUIRE(scan.size() == 2);
        for (const TangentData& t : {t1, t2}) {
            const double d = std::min(distance(t.point, scan[0].point),
                                      distance(t.point, scan[1].point));
            CHECK(d < 1e-9);
        }
    }
    SECTION("interior point is rejected") {
        CHECK_THROWS_MATCHES(tangents_from_point(e, {0.5, 0.2}), Error,
                             Catch::Matchers::Predicate<Error>(
                                 [](const Error& e2) { return error_named(e2, "PointNotExterior"); }));
    }
}

TEST_CASE("equitangent residual accepts circles and rejects ellipses") {
    const SupportCurve circle = SupportCurve::circle(1.0);
    std::vector<Point2> on_line;
    for (int i = 0; i < 100; ++i) on_line.push_back({-8.0 + 16.0 * i / 99.0, 3.0});
    CHECK(equitangent_residual(circle, on_line).max_residual < 1e-10);

    const SupportCurve e = SupportCurve::ellipse(2.0, 1.0);
    const EquitangentResult r = equitangent_residual(e, on_line);
    CHECK(r.max_residual > 0.01);
}

TEST_CASE("equitangent residual reports the offending locus index") {
    const SupportCurve circle = SupportCurve::circle(1.0);
    try {
        equitangent_residual(circle, {{5.0, 0.0}, {0.1, 0.1}});
        FAIL("expected PointNotExterior");
    } catch (const Error& e) {
        CHECK(e.name() == "PointNotExterior");
        CHECK(std::string(e.what()).find("locus point 1") != std::string::npos);
    }
}

TEST_CASE("euclidean width") {
    const SupportCurve c = SupportCurve::circle(1.7);
    for (double t : {0.0, 1.0, 2.5}) CHECK(euclidean_width(c, t) == Approx(3.4));
    const SupportCurve e = SupportCurve::ellipse(2.0, 1.0);
    CHECK(euclidean_width(e, 0.0) == Approx(4.0));
    CHECK(euclidean_width(e, kPi / 2.0) == Approx(2.0));
}

TEST_CASE("arc spline sampling") {
    const ArcSplineCurve circle = full_circle(1.0);
    SECTION("quarter spacing on the unit circle") {
        const auto samples = arcspline_to_samples(circle, 4);
        REQUIRE(samples.size() == 4);
        CHECK(distance(samples[0].first, {1.0, 0.0}) < 1e-12);
        CHECK(distance(samples[1].first, {0.0, 1.0}) < 1e-12);
        CHECK(distance(samples[2].first, {-1.0, 0.0}) < 1e-12);
        CHECK(distance(samples[3].first, {0.0, -1.0}) < 1e-12);
    }
    SECTION("polygonal length converges to the perimeter") {
        const auto samples = arcspline_to_samples(circle, 10000);
        double len = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i)
            len += distance(samples[i].first, samples[(i + 1) % samples.size()].first);
        CHECK(len == Approx(kTwoPi).epsilon(1e-6));
    }
    SECTION("joints land on the grid") {
        // two half circles: joints at params 0 and pi
        const ArcSplineCurve two({Arc2(Circle2({0, 0}, 1.0), 0.0, kPi, true),
                                  Arc2(Circle2({0, 0}, 1.0), kPi, kTwoPi, true)});
        const auto samples = arcspline_to_samples(two, 4);
        CHECK(distance(samples[0].first, {1.0, 0.0}) < 1e-12);
        CHECK(distance(samples[2].first, {-1.0, 0.0}) < 1e-12);
        CHECK_THROWS(arcspline_to_samples(two, 2));
    }
}

TEST_CASE("arc spline validation is decidable field by field") {
    SECTION("a valid loop") {
        const ArcSplineCurve c = full_circle(2.0, {1.0, 1.0});
        const ArcSplineValidation v = c.validate();
        CHECK(v.max_joint_gap < kGeomTol);
        CHECK(v.max_tangent_gap < 1e-9);
        CHECK(v.total_turning == Approx(kTwoPi).margin(1e-9));
        CHECK(v.uniformly_ccw);
        CHECK(v.corner_params.empty());
    }
    SECTION("a gap between arcs shows up in the joint residual") {
        const ArcSplineCurve broken({Arc2(Circle2({0, 0}, 1.0), 0.0, kPi, true),
                                     Arc2(Circle2({0.1, 0}, 1.0), kPi, kTwoPi, true)});
        CHECK(broken.validate().max_joint_gap > 0.05);
    }
    SECTION("a tangent kink shows up in the tangent residual") {
        // two arcs meeting with a normal jump at the joint
        const ArcSplineCurve kinked({Arc2(Circle2({0, 0}, 1.0), 0.0, kPi * 0.9, true),
                                     Arc2(Circle2({0, 0}, 1.0), kPi * 1.1, kTwoPi, true)});
        CHECK(kinked.validate().max_tangent_gap > 0.1);
        CHECK(kinked.validate().total_turning < kTwoPi - 0.1);
    }
    SECTION("clockwise input is normalized to counterclockwise") {
        const ArcSplineCurve cw({Arc2(Circle2({0, 0}, 1.0), kTwoPi, 0.0, false)});
        CHECK(cw.validate().uniformly_ccw);
        CHECK(cw.validate().total_turning == Approx(kTwoPi));
    }
}

TEST_CASE("arc spline tangency agrees with an independent dense scan") {
    // non-circular C1 arc splines, with and without corner arcs
    const ArcSplineCurve smooth = build_rounded_reuleaux(5, 1.0, 0.3).curve;
    const ArcSplineCurve cornered = build_rounded_reuleaux(3, 1.0, 0.0).curve;
    for (const ArcSplineCurve* curve : {&smooth, &cornered}) {
        for (int trial = 0; trial < 150; ++trial) {
            const double ang = oracles::uniform(0.0, kTwoPi);
            const Point2 x = Point2{oracles::uniform(2.0, 6.0) * std::cos(ang),
                                    oracles::uniform(2.0, 6.0) * std::sin(ang)};
            if (!is_exterior_point(*curve, x)) continue;
            const auto [t1, t2] = tangents_from_point(*curve, x);
            const auto scan = oracles::scan_tangencies(*curve, x);
            REQUIRE(scan.size() == 2);
            for (const TangentData& t : {t1, t2}) {
                const double err = std::min(std::abs(t.length - scan[0].length),
                                            std::abs(t.length - scan[1].length));
                REQUIRE(err < 1e-9);
            }
        }
    }
}

TEST_CASE("arc spline tangencies coincide with per-circle closed forms") {
    const ArcSplineCurve rr = build_rounded_reuleaux(5, 1.0, 0.25).curve;
    for (int trial = 0; trial < 100; ++trial) {
        const Point2 x = oracles::uniform(1.5, 5.0) * unit_vector(oracles::uniform(0.0, kTwoPi));
        if (!is_exterior_point(rr, x)) continue;
        const auto [t1, t2] = tangents_from_point(rr, x);
        for (const TangentData& t : {t1, t2}) {
            // the tangency must be one of the circle tangency points of the
            // arc that carries it
            bool matched = false;
            for (const Arc2& a : rr.arcs()) {
                if (a.circle.radius == 0.0 || power_of_point(x, a.circle) <= kGeomTol) continue;
                const auto [p1, p2] = tangent_points_to_circle(x, a.circle);
                if (distance(t.point, p1) < 1e-10 || distance(t.point, p2) < 1e-10)
                    matched = true;
            }
            REQUIRE(matched);
        }
    }
}

TEST_CASE("support tangency residual and circle lengths over random data") {
    for (int trial = 0; trial < 60; ++trial) {
        const SupportCurve curve = oracles::random_convex_support_curve();
        for (int k = 0; k < 8; ++k) {
            const Point2 x{oracles::uniform(-8, 8), oracles::uniform(-8, 8)};
            if (x.norm() < 3.0) continue;
            const auto [t1, t2] = tangents_from_point(curve, x);
            for (const TangentData& t : {t1, t2})
                REQUIRE(std::abs(cross(t.point - x, curve.tangent_at(t.param))) < 1e-9);
        }
    }
    for (int trial = 0; trial < 1000; ++trial) {
        const double r = oracles::uniform(0.3, 2.0);
        const SupportCurve c = SupportCurve::circle(r);
        Point2 x{oracles::uniform(-10, 10), oracles::uniform(-10, 10)};
        if (x.norm() < r + 0.2) x = x + Point2{r + 1.0, r + 1.0};
        const auto [t1, t2] = tangents_from_point(c, x);
        const double expect = std::sqrt(x.norm2() - r * r);
        REQUIRE(t1.length == Approx(expect).epsilon(1e-12));
        REQUIRE(t2.length == Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("tangent-circle foliation characterizes circles") {
    SECTION("circles are tangent to every leaf") {
        for (int trial = 0; trial < 20; ++trial) {
            const SupportCurve c = SupportCurve::circle(
                oracles::uniform(0.5, 2.0),
                {oracles::uniform(-2, 2), oracles::uniform(-2, 2)});
            REQUIRE(tangent_circle_foliation_residual(c, oracles::uniform(0.0, kTwoPi)) < 1e-10);
        }
    }
    SECTION("the ellipse crosses leaves and fails equitangency from its tangent line") {
        const SupportCurve e = SupportCurve::ellipse(2.0, 1.0);
        CHECK(tangent_circle_foliation_residual(e, kPi / 2.0) > 1e-2);
        // the matching equitangency failure from the same tangent line
        const Line2 ell = tangent_line_at(e, kPi / 2.0);
        std::vector<Point2> pts;
        for (int i = 0; i < 40; ++i)
            pts.push_back(ell.at((0.3 + 5.0 * double(i) / 40.0) * (i % 2 ? 1.0 : -1.0)));
        CHECK(equitangent_residual(e, pts).max_residual > 1e-3);
    }
    SECTION("circles are equitangent from their own tangent lines") {
        const SupportCurve c = SupportCurve::circle(1.0, {0.3, -0.2});
        const Line2 ell = tangent_line_at(c, 1.1);
        std::vector<Point2> pts;
        for (int i = 0; i < 40; ++i)
            pts.push_back(ell.at((0.3 + 5.0 * double(i) / 40.0) * (i % 2 ? 1.0 : -1.0)));
        CHECK(equitangent_residual(c, pts).max_residual < 1e-10);
    }
}

TEST_CASE("winding number classifies interior and exterior") {
    const SupportCurve e = SupportCurve::ellipse(2.0, 1.0, {1.0, -0.5});
    CHECK(std::abs(winding_number(e, {1.0, -0.5})) > 0.5);
    CHECK(std::abs(winding_number(e, {5.0, 5.0})) < 0.5);
    CHECK(is_exterior_point(e, {4.0, 2.0}));
    CHECK_FALSE(is_exterior_point(e, {0.0, 0.0}));
}
