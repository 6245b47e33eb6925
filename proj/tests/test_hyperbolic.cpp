#include <catch2/catch_amalgamated.hpp>

#include "eqt/hyperbolic.hpp"
#include "oracles.hpp"

using namespace eqt;
using Catch::Approx;

TEST_CASE("hyperbolic distance in the half-plane model") {
    CHECK(hyp_distance({0.0, 1.0}, {0.0, std::exp(1.0)}) == Approx(1.0).epsilon(1e-12));
    CHECK(hyp_distance({2.0, 0.7}, {2.0, 0.7}) == Approx(0.0).margin(1e-15));
    // cosh d = 1 + 4 / 2 = 3
    CHECK(hyp_distance({-1.0, 1.0}, {1.0, 1.0}) == Approx(std::acosh(3.0)).epsilon(1e-12));
    CHECK_THROWS_MATCHES(HalfPlanePoint(0.0, -1.0), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.name() == "NotInUpperHalfPlane"; }));
}

TEST_CASE("distance agrees with geodesic arclength integration") {
    CHECK(hyp_distance({-1.0, 1.0}, {1.0, 1.0}) ==
          Approx(oracles::hyp_distance_integrated({-1.0, 1.0}, {1.0, 1.0})).margin(1e-8));
    for (int trial = 0; trial < 1000; ++trial) {
        const HalfPlanePoint p{oracles::uniform(-4, 4), oracles::uniform(0.2, 4.0)};
        const HalfPlanePoint q{oracles::uniform(-4, 4), oracles::uniform(0.2, 4.0)};
        REQUIRE(hyp_distance(p, q) ==
                Approx(oracles::hyp_distance_integrated(p, q)).margin(1e-8));
    }
}

TEST_CASE("distance axioms hold on random triples") {
    for (int trial = 0; trial < 300; ++trial) {
        const HalfPlanePoint a{oracles::uniform(-3, 3), oracles::uniform(0.1, 3.0)};
        const HalfPlanePoint b{oracles::uniform(-3, 3), oracles::uniform(0.1, 3.0)};
        const HalfPlanePoint c{oracles::uniform(-3, 3), oracles::uniform(0.1, 3.0)};
        REQUIRE(hyp_distance(a, b) == Approx(hyp_distance(b, a)).margin(1e-14));
        REQUIRE(hyp_distance(a, c) <= hyp_distance(a, b) + hyp_distance(b, c) + 1e-12);
    }
}

TEST_CASE("geodesic extension lands at the requested distance") {
    const HalfPlanePoint from{-0.8, 1.3}, through{1.1, 0.6};
    const HalfPlanePoint ext = extend_along_geodesic(from, through, 0.37);
    CHECK(hyp_distance(through, ext) == Approx(0.37).epsilon(1e-10));
    CHECK(hyp_distance(from, ext) ==
          Approx(hyp_distance(from, through) + 0.37).epsilon(1e-10));
    // vertical geodesic
    const HalfPlanePoint v = extend_along_geodesic({2.0, 1.0}, {2.0, 2.0}, 0.5);
    CHECK(v.x == Approx(2.0));
    CHECK(hyp_distance({2.0, 2.0}, v) == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("orthogonality residual against the circle-circle criterion") {
    // curve: Euclidean circle center (0, 2) radius 1 as a support curve
    const SupportCurve curve = SupportCurve::circle(1.0, {0.0, 2.0});
    SECTION("orthogonal carrier: d^2 = r1^2 + r2^2") {
        // carrier centered (0,0) radius sqrt(3); intersections at (+-sqrt(3)/2, 3/2)
        const double s3 = std::sqrt(3.0);
        const GeodesicChord chord = geodesic_chord_on_circle(
            0.0, s3, HalfPlanePoint{s3 / 2.0, 1.5}, HalfPlanePoint{-s3 / 2.0, 1.5});
        const auto [rp, rq] = orthogonality_residual(chord, curve, -kPi / 6.0, kPi + kPi / 6.0);
        CHECK(rp < 1e-10);
        CHECK(rq < 1e-10);
    }
    SECTION("non-orthogonal carrier") {
        // radius 1.5 carrier: intersections at y = 21/16
        const double y = 21.0 / 16.0;
        const double x = std::sqrt(2.25 - y * y);
        // curve params: point (x, y) = (cos t, 2 + sin t)
        const double tp = std::atan2(y - 2.0, x);
        const double tq = std::atan2(y - 2.0, -x);
        const GeodesicChord chord =
            geodesic_chord_on_circle(0.0, 1.5, HalfPlanePoint{x, y}, HalfPlanePoint{-x, y});
        const auto [rp, rq] = orthogonality_residual(chord, curve, tp, tq);
        CHECK(rp > 0.1);
        CHECK(rq > 0.1);
    }
    SECTION("vertical chord through the circle center") {
        const GeodesicChord chord =
            geodesic_chord(HalfPlanePoint{0.0, 1.0}, HalfPlanePoint{0.0, 3.0});
        CHECK(chord.vertical);
        const auto [rp, rq] = orthogonality_residual(chord, curve, -kPi / 2.0, kPi / 2.0);
        CHECK(rp < 1e-12);
        CHECK(rq < 1e-12);
    }
    SECTION("endpoint mismatch is reported") {
        const GeodesicChord chord =
            geodesic_chord(HalfPlanePoint{0.3, 1.1}, HalfPlanePoint{0.5, 2.0});
        CHECK_THROWS_MATCHES(orthogonality_residual(chord, curve, 0.0, 1.0), Error,
                             Catch::Matchers::Predicate<Error>(
                                 [](const Error& e) { return e.name() == "EndpointMismatch"; }));
    }
}

namespace {
std::vector<double> boundary_samples(double lo, double hi, int n) {
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(lo + (hi - lo) * (double(i) + 0.5) / double(n));
    return xs;
}
} // namespace

TEST_CASE("hyperbolic disks are equitangent from the boundary line") {
    const double rho = 0.9;
    const SupportCurve disk = hyperbolic_disk_curve({0.0, 1.0}, rho);
    const auto xs = boundary_samples(-10.0, 10.0, 100);
    CHECK(equitangent_from_boundary_residual(disk, xs).max_residual < 1e-9);

    const auto profile = hyperbolic_width_profile(disk, xs);
    const auto [lo, hi] = width_profile_range(profile);
    CHECK(lo == Approx(2.0 * rho).margin(1e-8));
    CHECK(hi == Approx(2.0 * rho).margin(1e-8));
    // chord hyperbolic length cross-checked by integration at a few samples
    for (std::size_t i = 0; i < profile.size(); i += 29) {
        const auto [t1, t2] = tangents_from_point(disk, Point2{profile[i].x, 0.0});
        CHECK(profile[i].width ==
              Approx(oracles::hyp_distance_integrated(HalfPlanePoint::from(t1.point),
                                                      HalfPlanePoint::from(t2.point)))
                  .margin(1e-8));
    }
}

TEST_CASE("the Euclidean ellipse fails both boundary checks") {
    const SupportCurve e = SupportCurve::ellipse(2.0, 1.0, {0.0, 3.0});
    const auto xs = boundary_samples(-10.0, 10.0, 100);
    CHECK(equitangent_from_boundary_residual(e, xs).max_residual > 1e-3);
    CHECK_THROWS_MATCHES(hyperbolic_width_profile(e, xs), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& err) {
                             return err.name() == "NotEquitangentAtSample";
                         }));
}

TEST_CASE("hyperbolic Reuleaux triangle: equitangent iff constant width") {
    const HyperbolicReuleaux hr = build_hyperbolic_reuleaux(1.0, 0.2);
    SECTION("the three centers are mutually equidistant") {
        for (int i = 0; i < 3; ++i)
            CHECK(hyp_distance(hr.centers[std::size_t(i)], hr.centers[std::size_t((i + 1) % 3)]) ==
                  Approx(1.0).epsilon(1e-10));
    }
    SECTION("forward direction: equitangency from the boundary") {
        const auto xs = boundary_samples(-10.0, 10.0, 100);
        CHECK(equitangent_from_boundary_residual(hr.curve, xs).max_residual < 1e-7);
    }
    SECTION("width profile is constant at w + 2 eps") {
        const auto xs = boundary_samples(-10.0, 10.0, 100);
        const auto profile = hyperbolic_width_profile(hr.curve, xs);
        const auto [lo, hi] = width_profile_range(profile);
        CHECK(hi - lo < 1e-6);
        CHECK(lo == Approx(hr.width).margin(1e-6));
    }
    SECTION("tangency chords are orthogonal to the curve at both ends") {
        for (double x : {-3.7, -0.4, 2.9}) {
            const auto [t1, t2] = tangents_from_point(hr.curve, Point2{x, 0.0});
            const GeodesicChord chord = geodesic_chord_on_circle(
                x, 0.5 * (t1.length + t2.length), HalfPlanePoint::from(t1.point),
                HalfPlanePoint::from(t2.point));
            const auto [rp, rq] = orthogonality_residual(chord, hr.curve, t1.param, t2.param);
            CHECK(rp < 1e-9);
            CHECK(rq < 1e-9);
        }
    }
    SECTION("tolerance ladder: strong equitangency gives narrow widths") {
        const auto xs = boundary_samples(-20.0, 20.0, 200);
        if (equitangent_from_boundary_residual(hr.curve, xs).max_residual < 1e-7) {
            const auto profile = hyperbolic_width_profile(hr.curve, xs);
            const auto [lo, hi] = width_profile_range(profile);
            CHECK(hi - lo < 1e-5);
        }
    }
}

TEST_CASE("hyperbolic Reuleaux property is scale and parameter independent") {
    for (int trial = 0; trial < 12; ++trial) {
        const double w = oracles::uniform(0.3, 1.5);
        const double eps = oracles::uniform(0.0, 0.4);
        const double y0 = oracles::uniform(0.5, 2.0);
        const HyperbolicReuleaux hr = build_hyperbolic_reuleaux(w, eps, y0);
        const auto xs = boundary_samples(-8.0, 8.0, 40);
        REQUIRE(equitangent_from_boundary_residual(hr.curve, xs).max_residual < 1e-7);
        const auto profile = hyperbolic_width_profile(hr.curve, xs);
        const auto [lo, hi] = width_profile_range(profile);
        REQUIRE(hi - lo < 1e-7);
        REQUIRE(std::abs(lo - (w + 2.0 * eps)) < 1e-7);
    }
}

TEST_CASE("sharp hyperbolic Reuleaux (eps = 0) still has constant width") {
    const HyperbolicReuleaux hr = build_hyperbolic_reuleaux(0.8, 0.0);
    CHECK(hr.curve.validate().corner_params.size() == 3);
    const auto xs = boundary_samples(-6.0, 6.0, 60);
    CHECK(equitangent_from_boundary_residual(hr.curve, xs).max_residual < 1e-7);
    const auto profile = hyperbolic_width_profile(hr.curve, xs);
    const auto [lo, hi] = width_profile_range(profile);
    CHECK(hi - lo < 1e-6);
    CHECK(lo == Approx(0.8).margin(1e-6));
}
