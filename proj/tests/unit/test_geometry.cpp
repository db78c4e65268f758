#include <doctest.h>

#include "finsec/errors.hpp"
#include "finsec/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace finsec;
using namespace finsec::geometry;

namespace {

// Angle under which the segment [z1, z2] is seen from z, in (0, 2 pi).
double seen_angle(complex z, complex z1, complex z2) {
    double a = std::arg((z - z1) / (z - z2));
    if (a <= 0) a += 2 * std::numbers::pi;
    return a;
}

}  // namespace

TEST_CASE("conjugate exponent") {
    CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0));
    CHECK(conjugate_exponent(4.0) == doctest::Approx(4.0 / 3.0));
    CHECK(conjugate_exponent(1.5) == doctest::Approx(3.0));
    CHECK_THROWS_AS(conjugate_exponent(1.0), DomainError);
    CHECK_THROWS_AS(conjugate_exponent(0.5), DomainError);
}

TEST_CASE("f_param endpoints and domain") {
    for (double s : {1.2, 2.0, 3.0, 7.5}) {
        CHECK(std::abs(f_param(s, 0.0)) < 1e-14);
        CHECK(std::abs(f_param(s, 1.0) - 1.0) < 1e-14);
    }
    CHECK(std::abs(f_param(2.0, 0.5) - 0.5) < 1e-14);
    CHECK(std::abs(f_param(2.0, 0.3).imag()) < 1e-14);
    CHECK_THROWS_AS(f_param(1.0, 0.5), DomainError);
    CHECK_THROWS_AS(f_param(3.0, -0.1), DomainError);
    CHECK_THROWS_AS(f_param(3.0, 1.1), DomainError);
}

TEST_CASE("arc points see the chord under 2 pi / s") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0), m(0.05, 0.95), sd(1.1, 8.0);
    for (int k = 0; k < 200; ++k) {
        const complex z1{u(rng), u(rng)}, z2{u(rng), u(rng)};
        if (std::abs(z1 - z2) < 1e-2) continue;
        const double s = sd(rng), mu = m(rng);
        const auto arc = CircularArc::make(z1, z2, s);
        const complex z = arc_point(arc, mu);
        const double want = 2 * std::numbers::pi / s;
        const double got = seen_angle(z, z1, z2);
        CHECK(got == doctest::Approx(want).epsilon(1e-8));
        CHECK(arc_contains(arc, z, 1e-7));
    }
}

TEST_CASE("s = 2 arc is the segment; s > 2 bulges to the right") {
    const auto seg = CircularArc::make(0.0, 1.0, 2.0);
    CHECK(arc_contains(seg, 0.25));
    CHECK(arc_contains(seg, 0.0));
    CHECK(arc_contains(seg, 1.0));
    CHECK_FALSE(arc_contains(seg, complex{0.5, 0.1}));
    CHECK_FALSE(arc_contains(seg, 1.5));

    // Direction 0 -> 1 points along +re; right of it is -im.
    const complex mid = arc_point(CircularArc::make(0.0, 1.0, 4.0), 0.5);
    CHECK(mid.imag() < 0.0);
    const complex mid_left = arc_point(CircularArc::make(0.0, 1.0, 4.0 / 3.0), 0.5);
    CHECK(mid_left.imag() > 0.0);
}

TEST_CASE("reversed arc has the same point set") {
    const auto arc = CircularArc::make({0.3, -1.0}, {1.5, 0.7}, 3.0);
    const auto rev = arc.reversed();
    CHECK(rev.z1 == arc.z2);
    CHECK(rev.z2 == arc.z1);
    CHECK(rev.s == doctest::Approx(1.5));
    for (double mu : {0.1, 0.4, 0.77}) CHECK(arc_contains(rev, arc_point(arc, mu), 1e-8));
    CHECK_THROWS_AS(CircularArc::make(0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("winding of triple curves") {
    // Unit-circle points, p = 2: the triangle through them encloses 0 once.
    const complex a = std::polar(1.0, 0.0), b = std::polar(1.0, 2.1), c = std::polar(1.0, 4.2);
    CHECK(winding_about_origin(triple_curve(2.0, a, b, c)) == 1);
    CHECK(winding_about_origin(triple_curve(2.0, a, c, b)) == -1);
    // Away from the origin.
    CHECK(winding_about_origin(triple_curve(2.0, 2.0, complex{3.0, 1.0}, complex{3.0, -1.0})) == 0);
    // Degenerate curve through one point.
    CHECK(winding_about_origin(triple_curve(3.0, 1.0, 1.0, 1.0)) == 0);
    // Through the origin: 1 -> -1 along the segment.
    CHECK_THROWS_AS(winding_about_origin(triple_curve(2.0, 1.0, -1.0, 1.0)), CurveThroughOrigin);
}

TEST_CASE("winding matches an independent argument count") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0), sd(1.2, 5.0);
    int compared = 0;
    for (int k = 0; k < 150; ++k) {
        std::vector<complex> v{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
        const double p = sd(rng);
        const auto curve = polygon_curve(p, v);
        const auto pts = curve.sample(4000);
        double min_mod = 1e300, total = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            min_mod = std::min(min_mod, std::abs(pts[i]));
            total += std::arg(pts[(i + 1) % pts.size()] / pts[i]);
        }
        if (min_mod < 0.05) continue;
        ++compared;
        CHECK(winding_about_origin(curve) == static_cast<int>(std::lround(total / (2 * std::numbers::pi))));
    }
    CHECK(compared > 50);
}

TEST_CASE("reversing a curve negates the winding; rotation keeps it") {
    const auto c = triple_curve(3.0, complex{1.0, 0.2}, complex{-1.0, 1.0}, complex{-0.5, -1.5});
    const int w = winding_about_origin(c);
    CHECK(winding_about_origin(c.reversed()) == -w);
    CHECK(winding_about_origin(c.rotated(1)) == w);
    CHECK(winding_about_origin(c.rotated(2)) == w);
}

TEST_CASE("open chain is rejected") {
    std::vector<CircularArc> arcs{CircularArc::make(0.0, 1.0, 2.0), CircularArc::make(1.0, 2.0, 2.0)};
    CHECK_THROWS_AS(ArcCurve{arcs}, DomainError);
}

TEST_CASE("lens for p = 2 is the segment [0, 1]") {
    const LensDomain L(2.0);
    CHECK(L.is_segment());
    CHECK(L.contains(0.0));
    CHECK(L.contains(1.0));
    CHECK(L.contains(0.5));
    CHECK_FALSE(L.contains(complex{0.5, 0.01}));
    CHECK_FALSE(L.contains(-0.01));
    CHECK(lens_distance(2.0, complex{0.5, 0.3}) == doctest::Approx(0.3));
    CHECK(lens_distance(2.0, 2.0) == doctest::Approx(1.0));
    CHECK(lens_distance(2.0, 0.7) == 0.0);
}

TEST_CASE("lens for p and its conjugate coincide") {
    for (double p : {1.5, 3.0, 4.0}) {
        const LensDomain a(p), b(conjugate_exponent(p));
        CHECK(a.s_min() == doctest::Approx(b.s_min()));
        CHECK(a.s_max() == doctest::Approx(b.s_max()));
        for (complex z : {complex{0.5, 0.1}, complex{0.5, -0.2}, complex{0.9, 0.05}, complex{0.5, 0.6}})
            CHECK(a.contains(z) == b.contains(z));
    }
}

TEST_CASE("lens membership agrees with the angle characterisation") {
    // z in L_p iff the chord [0,1] is seen from z under an angle between
    // 2 pi / s_max and 2 pi / s_min (taking the angle in (0, 2 pi)).
    const double p = 4.0;
    const LensDomain L(p);
    const double lo = 2 * std::numbers::pi / L.s_max(), hi = 2 * std::numbers::pi / L.s_min();
    int disagreements = 0, inside = 0;
    for (int i = -40; i <= 40; ++i)
        for (int j = -20; j <= 60; ++j) {
            const complex z{j / 40.0, i / 40.0};
            if (std::abs(z) < 1e-9 || std::abs(z - 1.0) < 1e-9) continue;
            const double a = seen_angle(z, 0.0, 1.0);
            const bool want = a >= lo && a <= hi;
            const double margin = std::min(std::abs(a - lo), std::abs(a - hi));
            if (margin < 1e-6) continue;
            if (L.contains(z) != want) ++disagreements;
            inside += want;
        }
    CHECK(disagreements == 0);
    CHECK(inside > 100);
}

TEST_CASE("lens boundary and interior points") {
    const LensDomain L(3.0);
    const auto b = L.boundary();
    CHECK(b.arcs().size() == 2);
    for (auto z : b.sample(64)) CHECK(L.contains(z, 1e-8));
    for (double t : {0.0, 0.5, 1.0})
        for (double mu : {0.2, 0.5, 0.8}) CHECK(L.contains(L.interior_point(t, mu), 1e-8));
    // The boundary circles 0.5 once.
    auto shifted = b.sample(256);
    double total = 0.0;
    for (std::size_t i = 0; i < shifted.size(); ++i)
        total += std::arg((shifted[(i + 1) % shifted.size()] - 0.5) / (shifted[i] - 0.5));
    CHECK(std::abs(std::abs(total) - 2 * std::numbers::pi) < 1e-6);
}

TEST_CASE("lens distance") {
    CHECK(lens_distance(3.0, 0.5) == 0.0);
    CHECK(lens_distance(3.0, -1.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(lens_distance(3.0, 3.0) == doctest::Approx(2.0).epsilon(1e-6));
    const double d = lens_distance(3.0, complex{0.5, 2.0});
    CHECK(d > 0.0);
    CHECK(d < 2.0);
}
