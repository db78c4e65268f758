#include "finsec/geometry.hpp"

#include "finsec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace finsec::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double a) {
    a = std::remainder(a, 2.0 * kPi);
    return a;
}

double segment_distance(complex a, complex b, complex z) {
    const complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(z - a);
    double t = std::real((z - a) * std::conj(d)) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * d));
}

struct WindingState {
    double total = 0.0;
    double min_modulus = std::numeric_limits<double>::infinity();
};

// Accumulates the argument increment along mu in [m0, m1] of one arc,
// bisecting until consecutive samples differ by less than pi/4 in argument.
void accumulate(const CircularArc& arc, double m0, complex z0, double m1, complex z1,
                int depth, double tol, WindingState& st) {
    const double dist = segment_distance(z0, z1, complex{0.0, 0.0});
    const double step = std::arg(z1 / z0);
    const double chord = std::abs(z1 - z0);
    if (std::abs(step) < kPi / 4 || depth > 60 || chord < 1e-15) {
        st.min_modulus = std::min(st.min_modulus, dist);
        if (dist < tol || std::abs(step) >= kPi / 4)
            throw CurveThroughOrigin(dist, "arc sampling");
        st.total += step;
        return;
    }
    const double mm = 0.5 * (m0 + m1);
    const complex zm = arc_point(arc, mm);
    if (std::abs(zm) < tol) throw CurveThroughOrigin(std::abs(zm), "arc sample");
    accumulate(arc, m0, z0, mm, zm, depth + 1, tol, st);
    accumulate(arc, mm, zm, m1, z1, depth + 1, tol, st);
}

}  // namespace

double conjugate_exponent(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("exponent p must lie in (1, inf)");
    return p / (p - 1.0);
}

complex f_param(double s, double mu) {
    if (!(s > 1.0)) throw DomainError("arc parameter s must exceed 1");
    if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("mu must lie in [0, 1]");
    if (s == 2.0) return {mu, 0.0};
    if (mu == 0.0) return {0.0, 0.0};
    if (mu == 1.0) return {1.0, 0.0};
    const double theta = kPi - 2.0 * kPi / s;
    return std::sin(theta * mu) / std::sin(theta) * std::polar(1.0, theta * (mu - 1.0));
}

CircularArc CircularArc::make(complex z1, complex z2, double s) {
    if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("arc parameter s must lie in (1, inf)");
    return CircularArc{z1, z2, s};
}

CircularArc CircularArc::reversed() const {
    return CircularArc{z2, z1, s == 2.0 ? 2.0 : s / (s - 1.0)};
}

complex arc_point(const CircularArc& arc, double mu) {
    const complex f = f_param(arc.s, mu);
    if (arc.z1 == arc.z2) return arc.z1;
    return arc.z1 * (1.0 - f) + arc.z2 * f;
}

bool arc_contains(const CircularArc& arc, complex z, double tol) {
    if (std::abs(z - arc.z1) <= tol || std::abs(z - arc.z2) <= tol) return true;
    if (arc.degenerate()) return false;
    if (arc.s == 2.0) return segment_distance(arc.z1, arc.z2, z) <= tol;
    const complex u = z - arc.z1;
    const complex v = z - arc.z2;
    const double defect = wrap_pi(std::arg(u / v) - 2.0 * kPi / arc.s);
    // |grad arg((z-z1)/(z-z2))| = |z1-z2| / (|z-z1||z-z2|)
    const double dist = std::abs(defect) * std::abs(u) * std::abs(v) / std::abs(arc.z1 - arc.z2);
    return dist <= tol;
}

ArcCurve::ArcCurve(std::vector<CircularArc> arcs) : arcs_(std::move(arcs)) {
    double scale = 1.0;
    for (const auto& a : arcs_) scale = std::max({scale, std::abs(a.z1), std::abs(a.z2)});
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
        const auto& next = arcs_[(k + 1) % arcs_.size()];
        if (std::abs(arcs_[k].z2 - next.z1) > 1e-12 * scale)
            throw DomainError("arc curve does not close");
    }
}

bool ArcCurve::is_point() const noexcept {
    return std::all_of(arcs_.begin(), arcs_.end(), [&](const CircularArc& a) {
        return a.degenerate() && a.z1 == arcs_.front().z1;
    });
}

ArcCurve ArcCurve::reversed() const {
    std::vector<CircularArc> out;
    out.reserve(arcs_.size());
    for (auto it = arcs_.rbegin(); it != arcs_.rend(); ++it) out.push_back(it->reversed());
    return ArcCurve(std::move(out));
}

ArcCurve ArcCurve::rotated(std::size_t k) const {
    if (arcs_.empty()) return *this;
    std::vector<CircularArc> out(arcs_);
    std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % out.size()), out.end());
    return ArcCurve(std::move(out));
}

std::vector<complex> ArcCurve::sample(std::size_t per_arc) const {
    per_arc = std::max<std::size_t>(per_arc, 2);
    std::vector<complex> pts;
    pts.reserve(arcs_.size() * per_arc);
    for (const auto& a : arcs_)
        for (std::size_t i = 0; i < per_arc; ++i)
            pts.push_back(arc_point(a, static_cast<double>(i) / static_cast<double>(per_arc - 1)));
    return pts;
}

ArcCurve triple_curve(double p, complex z1, complex z2, complex z3) {
    conjugate_exponent(p);
    return ArcCurve({CircularArc{z1, z2, p}, CircularArc{z2, z3, p}, CircularArc{z3, z1, p}});
}

ArcCurve polygon_curve(double p, std::span<const complex> values) {
    conjugate_exponent(p);
    std::vector<CircularArc> arcs;
    if (values.empty()) return ArcCurve{};
    for (std::size_t k = 0; k < values.size(); ++k)
        arcs.push_back(CircularArc{values[k], values[(k + 1) % values.size()], p});
    return ArcCurve(std::move(arcs));
}

int winding_about_origin(const ArcCurve& curve, double min_modulus_tol) {
    if (curve.arcs().empty()) return 0;
    if (curve.is_point()) {
        const double r = std::abs(curve.arcs().front().z1);
        if (r < min_modulus_tol) throw CurveThroughOrigin(r, "point curve");
        return 0;
    }
    WindingState st;
    for (const auto& arc : curve.arcs()) {
        if (std::abs(arc.z1) < min_modulus_tol) throw CurveThroughOrigin(std::abs(arc.z1), "arc endpoint");
        if (arc.degenerate()) continue;
        constexpr int kSeed = 16;
        double m0 = 0.0;
        complex z0 = arc.z1;
        for (int i = 1; i <= kSeed; ++i) {
            const double m1 = static_cast<double>(i) / kSeed;
            const complex z1 = arc_point(arc, m1);
            if (std::abs(z1) < min_modulus_tol) throw CurveThroughOrigin(std::abs(z1), "arc sample");
            accumulate(arc, m0, z0, m1, z1, 0, min_modulus_tol, st);
            m0 = m1;
            z0 = z1;
        }
    }
    const double turns = st.total / (2.0 * kPi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 0.1)
        throw CurveThroughOrigin(st.min_modulus, "non-integral winding residual");
    return static_cast<int>(rounded);
}

LensDomain::LensDomain(double p) : p_(p), q_(conjugate_exponent(p)) {
    s_min_ = std::min(p_, q_);
    s_max_ = std::max(p_, q_);
    if (std::abs(p_ - 2.0) < 1e-15) s_min_ = s_max_ = 2.0;
}

bool LensDomain::contains(complex z, double tol) const {
    if (std::abs(z) <= tol || std::abs(z - 1.0) <= tol) return true;
    double theta = std::arg(z / (z - 1.0));
    if (theta < 0.0) theta += 2.0 * kPi;
    const double lo = 2.0 * kPi / s_max_;
    const double hi = 2.0 * kPi / s_min_;
    auto gap = [&](double t) { return std::max({0.0, lo - t, t - hi}); };
    const double defect = std::min(gap(theta), gap(theta - 2.0 * kPi));
    return defect * std::abs(z) * std::abs(z - 1.0) <= tol;
}

ArcCurve LensDomain::boundary() const {
    return ArcCurve({CircularArc{0.0, 1.0, s_max_}, CircularArc{1.0, 0.0, s_max_}});
}

complex LensDomain::interior_point(double t, double mu) const {
    const double inv = (1.0 - t) / s_max_ + t / s_min_;
    double s = 1.0 / inv;
    if (std::abs(s - 2.0) < 1e-14) s = 2.0;
    return f_param(s, mu);
}

bool lens_contains(double p, complex z, double tol) { return LensDomain(p).contains(z, tol); }

double lens_distance(double p, complex z) {
    const LensDomain lens(p);
    if (lens.contains(z, 0.0)) return 0.0;
    if (lens.is_segment()) {
        const double t = std::clamp(z.real(), 0.0, 1.0);
        return std::abs(z - complex{t, 0.0});
    }
    const auto pts = lens.boundary().sample(2048);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const complex a = pts[k], d = pts[k + 1] - a;
        const double n2 = std::norm(d);
        const double t = n2 > 0.0 ? std::clamp(std::real((z - a) * std::conj(d)) / n2, 0.0, 1.0) : 0.0;
        best = std::min(best, std::abs(z - (a + t * d)));
    }
    return best;
}

}  // namespace finsec::geometry
