#pragma once

// Circular arcs A_s(z1, z2), closed arc curves, winding numbers and the
// lentiform domain L_p.
//
// The arc A_s(z1, z2) is the locus of points z from which the segment
// [z1, z2] is seen under the angle 2*pi/s, i.e. arg((z - z1)/(z - z2)) = 2*pi/s
// (mod 2*pi), together with the endpoints. It is traversed from z1 to z2 by
//
//     z(mu) = z1 * (1 - f_s(mu)) + z2 * f_s(mu),   mu in [0, 1].
//
// For s = 2 it is the segment, for s > 2 it bulges to the right of the
// directed line z1 -> z2 and for 1 < s < 2 to the left.

#include <complex>
#include <span>
#include <vector>

namespace finsec::geometry {

using complex = std::complex<double>;

inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kMinModulusTol = 1e-9;

/// Hoelder conjugate q = p / (p - 1). Throws DomainError for p <= 1.
double conjugate_exponent(double p);

/// f_s(mu). Throws DomainError if s <= 1 or mu is outside [0, 1].
complex f_param(double s, double mu);

struct CircularArc {
    complex z1;
    complex z2;
    double s = 2.0;

    /// Validating constructor; throws DomainError if s <= 1.
    static CircularArc make(complex z1, complex z2, double s);

    bool degenerate() const noexcept { return z1 == z2; }

    /// Same point set traversed from z2 to z1, which is A_{s/(s-1)}(z2, z1).
    CircularArc reversed() const;

    friend bool operator==(const CircularArc&, const CircularArc&) = default;
};

complex arc_point(const CircularArc& arc, double mu);

/// Membership in the point set A_s(z1, z2) with endpoints, via the angle
/// characterisation. The angular defect is converted to an approximate
/// distance so that `tol` is a length.
bool arc_contains(const CircularArc& arc, complex z, double tol = kMembershipTol);

/// Closed oriented curve made of arcs; arc k ends where arc k+1 starts.
class ArcCurve {
public:
    ArcCurve() = default;
    /// Throws DomainError when the endpoint chain does not close within 1e-12 (relative).
    explicit ArcCurve(std::vector<CircularArc> arcs);

    std::span<const CircularArc> arcs() const noexcept { return arcs_; }
    bool is_point() const noexcept;

    ArcCurve reversed() const;
    ArcCurve rotated(std::size_t k) const;

    /// Polyline through the curve with `per_arc` samples per arc (arc endpoints included).
    std::vector<complex> sample(std::size_t per_arc) const;

private:
    std::vector<CircularArc> arcs_;
};

/// Oriented curve A_p(z1,z2) u A_p(z2,z3) u A_p(z3,z1).
ArcCurve triple_curve(double p, complex z1, complex z2, complex z3);

/// Closed curve through the values v0, v1, ..., v_{n-1} joined by A_p arcs
/// (including the closing arc from v_{n-1} back to v0).
ArcCurve polygon_curve(double p, std::span<const complex> values);

/// Winding number about 0 by adaptive sampling with argument unwrapping.
/// Point curves return 0. Throws CurveThroughOrigin if the curve comes
/// within `min_modulus_tol` of the origin.
int winding_about_origin(const ArcCurve& curve, double min_modulus_tol = kMinModulusTol);

/// The lentiform domain L_p = union of A_s(0,1) over s in [min(p,q), max(p,q)].
class LensDomain {
public:
    explicit LensDomain(double p);

    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }
    double s_min() const noexcept { return s_min_; }
    double s_max() const noexcept { return s_max_; }
    /// True when p = 2 and the domain degenerates to the segment [0, 1].
    bool is_segment() const noexcept { return s_min_ == s_max_; }

    bool contains(complex z, double tol = kMembershipTol) const;

    /// Positively oriented boundary A_{s_max}(0,1) followed by A_{s_max}(1,0).
    ArcCurve boundary() const;

    /// Point of A_s(0,1) where 1/s = (1 - t)/s_max + t/s_min, t in [0,1].
    complex interior_point(double t, double mu) const;

private:
    double p_;
    double q_;
    double s_min_;
    double s_max_;
};

bool lens_contains(double p, complex z, double tol = kMembershipTol);

/// Euclidean distance from z to L_p (0 inside).
double lens_distance(double p, complex z);

}  // namespace finsec::geometry
