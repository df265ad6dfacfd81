#pragma once

// Cancellation-free geometry for points far from the origin. Translation
// centers live at exact integer moduli that reach ~10^33, so naive
// complex<double> subtraction of nearby points loses everything. The helpers
// here route every difference through an exact modulus difference plus a
// stable angular cross term:
//   r e^{i phi} - a e^{i theta} = e^{i theta} [ (r - a) + r (e^{i(phi-theta)} - 1) ],
// where (r - a) is computed in exact rational arithmetic and
// e^{ix} - 1 = -2 sin^2(x/2) + i sin(x) keeps small angles accurate.

#include "fhc/numeric.hpp"

#include <cmath>
#include <complex>

namespace fhc {

// A circle radius carried both exactly and as a double.
struct Radius {
    Rat exact;
    double value = 0.0;

    Radius() = default;
    explicit Radius(Rat r) : exact(std::move(r)), value(to_double(exact)) {}
    explicit Radius(const Int& r) : exact(r), value(to_double(exact)) {}
    static Radius from_double(double r) { return Radius(rat_from_double(r)); }
};

inline std::complex<double> expm1_i(double x) {
    double s = std::sin(0.5 * x);
    return {-2.0 * s * s, std::sin(x)};
}

// z - b for z = r e^{i phi} (r exact) and b = a e^{i theta} (a exact integer).
inline std::complex<double> circle_point_minus_center(const Radius& r, double phi, const Int& a,
                                                      double theta) {
    double head = to_double(r.exact - Rat(a));
    std::complex<double> bracket = std::complex<double>(head, 0.0) + r.value * expm1_i(phi - theta);
    return std::polar(1.0, theta) * bracket;
}

// (z - b) e^{-i theta} for z = r e^{i (theta + delta)} and b = a e^{i theta}:
// the caller supplies the angular offset delta directly, so features far
// below the absolute double resolution of the angle stay representable.
inline std::complex<double> offset_point_minus_center(const Radius& r, const Int& a,
                                                      double delta) {
    double head = to_double(Rat(r.exact - Rat(a)));
    return std::complex<double>(head, 0.0) + r.value * expm1_i(delta);
}

// b1 - b2 for b_i = a_i e^{i theta_i}.
inline std::complex<double> center_minus_center(const Int& a1, double theta1, const Int& a2,
                                                double theta2) {
    double head = to_double(Int(a1 - a2));
    std::complex<double> bracket =
        std::complex<double>(head, 0.0) + to_double(a1) * expm1_i(theta1 - theta2);
    return std::polar(1.0, theta2) * bracket;
}

// |b1 - b2| as a sum of two non-negative terms: (a1-a2)^2 + 4 a1 a2 sin^2(d/2).
inline double center_distance(const Int& a1, double theta1, const Int& a2, double theta2) {
    double diff = to_double(Int(a1 - a2));
    double s = std::sin(0.5 * (theta1 - theta2));
    double cross = 4.0 * to_double(a1) * to_double(a2) * s * s;
    return std::sqrt(diff * diff + cross);
}

// log |a e^{i theta} + rho| for a moderate displacement rho (|rho| << a).
inline double log_modulus_of_displaced(const Int& a, double theta, std::complex<double> rho) {
    double ad = to_double(a);
    if (ad == 0.0) return std::log(std::abs(rho));
    std::complex<double> rotated = rho * std::polar(1.0, -theta);
    double t = (2.0 * rotated.real() + std::norm(rho) / ad) / ad;
    return std::log(ad) + 0.5 * std::log1p(t);
}

inline double modulus_of_displaced(const Int& a, double theta, std::complex<double> rho) {
    return std::exp(log_modulus_of_displaced(a, theta, rho));
}

}  // namespace fhc
