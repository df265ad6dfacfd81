#pragma once

// Univariate polynomials with Gaussian-rational coefficients, constant term
// first. Exact arithmetic (including Euclidean gcd over Q(i)) is used for
// validation and certification; evaluation for analysis happens in
// complex<double> via Horner.

#include "fhc/numeric.hpp"

#include <complex>
#include <string>
#include <vector>

namespace fhc {

class ExactPolynomial {
  public:
    ExactPolynomial() = default;
    explicit ExactPolynomial(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) {
        normalize();
    }
    static ExactPolynomial constant(GaussianRational v) {
        return ExactPolynomial(std::vector<GaussianRational>{std::move(v)});
    }
    // Builds from integer coefficients, constant term first.
    static ExactPolynomial from_ints(const std::vector<long>& coeffs);

    // -1 for the zero polynomial, else index of the last nonzero coefficient.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    const std::vector<GaussianRational>& coefficients() const { return c_; }
    GaussianRational coefficient(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return GaussianRational{};
        return c_[k];
    }
    GaussianRational leading() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    std::complex<double> eval(std::complex<double> z) const {
        std::complex<double> acc{0.0, 0.0};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + to_complex(*it);
        return acc;
    }
    GaussianRational eval_exact(const GaussianRational& z) const {
        GaussianRational acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    ExactPolynomial derivative() const;
    // Coefficients of p(z - shift); used to recentre a factor at a translation center.
    ExactPolynomial shifted(const GaussianRational& shift) const;
    // Coefficients of p(s * z) for rational s.
    ExactPolynomial scaled_argument(const Rat& s) const;

    Int height() const {
        Int h = 0;
        for (const auto& a : c_) {
            Int t = fhc::height(a);
            if (t > h) h = t;
        }
        return h;
    }

    friend ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b);
    friend ExactPolynomial operator-(const ExactPolynomial& a, const ExactPolynomial& b);
    friend ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b);
    ExactPolynomial operator*(const GaussianRational& s) const;
    friend bool operator==(const ExactPolynomial& a, const ExactPolynomial& b) {
        return a.c_ == b.c_;
    }

    // Exact division with remainder over Q(i); divisor must be nonzero.
    static void divmod(const ExactPolynomial& a, const ExactPolynomial& b, ExactPolynomial& q,
                       ExactPolynomial& r);

    // Monic form (leading coefficient 1); zero polynomial stays zero.
    ExactPolynomial monic() const;

    std::string to_string() const;

  private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<GaussianRational> c_;
};

// Monic gcd via the Euclidean algorithm over Q(i); gcd(0, 0) = 0.
ExactPolynomial poly_gcd(ExactPolynomial a, ExactPolynomial b);

// Serialization of one coefficient as "a/b+c/di" (used by the catalogue file).
std::string gaussian_to_token(const GaussianRational& g);
GaussianRational gaussian_from_token(const std::string& token);

}  // namespace fhc
