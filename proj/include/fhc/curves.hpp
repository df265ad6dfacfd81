#pragma once

// Model rational curves [p_0 : ... : p_m] with exact Gaussian-rational
// coefficients, deg p_0 >= deg p_i + 4, and per-curve certified parameters:
//   R    decay radius: |p_j(z)| * |z|^3 <= |p_0(z)| for every |z| >= R,
//   n    total pole count of the component ratios p_j / p_0,
//   eta  integer dominating max{2R, 3^k, n, (2^(k+4) * zeta(3))^(1/3)}.
//
// The decay certificate works through the majorant
//   L_j(R) = lb|lead p_0| R^d0 - sum lb-upper|c_0i| R^i - sum ub|c_ji| R^(i+3),
// whose coefficient signs change exactly once, so positivity at R implies
// positivity beyond R; the smallest certifiable radius is its unique positive
// root, located by bisection in exact rational arithmetic.

#include "fhc/numeric.hpp"
#include "fhc/polynomial.hpp"
#include "fhc/roots.hpp"

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fhc {

struct common_zero_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct degree_margin_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct pole_hit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RationalCurve {
    std::vector<ExactPolynomial> components;  // p_0 .. p_m
    int m = 0;

    const ExactPolynomial& p0() const { return components.front(); }
    Int max_degree() const { return components.front().degree(); }
    Int height() const {
        Int h = 0;
        for (const auto& p : components) {
            Int t = p.height();
            if (t > h) h = t;
        }
        return h;
    }
    std::string canonical_string() const;
};

// Checks the no-common-zero and degree-margin requirements, removing the
// overall polynomial gcd is not allowed (a nonconstant gcd is a common zero);
// the constant gcd is normalized away by making p_0 monic.
RationalCurve validate_curve(const std::vector<ExactPolynomial>& candidate);

// Certified decay radius (see the file header). Always finite for a valid
// curve; the returned rational is within a factor (1 + 2^-20) of the smallest
// radius this certificate can produce, never below 1e-6.
Rat decay_radius(const RationalCurve& curve);

// Sum over nonzero p_j (j >= 1) of deg(p_0 / gcd(p_0, p_j)).
int pole_count(const RationalCurve& curve);

// Certified rational upper bound for sum_{n >= 1} n^-3: partial sum of the
// first `terms` terms with directed fixed-point rounding, plus the integral
// tail bound 1 / (2 * terms^2).
Rat zeta3_upper_bound(long terms = 1000000);

// Smallest integer eta with eta >= 2R, eta >= 3^k, eta >= n, and
// eta^3 >= 2^(k+4) * zeta3 (exact rational comparisons throughout).
Int choose_eta(const Rat& decay_radius, int pole_count, int k, const Rat& zeta3);

struct CurveParams {
    Rat R;
    int n = 0;
    Int eta;
    int k = 0;
};

struct CatalogueEntry {
    RationalCurve curve;
    CurveParams params;
    std::vector<RootCluster> denominator_roots;  // poles of the ratios, local coordinates
};

struct CurveCatalogue {
    std::vector<CatalogueEntry> entries;
    std::vector<std::string> warnings;  // e.g. duplicate curves dropped
    Rat zeta3;
    std::uint64_t content_hash = 0;

    int size() const { return static_cast<int>(entries.size()); }
    const CatalogueEntry& at(int k) const { return entries.at(static_cast<std::size_t>(k) - 1); }
};

// Validates, deduplicates (projective equality after normalization), sorts by
// (max degree, coefficient height, canonical string), computes params with k
// assigned from 1 in sorted order.
CurveCatalogue build_catalogue(const std::vector<std::vector<ExactPolynomial>>& sources,
                               const Rat& zeta3);

// gamma_j(z) = p_j(z) / p_0(z) evaluated in floating point. Throws
// pole_hit_error when |p_0(z)| drops below guard * height * max(1,|z|)^deg.
std::complex<double> evaluate_gamma(const RationalCurve& curve, int j, std::complex<double> z,
                                    double guard = 1e-12);

// ---------------------------------------------------------------------------
// Catalogue file format: line-oriented structured text.
//   curve <m>
//   poly <token> <token> ...        (constant term first, one line per component)
// Blank lines and '#' comments ignored. Params are cached in a sidecar keyed
// by the content hash so unchanged catalogues skip recertification.
// ---------------------------------------------------------------------------

std::vector<std::vector<ExactPolynomial>> parse_catalogue_text(std::istream& in);
std::vector<std::vector<ExactPolynomial>> load_catalogue_file(const std::string& path);
std::string catalogue_to_text(const CurveCatalogue& catalogue);

// Sidecar round-trip; load returns false on any mismatch (then recertify).
std::string params_cache_to_text(const CurveCatalogue& catalogue);
bool try_load_params_cache(const std::string& text, std::uint64_t expected_hash,
                           CurveCatalogue& catalogue);

}  // namespace fhc
