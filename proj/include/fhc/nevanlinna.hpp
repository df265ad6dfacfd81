#pragma once

// Nevanlinna machinery for entire curves h = [h_0 : ... : h_m] given through
// an evaluation interface: the counting function N_h(r, H_0) from a zero
// inventory of the reduced first component (cross-checked by an
// argument-principle winding integral), the proximity function m_h(r, H_0) by
// trapezoid quadrature on the circle, the characteristic both as
// m + N - m(0) and as the log-radial integral of the Fubini-Study pullback
// area, and the growth-obstruction checks driven by visit statistics.
//
// All logarithms are natural; proximity uses (1/2) log(1 + sum |h_j/h_0|^2).

#include "fhc/density.hpp"
#include "fhc/geom.hpp"
#include "fhc/numeric.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace fhc {

struct boundary_zero_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct winding_mismatch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct origin_on_divisor_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct insufficient_samples_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroEntry {
    double modulus = 0.0;      // |location|, accurate in relative terms
    double log_modulus = 0.0;  // computed cancellation-free at any scale
    int multiplicity = 1;
    std::complex<double> location;  // hint for diagnostics
};

struct WindingOptions {
    long initial_nodes = 64;
    long max_nodes = 1 << 21;
};

struct WindingResult {
    double raw = 0.0;
    long rounded = 0;
    double residual = 0.0;
    long nodes = 0;
    bool fully_numeric = true;  // false when exact containment shortcuts were taken
};

class CurveEvaluator {
  public:
    virtual ~CurveEvaluator() = default;

    virtual int target_dim() const = 0;  // m
    virtual bool origin_on_hyperplane() const = 0;

    // Locally-scaled reduced representation (size m+1) at z = r e^{i angle}.
    // Any common holomorphic scale is admissible: ratios and the Fubini-Study
    // pullback are scale-invariant.
    virtual void values_on_circle(const Radius& r, double angle,
                                  std::vector<std::complex<double>>& out) const = 0;

    virtual bool supports_derivatives() const { return false; }
    virtual void values_and_derivatives_on_circle(const Radius& r, double angle,
                                                  std::vector<std::complex<double>>& values,
                                                  std::vector<std::complex<double>>& derivs) const;

    // Zeros of the reduced first component strictly inside |z| < r. Throws
    // boundary_zero_error when a zero sits within `guard` (relative) of the
    // circle.
    virtual std::vector<ZeroEntry> zeros_inside(const Radius& r, double guard) const = 0;

    virtual WindingResult winding_first_component(const Radius& r,
                                                  const WindingOptions& opts) const = 0;
};

// Adaptive argument-principle winding of value_at(angle) over a full circle;
// segments bisect while the phase step exceeds pi/2.
WindingResult adaptive_winding(const std::function<std::complex<double>(double)>& value_at,
                               const WindingOptions& opts);

// ---------------------------------------------------------------------------
// Counting, proximity, characteristic.
// ---------------------------------------------------------------------------

// n_h(t, H_0): zeros counted with multiplicity from the inventory, optionally
// cross-checked against the winding integral (residual < 0.1 required).
int counting_raw(const CurveEvaluator& ev, const Radius& t, bool cross_check = true,
                 double guard = 1e-9);

// N_h(r, H_0) = sum multiplicity * log(r / t_i) over zero moduli t_i < r.
double counting_integrated(const CurveEvaluator& ev, const Radius& r, double guard = 1e-9);

struct QuadratureOptions {
    long min_nodes = 1 << 10;
    long max_nodes = 1 << 15;
    double tolerance = 1e-6;
};

struct ProximityResult {
    double value = 0.0;
    bool certified = true;  // doubling converged below tolerance
    long nodes = 0;
};

ProximityResult proximity(const CurveEvaluator& ev, const Radius& r,
                          const QuadratureOptions& opts = {});
double proximity_at_origin(const CurveEvaluator& ev);

struct CharacteristicSample {
    double r = 0.0;
    Rat r_exact;
    double N = 0.0;
    double m = 0.0;
    double m0 = 0.0;
    double T_fmt = 0.0;
    double T_area = std::numeric_limits<double>::quiet_NaN();
    bool certified = true;
    std::string note;  // e.g. record of a radius nudge
};

// Nudges the radius outward by factors of (1 + 1e-6) while a zero of h_0 sits
// within the relative guard of the circle; appends to note when it does.
Radius nudge_off_zeros(const CurveEvaluator& ev, Radius r, double guard, std::string* note);

CharacteristicSample characteristic_fmt(const CurveEvaluator& ev, Radius r,
                                        const QuadratureOptions& opts = {});

struct AreaOptions {
    int radial_panels_per_decade = 256;
    double inner_cut = 1e-5;  // integrate [inner_cut * r, r]; bound the stub
    QuadratureOptions angular{1 << 6, 1 << 12, 1e-9};
};

struct AreaResult {
    double value = 0.0;
    double stub_bound = 0.0;  // bound for the omitted [0, inner_cut * r] piece
    bool certified = true;
};

// T_h(r) as int_0^r dt/t int_{|z|<t} (pullback area), evaluated as the single
// radial integral int_0^r g(rho) log(r/rho) drho with g the circle-average of
// the pullback density. Requires derivatives.
AreaResult characteristic_area(const CurveEvaluator& ev, const Radius& r,
                               const AreaOptions& opts = {});

// Least-squares slope of log T against log r over the largest-r half.
double order_estimate(const std::vector<CharacteristicSample>& samples);

// ---------------------------------------------------------------------------
// Visit statistics and the growth obstructions.
// ---------------------------------------------------------------------------

struct VisitStatistics {
    int direction_index = 0;  // v
    double theta = 0.0;
    int target_k = 0;         // model curve the neighborhood is built around
    long sup_radius = 0;      // neighborhood: sup distance < 1/l on |z| <= l
    std::vector<Int> visits;  // translation times, increasing
    DensityProfile profile;
    double alpha = 0.0;       // measured tail-infimum density
};

struct CheckRecord {
    std::string name;
    bool pass = true;
    bool vacuous = false;
    double worst_margin = 0.0;
    long long checked = 0;
    std::string details;
};

// With alpha the measured tail density and C = alpha / 8: checks
// n_h(t, H_0) >= 2 C t on the given scan radii past the burn-in (N_0 + 1)|a|,
// and T_h(r) >= C r on the supplied samples past 2 (N_0 + 1)|a|. |a| = 1.
CheckRecord fhc_lower_bound_check(const VisitStatistics& visits, const CurveEvaluator& ev,
                                  const std::vector<Radius>& count_scan,
                                  const std::vector<CharacteristicSample>& t_samples);

// For n = 1..n_max the number of directions with alpha > 1/n must stay below
// 4 * epsilon_slope * n.
CheckRecord direction_budget_check(const std::vector<VisitStatistics>& stats,
                                   double epsilon_slope, int n_max = 50);

// ---------------------------------------------------------------------------
// Evaluator for a single model curve through its polynomial tuple. The
// component polynomials themselves are the reduced representation; with no
// common zero the Fubini-Study denominator never vanishes, so the area
// density is smooth.
// ---------------------------------------------------------------------------

class PolynomialCurveEvaluator : public CurveEvaluator {
  public:
    explicit PolynomialCurveEvaluator(const struct RationalCurve& curve);

    int target_dim() const override { return m_; }
    bool origin_on_hyperplane() const override { return origin_zero_; }
    void values_on_circle(const Radius& r, double angle,
                          std::vector<std::complex<double>>& out) const override;
    bool supports_derivatives() const override { return true; }
    void values_and_derivatives_on_circle(const Radius& r, double angle,
                                          std::vector<std::complex<double>>& values,
                                          std::vector<std::complex<double>>& derivs) const override;
    std::vector<ZeroEntry> zeros_inside(const Radius& r, double guard) const override;
    WindingResult winding_first_component(const Radius& r,
                                          const WindingOptions& opts) const override;

  private:
    int m_ = 0;
    bool origin_zero_ = false;
    std::vector<std::vector<std::complex<double>>> coeffs_;  // per component
    std::vector<std::vector<std::complex<double>>> deriv_coeffs_;
    std::vector<ZeroEntry> zeros_;  // zeros of p_0
};

}  // namespace fhc
