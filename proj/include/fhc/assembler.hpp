#pragma once

// The truncated series curve
//   h = [1 : h_1 : ... : h_m],   h_j(z) = sum_{k <= K} sum_{s <= S_k}
//                                         gamma_j^[k](z - b_s^[k]),
// evaluated entirely through cancellation-free displaced arithmetic, with a
// construction-known hyperplane inventory (the shifted zeros of each
// p_0^[k]), and the verification suite: per-block geometric decay outside the
// discs, the 1/Theta approximation on each disc, frequent-hypercyclicity
// witnesses with their visit densities, the linear growth scan in both
// directions, and the rescaling step.

#include "fhc/curves.hpp"
#include "fhc/density.hpp"
#include "fhc/geom.hpp"
#include "fhc/nevanlinna.hpp"
#include "fhc/placement.hpp"

#include <memory>
#include <string>
#include <vector>

namespace fhc {

struct inconsistent_inputs_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class TruncatedCurve {
  public:
    // Schedules must line up with catalogue entries 1..K (eta values match);
    // all curves must share the target dimension m; K >= 1.
    TruncatedCurve(const CurveCatalogue& catalogue, std::vector<CenterSchedule> schedules);

    int K() const { return static_cast<int>(schedules_.size()); }
    int m() const { return m_; }
    const CurveCatalogue& catalogue() const { return *catalogue_; }
    const CenterSchedule& schedule(int k) const {
        return schedules_.at(static_cast<std::size_t>(k) - 1);
    }
    const std::vector<CenterSchedule>& schedules() const { return schedules_; }

    // h_j at z = rho e^{i angle} (all realized terms).
    std::complex<double> component_sum(int j, const Radius& rho, double angle) const;
    // h_j^[k]: the block sum of curve k only.
    std::complex<double> block_sum(int k, int j, const Radius& rho, double angle) const;
    // Every term except (k0, s0), evaluated at z = b_{s0}^{[k0]} + w.
    std::complex<double> foreign_sum(int k0, long s0, int j, std::complex<double> w) const;
    // gamma_j^[k](w) in local coordinates.
    std::complex<double> local_term(int k, int j, std::complex<double> w) const;

    // Distance from z = rho e^{i angle} to the center (k, s).
    double distance_to_center(int k, long s, const Radius& rho, double angle) const;
    // True when the point avoids every closed disc D(b_s^[k], eta_k).
    bool outside_all_discs(const Radius& rho, double angle) const;

    // Bound on the terms a completion of the truncation would add: valid at
    // any point of a realized disc or outside all discs.
    double tail_bound_global() const { return tail_global_; }
    double tail_bound_disc(int k, long s) const;

    struct PoleEntry {
        int k = 0;
        long s = 0;
        std::complex<double> local_root;  // root of p_0^[k]
        int multiplicity = 1;
        double modulus = 0.0;      // |b + root|
        double log_modulus = 0.0;  // stable
    };
    const std::vector<PoleEntry>& pole_inventory() const { return poles_; }

  private:
    friend class AssembledCurveEvaluator;
    const CurveCatalogue* catalogue_;
    std::vector<CenterSchedule> schedules_;
    int m_ = 0;
    double tail_global_ = 0.0;
    std::vector<PoleEntry> poles_;  // sorted by modulus
    // Per-curve complex coefficients (p_0 ... p_m), cached for Horner.
    std::vector<std::vector<std::vector<std::complex<double>>>> coeffs_;
};

TruncatedCurve assemble(const CurveCatalogue& catalogue, std::vector<CenterSchedule> schedules);

// Nevanlinna-facing evaluator for the truncated curve. The representation is
// [1 : h_1 : ...] away from the discs and the locally cleared
// [p_0 : p_j + p_0 * foreign] inside them; zeros_inside decides containment
// through exact interval comparisons (center modulus +- certified decay
// radius against the exact circle radius).
class AssembledCurveEvaluator : public CurveEvaluator {
  public:
    explicit AssembledCurveEvaluator(const TruncatedCurve& curve);

    int target_dim() const override { return curve_->m(); }
    bool origin_on_hyperplane() const override { return false; }  // |b| >= 2 eta > R
    void values_on_circle(const Radius& r, double angle,
                          std::vector<std::complex<double>>& out) const override;
    std::vector<ZeroEntry> zeros_inside(const Radius& r, double guard) const override;
    WindingResult winding_first_component(const Radius& r,
                                          const WindingOptions& opts) const override;

  private:
    const TruncatedCurve* curve_;
};

// h((c) z) for an exact rational c > 0; zeros and radii rescale exactly.
class RescaledEvaluator : public CurveEvaluator {
  public:
    RescaledEvaluator(const CurveEvaluator& base, Rat scale);

    int target_dim() const override { return base_->target_dim(); }
    bool origin_on_hyperplane() const override { return base_->origin_on_hyperplane(); }
    void values_on_circle(const Radius& r, double angle,
                          std::vector<std::complex<double>>& out) const override;
    std::vector<ZeroEntry> zeros_inside(const Radius& r, double guard) const override;
    WindingResult winding_first_component(const Radius& r,
                                          const WindingOptions& opts) const override;
    const Rat& scale() const { return scale_; }

  private:
    const CurveEvaluator* base_;
    Rat scale_;
    double log_scale_;
};

// ---------------------------------------------------------------------------
// Verification suite.
// ---------------------------------------------------------------------------

// Seeded exterior sampling: per-block |h_j^[k](b)| <= 2^-k and |h_j(b)| <= 1.
CheckRecord convergence_check(const TruncatedCurve& curve, long sample_count, std::uint64_t seed);

// On every realized disc D(b_s^[k], Theta): |h_j - gamma_j^[k](. - b)| <=
// 1/Theta + tail, boundary nodes plus an interior lattice. The reported
// margin is against the bare 1/Theta budget (stronger than required).
CheckRecord approximation_check(const TruncatedCurve& curve, int boundary_nodes,
                                int interior_grid);

// Construction inventory vs numerically detected poles: local winding around
// each predicted pole recovers its multiplicity.
CheckRecord pole_inventory_check(const TruncatedCurve& curve);

struct WitnessReport {
    VisitStatistics stats;
    CheckRecord record;
    bool no_witnesses = false;
    std::string horizon_note;  // first admissible modulus when nothing realized
};

// Witness translation times for target curve k along direction v with
// neighborhood radius l: realized centers with phi_1(Theta) = v and
// Theta >= l; the sup bound is checked on each witness disc.
WitnessReport fhc_witness(const TruncatedCurve& curve, SeparatedFamilyGrid& grid, int k, int v,
                          long l, int boundary_nodes);

struct LadderSpec {
    Rat r0 = Rat(1, 4);
    Rat rmax = Rat(1) << 120;
    Rat factor = Rat(2);
};

// Geometric ladder intersected with admissibility: radii meeting an open
// annulus {|a|-eta < |z| < |a|+eta} are bridged upward to |a|+eta.
std::vector<Radius> build_growth_ladder(const TruncatedCurve& curve, const LadderSpec& spec);

struct GrowthScan {
    std::vector<CharacteristicSample> samples;
    double M_ladder = 0.0;     // max T/r over the ladder
    double M_certified = 0.0;  // covering bound: T(r) <= M_certified * r between ladder points
    CheckRecord counting_linear;  // n_h(t) <= 1.5 t at every scanned t
    CheckRecord proximity_bound;  // m_h <= log sqrt(m+1) + tol at admissible radii
    CheckRecord small_radius;     // T/r stays small toward r -> 0
};

GrowthScan growth_scan(const CurveEvaluator& ev, const TruncatedCurve& curve,
                       const std::vector<Radius>& ladder, const QuadratureOptions& quad = {});

struct RescaleResult {
    Rat scale;        // epsilon / M, outward-rounded
    Rat M_used;       // certified slope fed into the scale
    CheckRecord record;  // T_rescaled(r) <= epsilon * r with positive margin
    std::vector<CharacteristicSample> samples;
};

// Applies the scaling step with the measured certified slope and re-scans:
// checks T(r) <= epsilon_target * r strictly at every scanned radius of the
// rescaled ladder (the images of the original ladder plus midpoints).
RescaleResult rescale_and_check(const CurveEvaluator& ev, const TruncatedCurve& curve,
                                const std::vector<Radius>& ladder, double M_certified,
                                double epsilon_target, const QuadratureOptions& quad = {});

}  // namespace fhc
