#include "fhc/nevanlinna.hpp"

#include "fhc/curves.hpp"

#include <algorithm>
#include <cmath>

namespace fhc {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

std::complex<double> horner(const std::vector<std::complex<double>>& c, std::complex<double> z) {
    std::complex<double> acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

}  // namespace

void CurveEvaluator::values_and_derivatives_on_circle(const Radius&, double,
                                                      std::vector<std::complex<double>>&,
                                                      std::vector<std::complex<double>>&) const {
    throw std::logic_error("evaluator does not provide derivatives");
}

// ---------------------------------------------------------------------------
// Winding.
// ---------------------------------------------------------------------------

WindingResult adaptive_winding(const std::function<std::complex<double>(double)>& value_at,
                               const WindingOptions& opts) {
    struct Node {
        double angle;
        std::complex<double> value;
    };
    WindingResult out;
    std::vector<Node> stack;  // pending segment right endpoints
    double total = 0.0;
    long evaluations = 0;

    auto eval = [&](double a) {
        ++evaluations;
        return value_at(a);
    };

    Node start{0.0, eval(0.0)};
    Node prev = start;
    const long n0 = std::max<long>(4, opts.initial_nodes);
    for (long i = 1; i <= n0; ++i) {
        Node next;
        next.angle = kTwoPi * static_cast<double>(i) / static_cast<double>(n0);
        next.value = i == n0 ? start.value : eval(next.angle);
        // Refine [prev, next] until each phase step is below pi/2.
        std::vector<Node> seg{next};
        Node left = prev;
        while (!seg.empty()) {
            Node right = seg.back();
            std::complex<double> ratio = right.value / left.value;
            double step = std::arg(ratio);
            bool bad = !(std::abs(step) < kPi / 2) || !std::isfinite(step) ||
                       std::abs(ratio) == 0.0;
            if (bad && evaluations < opts.max_nodes &&
                right.angle - left.angle > 1e-300) {
                Node mid;
                mid.angle = 0.5 * (left.angle + right.angle);
                if (mid.angle <= left.angle || mid.angle >= right.angle) {
                    // Angle resolution exhausted; accept the step as-is.
                    total += step;
                    left = right;
                    seg.pop_back();
                    continue;
                }
                mid.value = eval(mid.angle);
                seg.push_back(mid);
            } else {
                total += step;
                left = right;
                seg.pop_back();
            }
        }
        prev = next;
    }
    out.raw = total / kTwoPi;
    out.rounded = std::lround(out.raw);
    out.residual = std::abs(out.raw - static_cast<double>(out.rounded));
    out.nodes = evaluations;
    return out;
}

// ---------------------------------------------------------------------------
// Counting.
// ---------------------------------------------------------------------------

int counting_raw(const CurveEvaluator& ev, const Radius& t, bool cross_check, double guard) {
    std::vector<ZeroEntry> zeros = ev.zeros_inside(t, guard);
    int inventory = 0;
    for (const auto& z : zeros) inventory += z.multiplicity;
    if (cross_check) {
        WindingOptions wopts;
        WindingResult w = ev.winding_first_component(t, wopts);
        if (w.residual >= 0.1 || w.rounded != inventory) {
            throw winding_mismatch_error(
                "counting_raw: winding " + std::to_string(w.raw) + " (residual " +
                std::to_string(w.residual) + ") disagrees with inventory " +
                std::to_string(inventory) + " at r=" + format_double(t.value));
        }
    }
    return inventory;
}

double counting_integrated(const CurveEvaluator& ev, const Radius& r, double guard) {
    if (ev.origin_on_hyperplane())
        throw origin_on_divisor_error("counting_integrated: h_0 vanishes at the origin");
    std::vector<ZeroEntry> zeros = ev.zeros_inside(r, guard);
    const double log_r = std::log(r.value);
    double total = 0.0;
    for (const auto& z : zeros) {
        if (z.modulus <= 0.0) continue;  // excluded by the origin precondition
        total += static_cast<double>(z.multiplicity) * (log_r - z.log_modulus);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Proximity.
// ---------------------------------------------------------------------------

namespace {

double proximity_integrand(const CurveEvaluator& ev, const Radius& r, double angle,
                           std::vector<std::complex<double>>& scratch) {
    ev.values_on_circle(r, angle, scratch);
    double sum = 0.0;
    for (const auto& v : scratch) sum += std::norm(v);
    double h0 = std::norm(scratch.front());
    if (h0 == 0.0) return 350.0;  // isolated node on a zero: finite stand-in spike
    // (1/2) log(1 + sum_{j>=1} |h_j/h_0|^2) = (1/2) (log sum_j |h_j|^2 - log |h_0|^2)
    return 0.5 * (std::log(sum) - std::log(h0));
}

}  // namespace

ProximityResult proximity(const CurveEvaluator& ev, const Radius& r,
                          const QuadratureOptions& opts) {
    ProximityResult out;
    std::vector<std::complex<double>> scratch;
    long n = std::max<long>(4, opts.min_nodes);
    double mean = 0.0;
    for (long i = 0; i < n; ++i)
        mean += proximity_integrand(ev, r, kTwoPi * static_cast<double>(i) / static_cast<double>(n),
                                    scratch);
    mean /= static_cast<double>(n);
    while (n < opts.max_nodes) {
        // Trapezoid on a periodic integrand: doubling adds the midpoints.
        double mid = 0.0;
        for (long i = 0; i < n; ++i)
            mid += proximity_integrand(
                ev, r, kTwoPi * (static_cast<double>(i) + 0.5) / static_cast<double>(n), scratch);
        mid /= static_cast<double>(n);
        double refined = 0.5 * (mean + mid);
        n *= 2;
        bool done = std::abs(refined - mean) < opts.tolerance;
        mean = refined;
        if (done) {
            out.value = std::max(0.0, mean);
            out.nodes = n;
            return out;
        }
    }
    out.value = std::max(0.0, mean);
    out.nodes = n;
    out.certified = false;  // node cap reached
    return out;
}

double proximity_at_origin(const CurveEvaluator& ev) {
    std::vector<std::complex<double>> scratch;
    return std::max(0.0, proximity_integrand(ev, Radius(Rat(0)), 0.0, scratch));
}

// ---------------------------------------------------------------------------
// Characteristic.
// ---------------------------------------------------------------------------

Radius nudge_off_zeros(const CurveEvaluator& ev, Radius r, double guard, std::string* note) {
    for (int attempt = 0; attempt < 12; ++attempt) {
        try {
            ev.zeros_inside(r, guard);
            return r;
        } catch (const boundary_zero_error&) {
            r = Radius(r.exact * Rat(1000001, 1000000));
            if (note) {
                if (!note->empty()) *note += "; ";
                *note += "radius nudged to " + format_double(r.value);
            }
        }
    }
    throw boundary_zero_error("nudge_off_zeros: could not move off the zero locus");
}

CharacteristicSample characteristic_fmt(const CurveEvaluator& ev, Radius r,
                                        const QuadratureOptions& opts) {
    CharacteristicSample s;
    r = nudge_off_zeros(ev, r, 1e-9, &s.note);
    s.r = r.value;
    s.r_exact = r.exact;
    s.N = counting_integrated(ev, r);
    ProximityResult pm = proximity(ev, r, opts);
    s.m = pm.value;
    s.m0 = proximity_at_origin(ev);
    s.T_fmt = s.m + s.N - s.m0;
    s.certified = pm.certified;
    return s;
}

AreaResult characteristic_area(const CurveEvaluator& ev, const Radius& r,
                               const AreaOptions& opts) {
    if (!ev.supports_derivatives())
        throw std::logic_error("characteristic_area: evaluator lacks derivatives");
    AreaResult out;
    const int m = ev.target_dim();
    std::vector<std::complex<double>> values, derivs;

    // Fubini-Study pullback density against Lebesgue measure:
    //   (1/pi) * sum_{i<j} |h_i h_j' - h_j h_i'|^2 / (sum_i |h_i|^2)^2,
    // invariant under any common holomorphic rescale of the components.
    auto density = [&](const Radius& rho, double angle) {
        ev.values_and_derivatives_on_circle(rho, angle, values, derivs);
        double denom = 0.0;
        for (const auto& v : values) denom += std::norm(v);
        double num = 0.0;
        for (int i = 0; i <= m; ++i)
            for (int j = i + 1; j <= m; ++j)
                num += std::norm(values[static_cast<std::size_t>(i)] *
                                     derivs[static_cast<std::size_t>(j)] -
                                 values[static_cast<std::size_t>(j)] *
                                     derivs[static_cast<std::size_t>(i)]);
        return num / (kPi * denom * denom);
    };

    // Circle average of the density at radius rho, trapezoid with doubling.
    auto circle_mean = [&](const Radius& rho) {
        long n = std::max<long>(4, opts.angular.min_nodes);
        double mean = 0.0;
        for (long i = 0; i < n; ++i)
            mean += density(rho, kTwoPi * static_cast<double>(i) / static_cast<double>(n));
        mean /= static_cast<double>(n);
        while (n < opts.angular.max_nodes) {
            double mid = 0.0;
            for (long i = 0; i < n; ++i)
                mid += density(rho, kTwoPi * (static_cast<double>(i) + 0.5) /
                                        static_cast<double>(n));
            mid /= static_cast<double>(n);
            double refined = 0.5 * (mean + mid);
            n *= 2;
            bool done =
                std::abs(refined - mean) < std::max(opts.angular.tolerance,
                                                    1e-7 * std::abs(refined));
            mean = refined;
            if (done) return mean;
        }
        out.certified = false;
        return mean;
    };

    // T(r) = int_0^r g(rho) log(r/rho) drho with g(rho) = 2 pi rho * circle_mean.
    // Substituting rho = r e^{-x} turns the inner cut into a finite x-range
    // with a smooth integrand; composite Simpson on uniform x.
    const double X = -std::log(opts.inner_cut);
    const int panels_per_decade = std::max(8, opts.radial_panels_per_decade);
    int panels = static_cast<int>(std::ceil(X / std::log(10.0))) * panels_per_decade;
    if (panels % 2 == 1) ++panels;
    const double hstep = X / panels;

    auto integrand = [&](double x) {
        double scale = std::exp(-x);
        Radius rho(r.exact * rat_from_double(scale));
        double g = kTwoPi * rho.value * circle_mean(rho);
        return g * x * rho.value;  // g(rho) * log(r/rho) * drho/dx
    };

    double sum = integrand(0.0) + integrand(X);
    for (int i = 1; i < panels; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(hstep * i);
    out.value = sum * hstep / 3.0;

    // The omitted disc [0, inner_cut * r]: density bounded by samples near 0
    // (smooth there), integrate rho log(r/rho) analytically.
    double dens0 = 0.0;
    for (double f : {0.0, 0.25, 0.5, 0.75, 1.0})
        dens0 = std::max(dens0, circle_mean(Radius(r.exact * rat_from_double(opts.inner_cut) *
                                                   rat_from_double(std::max(f, 1e-3))))) ;
    double rho0 = opts.inner_cut * r.value;
    out.stub_bound =
        2.0 * kPi * 1.5 * dens0 * (0.5 * rho0 * rho0 * std::log(1.0 / opts.inner_cut) +
                                   0.25 * rho0 * rho0);
    out.value += 0.5 * out.stub_bound;  // center the omitted mass estimate
    return out;
}

double order_estimate(const std::vector<CharacteristicSample>& samples) {
    std::vector<std::pair<double, double>> pts;  // (log r, log T)
    for (const auto& s : samples)
        if (s.r > 0.0 && s.T_fmt > 0.0) pts.push_back({std::log(s.r), std::log(s.T_fmt)});
    if (pts.size() < 3)
        throw insufficient_samples_error("order_estimate: need >= 3 samples with T > 0");
    std::sort(pts.begin(), pts.end());
    std::size_t half = pts.size() / 2;
    std::vector<std::pair<double, double>> top(pts.begin() + half, pts.end());
    double mx = 0.0, my = 0.0;
    for (auto [x, y] : top) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(top.size());
    my /= static_cast<double>(top.size());
    double sxx = 0.0, sxy = 0.0;
    for (auto [x, y] : top) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) return 0.0;
    return sxy / sxx;
}

// ---------------------------------------------------------------------------
// Obstruction checks.
// ---------------------------------------------------------------------------

CheckRecord fhc_lower_bound_check(const VisitStatistics& visits, const CurveEvaluator& ev,
                                  const std::vector<Radius>& count_scan,
                                  const std::vector<CharacteristicSample>& t_samples) {
    CheckRecord rec;
    rec.name = "fhc_lower_bound";
    if (visits.visits.empty() || visits.alpha <= 0.0) {
        rec.vacuous = true;
        rec.details = "no visits measured (alpha = 0); bound is vacuous";
        return rec;
    }
    const double alpha = visits.alpha;
    const double C = alpha / 8.0;

    // Burn-in N_0: first profile sample from which count(N) >= (alpha/2) N
    // holds for every later sample.
    const DensityProfile& p = visits.profile;
    std::size_t start = p.sample_N.size();
    for (std::size_t i = p.sample_N.size(); i-- > 0;) {
        if (p.ratio[i] >= alpha / 2.0)
            start = i;
        else
            break;
    }
    if (start >= p.sample_N.size()) {
        rec.vacuous = true;
        rec.details = "profile never reaches alpha/2";
        return rec;
    }
    const double N0 = to_double(p.sample_N[start]);
    rec.details = "alpha=" + format_double(alpha) + " C=" + format_double(C) +
                  " N0=" + format_double(N0);

    double worst = std::numeric_limits<double>::infinity();
    for (const Radius& t : count_scan) {
        if (t.value < (N0 + 1.0)) continue;
        std::vector<ZeroEntry> zeros = ev.zeros_inside(t, 1e-12);
        int count = 0;
        for (const auto& z : zeros) count += z.multiplicity;
        ++rec.checked;
        double margin = static_cast<double>(count) - 2.0 * C * t.value;
        worst = std::min(worst, margin);
        if (margin < 0.0) {
            rec.pass = false;
            rec.details += "; n_h(" + format_double(t.value) + ")=" + std::to_string(count) +
                           " < " + format_double(2.0 * C * t.value);
        }
    }
    for (const auto& s : t_samples) {
        if (s.r < 2.0 * (N0 + 1.0)) continue;
        ++rec.checked;
        double margin = s.T_fmt - C * s.r;
        worst = std::min(worst, margin);
        if (margin < 0.0) {
            rec.pass = false;
            rec.details += "; T(" + format_double(s.r) + ")=" + format_double(s.T_fmt) + " < " +
                           format_double(C * s.r);
        }
    }
    if (rec.checked == 0) {
        rec.vacuous = true;
        rec.details += "; no scan radius past the burn-in";
    }
    rec.worst_margin = std::isfinite(worst) ? worst : 0.0;
    return rec;
}

CheckRecord direction_budget_check(const std::vector<VisitStatistics>& stats,
                                   double epsilon_slope, int n_max) {
    CheckRecord rec;
    rec.name = "direction_budget";
    if (stats.empty()) {
        rec.vacuous = true;
        rec.details = "no directions measured";
        return rec;
    }
    double worst = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_max; ++n) {
        int count = 0;
        for (const auto& st : stats)
            if (st.alpha > 1.0 / static_cast<double>(n)) ++count;
        ++rec.checked;
        double budget = 4.0 * epsilon_slope * static_cast<double>(n);
        double margin = budget - static_cast<double>(count);
        worst = std::min(worst, margin);
        if (!(static_cast<double>(count) < budget)) {
            rec.pass = false;
            rec.details += "n=" + std::to_string(n) + ": " + std::to_string(count) +
                           " directions exceed density 1/n, budget " + format_double(budget) + "; ";
        }
    }
    rec.worst_margin = std::isfinite(worst) ? worst : 0.0;
    return rec;
}

// ---------------------------------------------------------------------------
// Polynomial-curve evaluator.
// ---------------------------------------------------------------------------

PolynomialCurveEvaluator::PolynomialCurveEvaluator(const RationalCurve& curve) : m_(curve.m) {
    origin_zero_ = curve.p0().coefficient(0).is_zero();
    for (const auto& p : curve.components) {
        std::vector<std::complex<double>> c;
        for (const auto& g : p.coefficients()) c.push_back(to_complex(g));
        coeffs_.push_back(c);
        std::vector<std::complex<double>> d;
        for (std::size_t k = 1; k < c.size(); ++k)
            d.push_back(c[k] * static_cast<double>(k));
        deriv_coeffs_.push_back(std::move(d));
    }
    RootResult roots = find_roots(coeffs_.front());
    for (const auto& cl : roots.clusters) {
        ZeroEntry z;
        z.location = cl.location;
        z.multiplicity = cl.multiplicity;
        z.modulus = std::abs(cl.location);
        z.log_modulus = std::log(z.modulus);
        zeros_.push_back(z);
    }
}

void PolynomialCurveEvaluator::values_on_circle(const Radius& r, double angle,
                                                std::vector<std::complex<double>>& out) const {
    std::complex<double> z = std::polar(r.value, angle);
    out.resize(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = horner(coeffs_[i], z);
}

void PolynomialCurveEvaluator::values_and_derivatives_on_circle(
    const Radius& r, double angle, std::vector<std::complex<double>>& values,
    std::vector<std::complex<double>>& derivs) const {
    std::complex<double> z = std::polar(r.value, angle);
    values.resize(coeffs_.size());
    derivs.resize(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        values[i] = horner(coeffs_[i], z);
        derivs[i] = horner(deriv_coeffs_[i], z);
    }
}

std::vector<ZeroEntry> PolynomialCurveEvaluator::zeros_inside(const Radius& r,
                                                              double guard) const {
    std::vector<ZeroEntry> out;
    for (const auto& z : zeros_) {
        if (std::abs(z.modulus - r.value) <= guard * std::max(1.0, r.value))
            throw boundary_zero_error("zero of h_0 within guard of the circle |z| = " +
                                      format_double(r.value));
        if (z.modulus < r.value) out.push_back(z);
    }
    return out;
}

WindingResult PolynomialCurveEvaluator::winding_first_component(
    const Radius& r, const WindingOptions& opts) const {
    const auto& c = coeffs_.front();
    return adaptive_winding(
        [&](double angle) { return horner(c, std::polar(r.value, angle)); }, opts);
}

}  // namespace fhc
