#include <doctest.h>

#include "fhc/curves.hpp"
#include "fhc/nevanlinna.hpp"

#include <cmath>
#include <random>

using namespace fhc;

namespace {

ExactPolynomial zpow(int n) {
    std::vector<GaussianRational> c(static_cast<std::size_t>(n) + 1);
    c.back() = GaussianRational(1);
    return ExactPolynomial(std::move(c));
}
ExactPolynomial one() { return ExactPolynomial::constant(GaussianRational(1)); }
ExactPolynomial constant(long re) { return ExactPolynomial::constant(GaussianRational(re)); }

RationalCurve tuple(std::vector<ExactPolynomial> comps) {
    RationalCurve c;
    c.m = static_cast<int>(comps.size()) - 1;
    c.components = std::move(comps);
    return c;
}

}  // namespace

TEST_CASE("counting_raw: hand inventories with winding cross-check") {
    PolynomialCurveEvaluator e1(tuple({zpow(2) - one(), one()}));  // zeros at +-1
    CHECK(counting_raw(e1, Radius(Rat(2))) == 2);
    CHECK(counting_raw(e1, Radius(Rat(1, 2))) == 0);
    CHECK_THROWS_AS(counting_raw(e1, Radius(Rat(1))), boundary_zero_error);

    ExactPolynomial q = (zpow(2) + one()) * (zpow(2) + one());  // double zeros at +-i
    PolynomialCurveEvaluator e2(tuple({q, one()}));
    CHECK(counting_raw(e2, Radius(Rat(2))) == 4);
}

TEST_CASE("counting_integrated: closed forms") {
    PolynomialCurveEvaluator e1(tuple({zpow(2) - one(), one()}));
    double N = counting_integrated(e1, Radius::from_double(std::exp(1.0)));
    CHECK(N == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(counting_integrated(e1, Radius(Rat(1, 2))) == 0.0);

    // Doubling every multiplicity doubles the integral.
    ExactPolynomial sq = (zpow(2) - one()) * (zpow(2) - one());
    PolynomialCurveEvaluator e2(tuple({sq, one()}));
    double N2 = counting_integrated(e2, Radius::from_double(std::exp(1.0)));
    CHECK(N2 == doctest::Approx(2.0 * N).epsilon(1e-7));

    PolynomialCurveEvaluator origin(tuple({zpow(4), one()}));
    CHECK_THROWS_AS(counting_integrated(origin, Radius(Rat(2))), origin_on_divisor_error);
}

TEST_CASE("counting additivity over coprime factors") {
    ExactPolynomial p = zpow(2) - one();                    // zeros +-1
    ExactPolynomial q = zpow(2) + constant(4);              // zeros +-2i
    PolynomialCurveEvaluator ep(tuple({p, one()}));
    PolynomialCurveEvaluator eq(tuple({q, one()}));
    PolynomialCurveEvaluator epq(tuple({p * q, one()}));
    Radius r(Rat(3));
    CHECK(counting_integrated(epq, r) ==
          doctest::Approx(counting_integrated(ep, r) + counting_integrated(eq, r)).epsilon(1e-9));
    CHECK(counting_raw(epq, r) == counting_raw(ep, r) + counting_raw(eq, r));
}

TEST_CASE("winding and inventory agree on seeded polynomials") {
    std::mt19937_64 rng(90210u);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        int deg = 2 + static_cast<int>(rng() % 5);
        std::vector<GaussianRational> coeffs;
        for (int i = 0; i <= deg; ++i) {
            // Rational coefficients with denominator 8 keep everything exact.
            long a = std::lround(u(rng) * 8.0), b = std::lround(u(rng) * 8.0);
            coeffs.emplace_back(Rat(a, 8), Rat(b, 8));
        }
        if (coeffs.back().is_zero()) coeffs.back() = GaussianRational(1);
        PolynomialCurveEvaluator ev(tuple({ExactPolynomial(std::move(coeffs)), one()}));
        for (double t : {0.7, 1.3, 2.9, 6.1}) {
            Radius r = nudge_off_zeros(ev, Radius::from_double(t), 1e-9, nullptr);
            CHECK_NOTHROW(counting_raw(ev, r, true));  // throws on any mismatch
        }
    }
}

TEST_CASE("proximity: constant-integrand anchors") {
    // h = [1 : z]: m(r) = (1/2) log(1 + r^2).
    PolynomialCurveEvaluator e(tuple({one(), zpow(1)}));
    ProximityResult p1 = proximity(e, Radius(Rat(1)));
    CHECK(p1.certified);
    CHECK(p1.value == doctest::Approx(0.34657359027997264).epsilon(1e-7));

    // Constant curve [1 : c]: (1/2) log(1 + |c|^2) for every r.
    PolynomialCurveEvaluator ec(tuple({one(), constant(3)}));
    for (double r : {0.5, 2.0, 17.0})
        CHECK(proximity(ec, Radius::from_double(r)).value ==
              doctest::Approx(0.5 * std::log(10.0)).epsilon(1e-9));

    // h = [1 : z : z] at r = 1: (1/2) log 3.
    PolynomialCurveEvaluator e2(tuple({one(), zpow(1), zpow(1)}));
    CHECK(proximity(e2, Radius(Rat(1))).value ==
          doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-7));

    CHECK(proximity_at_origin(e) == doctest::Approx(0.0));
    CHECK(proximity_at_origin(ec) == doctest::Approx(0.5 * std::log(10.0)));
}

TEST_CASE("characteristic via the first main theorem") {
    PolynomialCurveEvaluator e(tuple({one(), zpow(1)}));
    CharacteristicSample s1 = characteristic_fmt(e, Radius(Rat(1)));
    CHECK(s1.T_fmt == doctest::Approx(0.34657359).epsilon(1e-6));
    CHECK(s1.N == 0.0);
    CHECK(s1.m0 == 0.0);
    CharacteristicSample s3 = characteristic_fmt(e, Radius(Rat(3)));
    CHECK(s3.T_fmt == doctest::Approx(0.5 * std::log(10.0)).epsilon(1e-6));

    // Constant curve: T identically zero.
    PolynomialCurveEvaluator ec(tuple({one(), constant(2)}));
    for (double r : {0.5, 1.0, 4.0})
        CHECK(characteristic_fmt(ec, Radius::from_double(r)).T_fmt ==
              doctest::Approx(0.0).epsilon(1e-12));

    // Monotone in r along a ladder.
    PolynomialCurveEvaluator eq(tuple({zpow(4) + constant(2), one()}));
    double prev = -1.0;
    for (double r : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        double T = characteristic_fmt(eq, Radius::from_double(r)).T_fmt;
        CHECK(T >= prev - 1e-6);
        prev = T;
    }
}

TEST_CASE("characteristic via the area integral matches the FMT route") {
    // h = [1 : z] at r = 1: integrand in closed form gives (1/2) log 2.
    PolynomialCurveEvaluator e(tuple({one(), zpow(1)}));
    AreaResult a = characteristic_area(e, Radius(Rat(1)));
    CHECK(a.value == doctest::Approx(0.34657359).epsilon(1e-4));

    // Constant curve: derivative zero, area zero.
    PolynomialCurveEvaluator ec(tuple({one(), constant(2)}));
    CHECK(characteristic_area(ec, Radius(Rat(1))).value == doctest::Approx(0.0));

    // h = [1 : z^2] at r = 1 against the FMT value.
    PolynomialCurveEvaluator e2(tuple({one(), zpow(2)}));
    CharacteristicSample fmt = characteristic_fmt(e2, Radius(Rat(1)));
    AreaResult a2 = characteristic_area(e2, Radius(Rat(1)));
    CHECK(std::abs(a2.value - fmt.T_fmt) <= std::max(1e-3, 1e-3 * fmt.T_fmt));

    // A curve with zeros of h_0 inside the disc: both routes still agree.
    PolynomialCurveEvaluator eq(tuple({zpow(4) + constant(2), one()}));
    for (double r : {0.5, 2.0}) {
        CharacteristicSample f = characteristic_fmt(eq, Radius::from_double(r));
        AreaResult ar = characteristic_area(eq, Radius::from_double(r));
        CHECK(std::abs(ar.value - f.T_fmt) <= std::max(1e-3, 1e-3 * f.T_fmt));
    }
}

TEST_CASE("order estimate") {
    auto mk = [](double r, double T) {
        CharacteristicSample s;
        s.r = r;
        s.T_fmt = T;
        return s;
    };
    std::vector<CharacteristicSample> linear, logarithmic, constant_T, few;
    for (double r = 100.0; r <= 10000.0; r *= 1.5) {
        linear.push_back(mk(r, 5.0 * r));
        logarithmic.push_back(mk(r, 3.0 * std::log(r)));
        constant_T.push_back(mk(r, 7.0));
    }
    CHECK(order_estimate(linear) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(order_estimate(logarithmic) < 0.2);
    CHECK(order_estimate(constant_T) == doctest::Approx(0.0));
    few.push_back(mk(1.0, 1.0));
    few.push_back(mk(2.0, 2.0));
    CHECK_THROWS_AS(order_estimate(few), insufficient_samples_error);
}

namespace {

// Minimal evaluator with a prescribed zero inventory; the obstruction check
// only consumes zeros_inside.
class InventoryStub : public CurveEvaluator {
  public:
    explicit InventoryStub(std::vector<double> moduli) {
        for (double t : moduli) {
            ZeroEntry z;
            z.modulus = t;
            z.log_modulus = std::log(t);
            z.multiplicity = 1;
            z.location = {t, 0.0};
            zeros_.push_back(z);
        }
    }
    int target_dim() const override { return 1; }
    bool origin_on_hyperplane() const override { return false; }
    void values_on_circle(const Radius&, double,
                          std::vector<std::complex<double>>& out) const override {
        out.assign(2, {1.0, 0.0});
    }
    std::vector<ZeroEntry> zeros_inside(const Radius& r, double) const override {
        std::vector<ZeroEntry> out;
        for (const auto& z : zeros_)
            if (z.modulus < r.value) out.push_back(z);
        return out;
    }
    WindingResult winding_first_component(const Radius&, const WindingOptions&) const override {
        throw std::logic_error("not used");
    }

  private:
    std::vector<ZeroEntry> zeros_;
};

}  // namespace

TEST_CASE("fhc lower bound check") {
    // Visits at every even integer, zeros of h_0 at the same points: alpha ~ 1/2,
    // C = alpha/8, and n_h(t) ~ t/2 >> 2 C t.
    std::vector<Int> visits;
    std::vector<double> zero_moduli;
    for (int n = 2; n <= 4000; n += 2) {
        visits.emplace_back(n);
        zero_moduli.push_back(static_cast<double>(n));
    }
    VisitStatistics st;
    st.visits = visits;
    st.profile = density_profile(visits, Int(100), Int(4000));
    st.alpha = st.profile.inf_over_tail;
    CHECK(st.alpha == doctest::Approx(0.5).epsilon(0.02));

    InventoryStub ev(zero_moduli);
    std::vector<Radius> scan;
    for (double t = 500.0; t <= 4000.0; t *= 1.5) scan.push_back(Radius::from_double(t));
    CheckRecord rec = fhc_lower_bound_check(st, ev, scan, {});
    CHECK(rec.pass);
    CHECK(!rec.vacuous);
    CHECK(rec.checked > 0);
    CHECK(rec.worst_margin >= 0.0);

    // A single far zero cannot keep up with the linear bound.
    InventoryStub sparse({2.0});
    CheckRecord bad = fhc_lower_bound_check(st, sparse, scan, {});
    CHECK_FALSE(bad.pass);

    // Empty visit set: vacuous pass flagged.
    VisitStatistics empty;
    CheckRecord v = fhc_lower_bound_check(empty, ev, scan, {});
    CHECK(v.pass);
    CHECK(v.vacuous);
}

TEST_CASE("direction budget check") {
    auto stat = [](double alpha) {
        VisitStatistics s;
        s.alpha = alpha;
        return s;
    };
    std::vector<VisitStatistics> stats{stat(0.6), stat(0.3)};
    // epsilon = 0.5: budget 2n, counts stay below for every n >= 1.
    CheckRecord ok = direction_budget_check(stats, 0.5, 50);
    CHECK(ok.pass);
    // epsilon = 0.1, n = 5: budget 2, but two directions exceed 1/5.
    CheckRecord bad = direction_budget_check(stats, 0.1, 5);
    CHECK_FALSE(bad.pass);
    CheckRecord vac = direction_budget_check({}, 0.5, 10);
    CHECK(vac.vacuous);
}
