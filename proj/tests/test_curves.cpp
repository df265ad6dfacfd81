#include <doctest.h>

#include "fhc/curves.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace fhc;

namespace {

ExactPolynomial zpow(int n) {
    std::vector<GaussianRational> c(static_cast<std::size_t>(n) + 1);
    c.back() = GaussianRational(1);
    return ExactPolynomial(std::move(c));
}

ExactPolynomial one() { return ExactPolynomial::constant(GaussianRational(1)); }

}  // namespace

TEST_CASE("validate_curve: margin and common-zero gates") {
    RationalCurve ok = validate_curve({zpow(4), one()});
    CHECK(ok.m == 1);
    CHECK(ok.p0().degree() == 4);

    // (z^5 - z, z - 1) share the zero z = 1 (and satisfy the margin).
    ExactPolynomial p0 = (zpow(4) - one()) * zpow(1);
    ExactPolynomial q1 = zpow(1) - one();
    CHECK_THROWS_AS(validate_curve({p0, q1}), common_zero_error);
    // (z^5 : z) carries the common factor z.
    CHECK_THROWS_AS(validate_curve({zpow(5), zpow(1)}), common_zero_error);
    CHECK_THROWS_AS(validate_curve({zpow(3), one()}), degree_margin_error);
    CHECK_THROWS_AS(validate_curve({ExactPolynomial{}, one()}), std::invalid_argument);

    // Normalization makes p_0 monic.
    RationalCurve scaled = validate_curve({zpow(4) * GaussianRational(Rat(3), Rat(2)), one()});
    CHECK(scaled.p0().leading() == GaussianRational(1));
}

TEST_CASE("decay radius: certificates and hand anchors") {
    RationalCurve c = validate_curve({zpow(4), one()});
    Rat R = decay_radius(c);
    CHECK(to_double(R) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(R >= 1);  // |z|^3 <= |z|^4 fails below 1

    // Scaling the denominator up shrinks gamma and the radius.
    RationalCurve c3 = validate_curve({zpow(4) * GaussianRational(3), one()});
    Rat R3 = decay_radius(c3);
    CHECK(R3 <= 1);
    CHECK(to_double(R3) == doctest::Approx(1.0 / 3.0).epsilon(1e-3));

    // Certificate replay at 256 sampled angles on |z| = R and seeded moduli
    // in [R, 10R]: |gamma_j| * |z|^3 <= 1.
    std::mt19937_64 rng(20240811u);
    std::uniform_real_distribution<double> uang(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> urad(1.0, 10.0);
    for (const RationalCurve& curve : {c, c3}) {
        double Rd = to_double(decay_radius(curve));
        for (int i = 0; i < 256; ++i) {
            std::complex<double> z = std::polar(Rd, uang(rng));
            std::complex<double> g = evaluate_gamma(curve, 1, z);
            CHECK(std::abs(g) * std::pow(std::abs(z), 3) <= 1.0 + 1e-9);
        }
        for (int i = 0; i < 1000; ++i) {
            std::complex<double> z = std::polar(Rd * urad(rng), uang(rng));
            std::complex<double> g = evaluate_gamma(curve, 1, z);
            CHECK(std::abs(g) * std::pow(std::abs(z), 3) <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("pole count") {
    CHECK(pole_count(validate_curve({zpow(4), one()})) == 4);
    CHECK(pole_count(validate_curve({zpow(4), one(), one()})) == 8);
    // ((z^2+1)^2 : z : 1): both ratios have 4 poles; the gcd computation rules
    // out cancellation. Built directly: the counting contract only needs a
    // nonzero denominator component.
    RationalCurve wide;
    wide.components = {(zpow(2) + one()) * (zpow(2) + one()), zpow(1), one()};
    wide.m = 2;
    CHECK(pole_count(wide) == 8);
    // Cancellation shows up through the gcd: ((z^2+1)^2 : z^2+1).
    RationalCurve cancel;
    cancel.components = {(zpow(2) + one()) * (zpow(2) + one()), zpow(2) + one()};
    cancel.m = 1;
    CHECK(pole_count(cancel) == 2);
    // A zero component contributes nothing.
    CHECK(pole_count(validate_curve({zpow(4), ExactPolynomial{}, one()})) == 4);
}

TEST_CASE("zeta(3) upper bound") {
    Rat z3 = zeta3_upper_bound(1000000);
    double v = to_double(z3);
    CHECK(v >= 1.2020569031595942);  // Apery's constant; the bound must sit above
    CHECK(v == doctest::Approx(1.2020569031595942).epsilon(1e-9));
}

TEST_CASE("choose_eta: four-term maximum") {
    Rat z3 = zeta3_upper_bound(10000);
    // k=1, R=1, n=4: candidates {2, 3, 4, (32 z3)^(1/3) ~ 3.376} -> 4.
    CHECK(choose_eta(Rat(1), 4, 1, z3) == 4);
    // k=3: 3^3 = 27 dominates (2^7 z3)^(1/3) ~ 5.36.
    CHECK(choose_eta(Rat(1), 4, 3, z3) == 27);
    // Doubling R beyond every other term doubles eta.
    CHECK(choose_eta(Rat(100), 4, 1, z3) == 200);
    CHECK(choose_eta(Rat(200), 4, 1, z3) == 400);
    // eta dominance, exact comparisons.
    for (int k = 1; k <= 6; ++k) {
        Int eta = choose_eta(Rat(3, 2), 5, k, z3);
        CHECK(eta >= 3);
        Int three_k = 1;
        for (int t = 0; t < k; ++t) three_k *= 3;
        CHECK(eta >= three_k);
        CHECK(eta >= 5);
        CHECK(Rat(eta * eta * eta) >= Rat(Int(1) << (k + 4)) * z3);
    }
}

TEST_CASE("catalogue: ordering, dedupe, projective invariance") {
    Rat z3 = zeta3_upper_bound(10000);
    std::vector<std::vector<ExactPolynomial>> sources;
    sources.push_back({zpow(5), one()});
    sources.push_back({zpow(4), one()});
    sources.push_back({zpow(4) * GaussianRational(Rat(2), Rat(1)), one() * GaussianRational(Rat(2), Rat(1))});  // duplicate of the second, scaled
    CurveCatalogue cat = build_catalogue(sources, z3);
    REQUIRE(cat.size() == 2);
    CHECK(cat.warnings.size() == 1);
    CHECK(cat.at(1).curve.max_degree() == 4);  // sorted by degree
    CHECK(cat.at(2).curve.max_degree() == 5);
    CHECK(cat.at(1).params.k == 1);
    CHECK(cat.at(2).params.k == 2);

    // Projective invariance of the parameters.
    CurveCatalogue single = build_catalogue({{zpow(4), one()}}, z3);
    CurveCatalogue scaled = build_catalogue(
        {{zpow(4) * GaussianRational(Rat(7), Rat(3)), one() * GaussianRational(Rat(7), Rat(3))}},
        z3);
    CHECK(single.at(1).params.R == scaled.at(1).params.R);
    CHECK(single.at(1).params.n == scaled.at(1).params.n);
    CHECK(single.at(1).params.eta == scaled.at(1).params.eta);

    CHECK(build_catalogue({}, z3).size() == 0);
}

TEST_CASE("evaluate_gamma: values and pole guard") {
    RationalCurve c = validate_curve({zpow(4), one()});
    std::complex<double> v = evaluate_gamma(c, 1, {2.0, 0.0});
    CHECK(v.real() == doctest::Approx(0.0625));
    CHECK(v.imag() == doctest::Approx(0.0));
    CHECK_THROWS_AS(evaluate_gamma(c, 1, {0.0, 0.0}), pole_hit_error);
}

TEST_CASE("catalogue text round trip and params cache") {
    Rat z3 = zeta3_upper_bound(10000);
    std::vector<std::vector<ExactPolynomial>> sources;
    sources.push_back({zpow(4) + ExactPolynomial::constant(GaussianRational(Rat(2), Rat(0))), one()});
    ExactPolynomial p1(
        std::vector<GaussianRational>{GaussianRational(Rat(1), Rat(2)), GaussianRational(1)});
    sources.push_back({zpow(5) - zpow(1) * GaussianRational(Rat(0), Rat(1)), p1});
    CurveCatalogue cat = build_catalogue(sources, z3);

    std::string text = catalogue_to_text(cat);
    std::istringstream in(text);
    auto parsed = parse_catalogue_text(in);
    CurveCatalogue cat2 = build_catalogue(parsed, z3);
    CHECK(cat2.content_hash == cat.content_hash);
    CHECK(catalogue_to_text(cat2) == text);

    // Params cache round trip keyed by the content hash.
    std::string cache = params_cache_to_text(cat);
    CurveCatalogue probe = cat2;
    for (auto& e : probe.entries) e.params.R = Rat(0);
    CHECK(try_load_params_cache(cache, cat.content_hash, probe));
    CHECK(probe.at(1).params.R == cat.at(1).params.R);
    CHECK(!try_load_params_cache(cache, cat.content_hash + 1, probe));
}

TEST_CASE("gaussian token parser") {
    CHECK(gaussian_from_token("3/2") == GaussianRational(Rat(3, 2), Rat(0)));
    CHECK(gaussian_from_token("-1/2+3/4i") == GaussianRational(Rat(-1, 2), Rat(3, 4)));
    CHECK(gaussian_from_token("2-1i") == GaussianRational(Rat(2), Rat(-1)));
    CHECK(gaussian_from_token("5i") == GaussianRational(Rat(0), Rat(5)));
    CHECK(gaussian_from_token("-5/7i") == GaussianRational(Rat(0), Rat(-5, 7)));
    GaussianRational g(Rat(-3, 5), Rat(7, 11));
    CHECK(gaussian_from_token(gaussian_to_token(g)) == g);
}
