#include <doctest.h>

#include "fhc/placement.hpp"

#include <cmath>

using namespace fhc;

TEST_CASE("cantor pairing: first diagonals and round trip") {
    CHECK(cantor_pairing(1) == std::pair<long, long>{1, 1});
    CHECK(cantor_pairing(2) == std::pair<long, long>{1, 2});
    CHECK(cantor_pairing(3) == std::pair<long, long>{2, 1});
    CHECK(cantor_pairing(4) == std::pair<long, long>{1, 3});
    CHECK(cantor_pairing(5) == std::pair<long, long>{2, 2});
    CHECK(cantor_pairing(6) == std::pair<long, long>{3, 1});
    bool ok = true;
    for (long n = 1; n <= 100000; ++n) {
        auto [i, j] = cantor_pairing(n);
        if (cantor_pairing_inverse(i, j) != n) ok = false;
    }
    CHECK(ok);
}

TEST_CASE("direction table validation") {
    CHECK_THROWS(make_direction_table({}));
    CHECK_THROWS(make_direction_table({0.0, 0.0}));
    CHECK_THROWS(make_direction_table({-0.1}));
    CHECK_THROWS(make_direction_table({6.3}));
    DirectionTable t = make_direction_table({0.0, 2.0943951023931953, 4.1887902047863905});
    CHECK(t.V() == 3);
    CHECK(t.theta(2) == doctest::Approx(2.0943951023931953));
}

namespace {

struct Fixture {
    GridParams params;
    SeparatedFamilyGrid grid;
    DirectionTable dirs;
    Fixture() : params{make_params()}, grid(params),
                dirs(make_direction_table({0.0, 2.0943951023931953, 4.1887902047863905})) {}
    static GridParams make_params() {
        GridParams p;
        p.j_max = 24;
        return p;
    }
};

}  // namespace

TEST_CASE("enumerate_centers: ordering, cell indices, rotation") {
    Fixture fx;
    Int horizon = Int(1) << 40;
    CenterSchedule sched = enumerate_centers(fx.grid, Int(4), 1, fx.dirs, 12, horizon);
    REQUIRE(sched.entries.size() == 12);
    for (std::size_t i = 0; i < sched.entries.size(); ++i) {
        const CenterRecord& e = sched.entries[i];
        CHECK(e.l >= 4);                    // Theta >= eta
        CHECK(e.a >= Int(2 * e.l));         // far from the origin
        CHECK(e.a >= 2 * sched.eta);
        if (i > 0) CHECK(e.a > sched.entries[i - 1].a);  // strictly increasing
        // Direction comes from the pairing first component, clamped mod V.
        int v = static_cast<int>((cantor_pairing(e.l).first - 1) % 3) + 1;
        CHECK(e.v == v);
        CHECK(std::abs(std::abs(e.b) - to_double(e.a)) <= 1e-9 * to_double(e.a));
        // On the ray: b / |b| = e^{i theta(v)}.
        CHECK(std::arg(e.b * std::polar(1.0, -e.theta)) == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK(enumerate_centers(fx.grid, Int(4), 1, fx.dirs, 0, horizon).entries.empty());
    CHECK_THROWS_AS(enumerate_centers(fx.grid, Int(4), 1, fx.dirs, 5, Int(100)),
                    horizon_exhausted_error);
}

TEST_CASE("placement certificates on a realized two-curve schedule") {
    Fixture fx;
    Int horizon = Int(1) << 60;
    std::vector<CenterSchedule> schedules;
    schedules.push_back(enumerate_centers(fx.grid, Int(4), 1, fx.dirs, 8, horizon));
    schedules.push_back(enumerate_centers(fx.grid, Int(9), 2, fx.dirs, 6, horizon));

    PlacementReport discs = check_disjoint_discs(schedules);
    CHECK(discs.pass());
    CHECK(discs.pairs_checked == 14 * 13 / 2);
    CHECK(discs.min_slack >= 0.0);

    PlacementReport dist = check_distance_bounds(schedules, 200, 42u);
    CHECK(dist.pass());
    CHECK(dist.samples == 400);

    // Single center: vacuously disjoint.
    std::vector<CenterSchedule> single{schedules[0]};
    single[0].entries.resize(1);
    CHECK(check_disjoint_discs(single).pass());

    // Injected fault: a second center at distance eta from the first must be
    // flagged by both certificates.
    std::vector<CenterSchedule> bad = schedules;
    CenterRecord fake = bad[0].entries[0];
    fake.s = static_cast<long>(bad[0].entries.size()) + 1;
    fake.a = bad[0].entries[0].a + bad[0].eta;
    fake.b = std::polar(1.0, fake.theta) * to_double(fake.a);
    bad[0].entries.push_back(fake);
    CHECK_FALSE(check_disjoint_discs(bad).pass());
    CHECK_FALSE(check_distance_bounds(bad, 50, 42u).pass());
}

TEST_CASE("schedule csv shape") {
    Fixture fx;
    Int horizon = Int(1) << 40;
    std::vector<CenterSchedule> schedules{
        enumerate_centers(fx.grid, Int(4), 1, fx.dirs, 3, horizon)};
    std::string csv = schedule_csv(schedules);
    CHECK(csv.rfind("k,s,a,l,v,theta_radians,re_b,im_b,eta_k\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("stable geometry: displaced points at extreme scale") {
    // r - a computed exactly: no cancellation even at 10^33.
    Int a("1000000000000000000000000000000000");
    Radius r(Rat(a + 7));
    std::complex<double> d = circle_point_minus_center(r, 0.5, a, 0.5);
    CHECK(std::abs(d) == doctest::Approx(7.0).epsilon(1e-12));

    // Same modulus, tiny angular offset passed as an explicit delta:
    // |z - b| ~ a * delta even when theta + delta is not representable.
    std::complex<double> e = offset_point_minus_center(Radius(Rat(a)), a, 1e-30);
    CHECK(std::abs(e) == doctest::Approx(1e3).epsilon(1e-9));
    // Through absolute angles the offset must stay above double resolution.
    Int a14("100000000000000");
    std::complex<double> e2 = circle_point_minus_center(Radius(Rat(a14)), 0.5 + 1e-10, a14, 0.5);
    CHECK(std::abs(e2) == doctest::Approx(1e4).epsilon(1e-5));

    // Distance between centers on different rays dominated by the cross term.
    double dist = center_distance(a, 0.0, a, 2.0943951023931953);
    CHECK(dist == doctest::Approx(std::sqrt(3.0) * 1e33).epsilon(1e-12));

    // log-modulus of a displaced zero: log|a e^{i t} + rho|.
    double lm = log_modulus_of_displaced(a, 0.25, {3.0, 4.0});
    double expected = std::log(1e33);  // displacement is invisible at this scale
    CHECK(lm == doctest::Approx(expected).epsilon(1e-12));
    // At small scale it matches the naive computation.
    double lm2 = log_modulus_of_displaced(Int(10), 0.0, {3.0, 4.0});
    CHECK(lm2 == doctest::Approx(std::log(std::abs(std::complex<double>(13.0, 4.0)))));
}
