#include <doctest.h>

#include "fhc/roots.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace fhc;

namespace {

std::vector<std::complex<double>> expand(const std::vector<std::complex<double>>& roots) {
    std::vector<std::complex<double>> c{1.0};
    for (auto r : roots) {
        std::vector<std::complex<double>> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = next;
    }
    return c;  // constant term first by construction
}

}  // namespace

TEST_CASE("simple roots recovered with residual certificate") {
    // z^2 - 1
    RootResult r = find_roots({{-1, 0}, {0, 0}, {1, 0}});
    REQUIRE(r.clusters.size() == 2);
    CHECK(r.certified);
    CHECK(std::abs(r.clusters[0].location - std::complex<double>(-1, 0)) < 1e-8);
    CHECK(std::abs(r.clusters[1].location - std::complex<double>(1, 0)) < 1e-8);
}

TEST_CASE("multiple roots cluster to the right multiplicity") {
    // (z^2 + 1)^2 = z^4 + 2z^2 + 1
    RootResult r = find_roots({{1, 0}, {0, 0}, {2, 0}, {0, 0}, {1, 0}});
    REQUIRE(r.clusters.size() == 2);
    int total = 0;
    for (const auto& c : r.clusters) {
        CHECK(c.multiplicity == 2);
        total += c.multiplicity;
        CHECK(std::abs(std::abs(c.location) - 1.0) < 1e-5);
        CHECK(std::abs(c.location.real()) < 1e-5);
    }
    CHECK(total == 4);
}

TEST_CASE("roots at the origin and zero leading noise") {
    // z^3 * (z - 2)
    RootResult r = find_roots({{0, 0}, {0, 0}, {0, 0}, {-2, 0}, {1, 0}});
    int at_origin = 0;
    for (const auto& c : r.clusters)
        if (std::abs(c.location) < 1e-9) at_origin += c.multiplicity;
    CHECK(at_origin == 3);
}

TEST_CASE("seeded random polynomials: all roots recovered") {
    std::mt19937_64 rng(77001u);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        int deg = 3 + static_cast<int>(rng() % 5);
        std::vector<std::complex<double>> roots;
        for (int i = 0; i < deg; ++i) roots.emplace_back(u(rng), u(rng));
        RootResult r = find_roots(expand(roots));
        REQUIRE(r.roots.size() == roots.size());
        CHECK(r.certified);
        // Match each true root to the nearest found root.
        for (auto t : roots) {
            double best = 1e9;
            for (auto f : r.roots) best = std::min(best, std::abs(f - t));
            CHECK(best < 1e-6);
        }
    }
}
