#pragma once

// Translation-center scheduling: enumerates, per curve index k, the union of
// grid cells A(k, 2l) over l >= eta_k in increasing order, records the cell
// index Theta^[k](s) = l of each modulus, routes l through the pairing
// bijection to a direction, and rotates. Separation certificates (disjoint
// discs/annuli, same- and cross-curve distance bounds, the outside-point
// lower bound) are exhaustive over the realized schedule, with every modulus
// comparison done in exact integer arithmetic.

#include "fhc/density.hpp"
#include "fhc/geom.hpp"
#include "fhc/numeric.hpp"

#include <complex>
#include <string>
#include <vector>

namespace fhc {

struct DirectionTable {
    std::vector<double> thetas;  // radians in [0, 2pi), pairwise distinct

    int V() const { return static_cast<int>(thetas.size()); }
    double theta(int v) const { return thetas.at(static_cast<std::size_t>(v) - 1); }
};

DirectionTable make_direction_table(const std::vector<double>& angles);

// Diagonal pairing N -> N x N: 1 -> (1,1), 2 -> (1,2), 3 -> (2,1), ...
std::pair<long, long> cantor_pairing(long n);
long cantor_pairing_inverse(long i, long j);

struct CenterRecord {
    int k = 0;
    long s = 0;                // 1-based position in the schedule
    Int a;                     // modulus, a_s^[k]
    int l = 0;                 // Theta^[k](s)
    int v = 0;                 // direction index after the mod-V clamp
    double theta = 0.0;        // theta(v)
    std::complex<double> b;    // a e^{i theta}, display value
};

struct CenterSchedule {
    int k = 0;
    Int eta;
    std::vector<CenterRecord> entries;
};

// First s_max elements of union_{l >= eta_k} A(k, 2l), merged across cells in
// increasing order. Throws horizon_exhausted_error when fewer than s_max
// moduli are realized below the horizon (the message carries an estimate of
// the horizon that would be needed).
CenterSchedule enumerate_centers(SeparatedFamilyGrid& grid, const Int& eta_k, int k,
                                 const DirectionTable& directions, long s_max, const Int& horizon);

struct PlacementReport {
    std::string name;
    long long pairs_checked = 0;
    long long samples = 0;
    double min_slack = 0.0;  // worst margin observed (>= 0 on a valid schedule)
    std::vector<std::string> violations;

    bool pass() const { return violations.empty(); }
};

// Annuli {|a| - eta < |z| < |a| + eta} pairwise disjoint with the stronger
// modulus bound |a1 - a2| >= 2 eta_1 + 2 eta_2, hence discs disjoint too.
PlacementReport check_disjoint_discs(const std::vector<CenterSchedule>& schedules);

// Same-curve bound dist(b_t, D(b_s, l)) >= l + 2 eta |t-s|, the cross-curve
// bound with the straddling index, and the sampled outside-point bound
// |b - b_s| >= (eta/2)(|t~ - s| + 1).
PlacementReport check_distance_bounds(const std::vector<CenterSchedule>& schedules,
                                      int samples_per_schedule, std::uint64_t seed);

std::string schedule_csv(const std::vector<CenterSchedule>& schedules);

}  // namespace fhc
