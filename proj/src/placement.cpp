#include "fhc/placement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace fhc {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

DirectionTable make_direction_table(const std::vector<double>& angles) {
    if (angles.empty()) throw std::invalid_argument("direction table: need at least one angle");
    for (double a : angles)
        if (!(a >= 0.0) || a >= kTwoPi)
            throw std::invalid_argument("direction table: angles must lie in [0, 2pi)");
    for (std::size_t i = 0; i < angles.size(); ++i)
        for (std::size_t j = i + 1; j < angles.size(); ++j)
            if (angles[i] == angles[j])
                throw std::invalid_argument("direction table: angles must be pairwise distinct");
    DirectionTable t;
    t.thetas = angles;
    return t;
}

std::pair<long, long> cantor_pairing(long n) {
    if (n < 1) throw std::invalid_argument("cantor_pairing: n must be >= 1");
    // Diagonal d holds pairs with i + j - 1 = d, ordered by i.
    long d = static_cast<long>((std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
    while (d * (d + 1) / 2 >= n) --d;
    while ((d + 1) * (d + 2) / 2 < n) ++d;
    // Now T(d) < n <= T(d+1) with T(x) = x(x+1)/2.
    long i = n - d * (d + 1) / 2;
    long j = (d + 1) - i + 1;
    return {i, j};
}

long cantor_pairing_inverse(long i, long j) {
    if (i < 1 || j < 1) throw std::invalid_argument("cantor_pairing_inverse: indices >= 1");
    long d = i + j - 2;
    return d * (d + 1) / 2 + i;
}

CenterSchedule enumerate_centers(SeparatedFamilyGrid& grid, const Int& eta_k, int k,
                                 const DirectionTable& directions, long s_max,
                                 const Int& horizon) {
    if (s_max < 0) throw std::invalid_argument("enumerate_centers: s_max must be >= 0");
    CenterSchedule sched;
    sched.k = k;
    sched.eta = eta_k;
    if (s_max == 0) return sched;
    if (eta_k > Int(1) << 30) throw capacity_error("enumerate_centers: eta too large to schedule");
    const long eta_l = eta_k.template convert_to<long>();

    struct CellCursor {
        int l;
        std::size_t next = 0;
        std::vector<Int> elements;  // materialized prefix
        bool exhausted = false;
        long cap;
    };
    std::vector<CellCursor> open;
    const int V = directions.V();

    auto refill = [&](CellCursor& cc) {
        if (cc.exhausted || cc.next < cc.elements.size()) return;
        cc.cap *= 2;
        if (2 * cc.l > grid.j_max()) {
            cc.exhausted = true;
            return;
        }
        cc.elements = grid.cell(k, 2 * cc.l, horizon, cc.cap);
        if (cc.next >= cc.elements.size()) cc.exhausted = true;
    };
    auto open_cell = [&](int l) {
        CellCursor cc;
        cc.l = l;
        cc.cap = std::max<long>(8, s_max);
        if (2 * l <= grid.j_max()) cc.elements = grid.cell(k, 2 * l, horizon, cc.cap);
        if (cc.elements.empty()) cc.exhausted = true;
        open.push_back(std::move(cc));
    };

    long next_l = eta_l;
    open_cell(next_l++);

    while (static_cast<long>(sched.entries.size()) < s_max) {
        // Pick the smallest current element across open cells.
        int best = -1;
        for (std::size_t i = 0; i < open.size(); ++i) {
            refill(open[i]);
            if (open[i].exhausted) continue;
            if (best < 0 || open[i].elements[open[i].next] < open[best].elements[open[best].next])
                best = static_cast<int>(i);
        }
        if (best < 0) {
            std::ostringstream os;
            os << "enumerate_centers: only " << sched.entries.size() << " of " << s_max
               << " centers realized for k=" << k << " below horizon " << horizon
               << " (cells A(" << k << ", 2l) for l >= " << eta_l << ")";
            throw horizon_exhausted_error(os.str());
        }
        // Open later cells whose first element could undercut the candidate.
        while (2 * next_l <= grid.j_max()) {
            const auto& probe = grid.cell(k, 2 * next_l, horizon, 8);
            if (probe.empty()) break;  // later cells start even higher
            if (probe.front() > open[best].elements[open[best].next]) break;
            open_cell(next_l++);
            // Re-pick including the fresh cell.
            for (std::size_t i = 0; i < open.size(); ++i) {
                refill(open[i]);
                if (open[i].exhausted) continue;
                if (open[i].elements[open[i].next] < open[best].elements[open[best].next])
                    best = static_cast<int>(i);
            }
        }

        CellCursor& src = open[static_cast<std::size_t>(best)];
        CenterRecord rec;
        rec.k = k;
        rec.s = static_cast<long>(sched.entries.size()) + 1;
        rec.a = src.elements[src.next++];
        rec.l = src.l;
        rec.v = static_cast<int>((cantor_pairing(src.l).first - 1) % V) + 1;
        rec.theta = directions.theta(rec.v);
        rec.b = std::polar(1.0, rec.theta) * to_double(rec.a);
        sched.entries.push_back(std::move(rec));
    }
    return sched;
}

// ---------------------------------------------------------------------------
// Separation certificates.
// ---------------------------------------------------------------------------

PlacementReport check_disjoint_discs(const std::vector<CenterSchedule>& schedules) {
    PlacementReport rep;
    rep.name = "disjoint_discs";
    struct Flat {
        const CenterRecord* rec;
        const Int* eta;
    };
    std::vector<Flat> all;
    for (const auto& s : schedules)
        for (const auto& e : s.entries) all.push_back({&e, &s.eta});

    double min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            ++rep.pairs_checked;
            const CenterRecord& x = *all[i].rec;
            const CenterRecord& y = *all[j].rec;
            Int gap = x.a > y.a ? x.a - y.a : y.a - x.a;
            Int need = 2 * (*all[i].eta) + 2 * (*all[j].eta);
            Int slack = gap - need;  // annulus separation, exact
            min_slack = std::min(min_slack, to_double(slack));
            if (slack < 0) {
                std::ostringstream os;
                os << "annuli overlap: (k=" << x.k << ",s=" << x.s << ") vs (k=" << y.k
                   << ",s=" << y.s << ") |a1-a2|=" << gap << " < " << need;
                rep.violations.push_back(os.str());
            }
            // Disc disjointness via the Euclidean distance (stable formula).
            double d = center_distance(x.a, x.theta, y.a, y.theta);
            double disc_need = to_double(Int(*all[i].eta + *all[j].eta));
            if (d < disc_need) {
                std::ostringstream os;
                os << "discs overlap: (k=" << x.k << ",s=" << x.s << ") vs (k=" << y.k
                   << ",s=" << y.s << ") dist=" << d << " < " << disc_need;
                rep.violations.push_back(os.str());
            }
        }
    }
    rep.min_slack = all.size() < 2 ? 0.0 : min_slack;
    return rep;
}

PlacementReport check_distance_bounds(const std::vector<CenterSchedule>& schedules,
                                      int samples_per_schedule, std::uint64_t seed) {
    PlacementReport rep;
    rep.name = "distance_bounds";
    double min_slack = std::numeric_limits<double>::infinity();

    // Same-curve bound, exact on moduli: |a_t - a_s| - l >= l + 2 eta |t - s|.
    for (const auto& sch : schedules) {
        const long S = static_cast<long>(sch.entries.size());
        for (long s = 1; s <= S; ++s) {
            const Int l(sch.entries[static_cast<std::size_t>(s - 1)].l);
            for (long t = 1; t <= S; ++t) {
                if (t == s) continue;
                ++rep.pairs_checked;
                const Int& as = sch.entries[static_cast<std::size_t>(s - 1)].a;
                const Int& at = sch.entries[static_cast<std::size_t>(t - 1)].a;
                Int gap = at > as ? at - as : as - at;
                Int need = 2 * l + 2 * sch.eta * (t > s ? t - s : s - t);
                Int slack = gap - need;
                min_slack = std::min(min_slack, to_double(slack));
                if (slack < 0) {
                    std::ostringstream os;
                    os << "same-curve bound fails: k=" << sch.k << " s=" << s << " t=" << t
                       << " |a_t-a_s|=" << gap << " < " << need;
                    rep.violations.push_back(os.str());
                }
            }
        }
    }

    // Cross-curve bound via the straddling index s~ of a_s^[k] inside the
    // other schedule: |a_t' - a_s| - l >= l + eta' (|t - s~| + 1).
    for (const auto& sk : schedules) {
        for (const auto& sk2 : schedules) {
            if (sk2.k == sk.k) continue;
            for (const auto& e : sk.entries) {
                const Int l(e.l);
                long stilde = 1;
                while (stilde <= static_cast<long>(sk2.entries.size()) &&
                       sk2.entries[static_cast<std::size_t>(stilde - 1)].a < e.a)
                    ++stilde;
                for (long t = 1; t <= static_cast<long>(sk2.entries.size()); ++t) {
                    ++rep.pairs_checked;
                    const Int& at = sk2.entries[static_cast<std::size_t>(t - 1)].a;
                    Int gap = at > e.a ? at - e.a : e.a - at;
                    Int need = 2 * l + sk2.eta * ((t > stilde ? t - stilde : stilde - t) + 1);
                    Int slack = gap - need;
                    min_slack = std::min(min_slack, to_double(slack));
                    if (slack < 0) {
                        std::ostringstream os;
                        os << "cross-curve bound fails: k=" << sk.k << " s=" << e.s
                           << " vs k'=" << sk2.k << " t=" << t << " (s~=" << stilde << ")";
                        rep.violations.push_back(os.str());
                    }
                }
            }
        }
    }

    // Outside-point bound, seeded samples: for b outside the closed disc
    // around (k, s), |b - b_s| >= (eta/2)(|t~ - s| + 1).
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uang(0.0, kTwoPi);
    for (const auto& sch : schedules) {
        if (sch.entries.empty()) continue;
        const double eta_d = to_double(sch.eta);
        const double lo = std::max(1.0, to_double(sch.entries.front().a) / 8.0);
        const double hi = to_double(sch.entries.back().a) * 1.25;
        std::uniform_real_distribution<double> ulog(std::log(lo), std::log(hi));
        for (int i = 0; i < samples_per_schedule; ++i) {
            Radius rho = Radius::from_double(std::exp(ulog(rng)));
            double phi = uang(rng);
            ++rep.samples;
            // t~ from the exact modulus ordering, a_0 := 0.
            long ttilde = 1;
            while (ttilde <= static_cast<long>(sch.entries.size()) &&
                   Rat(sch.entries[static_cast<std::size_t>(ttilde - 1)].a) <= rho.exact)
                ++ttilde;
            for (const auto& e : sch.entries) {
                std::complex<double> diff =
                    circle_point_minus_center(rho, phi, e.a, e.theta);
                double d = std::abs(diff);
                if (d <= eta_d) continue;  // inside or on the closed disc: bound not claimed
                double need = 0.5 * eta_d * (std::abs(static_cast<double>(ttilde - e.s)) + 1.0);
                double slack = d - need;
                min_slack = std::min(min_slack, slack);
                if (slack < -1e-9 * std::max(1.0, d)) {
                    std::ostringstream os;
                    os << "outside-point bound fails: k=" << sch.k << " s=" << e.s
                       << " |b|=" << rho.value << " dist=" << d << " need=" << need;
                    rep.violations.push_back(os.str());
                }
            }
        }
    }

    rep.min_slack = std::isfinite(min_slack) ? min_slack : 0.0;
    return rep;
}

std::string schedule_csv(const std::vector<CenterSchedule>& schedules) {
    std::ostringstream os;
    os << "k,s,a,l,v,theta_radians,re_b,im_b,eta_k\n";
    for (const auto& sch : schedules) {
        for (const auto& e : sch.entries) {
            os << e.k << "," << e.s << "," << e.a << "," << e.l << "," << e.v << ","
               << format_double(e.theta) << "," << format_double(e.b.real()) << ","
               << format_double(e.b.imag()) << "," << sch.eta << "\n";
        }
    }
    return os.str();
}

}  // namespace fhc
