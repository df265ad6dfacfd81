#pragma once

// Constructions of pairwise disjoint positive-lower-density subsets of N with
// the two-sided separation guarantee: for n1 in A(l1, nu1) and n2 in A(l2, nu2)
// distinct, n_i >= nu_i and |n1 - n2| >= nu1 + nu2.
//
// The construction is the two-scale one: a family of expanding integer blocks
// N_k = [c_k, d_k], a family of disjoint rational subintervals I_j of [0, 1],
// thresholds K_j past which block gaps and scaled interval distances dominate
// 2j, preliminary sets A'(nu) = union over k >= K_nu of [I_nu * N_k], strided
// selections A(nu), and a least-prime-factor decomposition across the first
// index. Everything is evaluated in exact integer/rational arithmetic and all
// certificates are finite: valid up to an explicit horizon.

#include "fhc/numeric.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fhc {

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct horizon_exhausted_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Block family N_k = [c_k, d_k], 0 < c_k < d_k < c_{k+1}.
// ---------------------------------------------------------------------------

struct BlockFamily {
    std::vector<Int> c;  // left endpoints
    std::vector<Int> d;  // right endpoints
    int count = 0;
    // Certified lower bound for the density of (union N_k) cap [1, d_last],
    // taken as the minimum prefix ratio over N in [c_1, d_last].
    Rat delta_lower_bound;

    const Int& horizon() const { return d.back(); }
};

// c_1 = 1, d_k - c_k = 2^k, c_{k+1} - d_k = k. Rejects counts whose block
// data would be absurdly large (the library is happy with a few hundred).
BlockFamily build_blocks(int count);

// Number of integers of (union_k N_k) in [1, n], exact.
Int blocks_prefix_count(const BlockFamily& blocks, const Int& n);

// ---------------------------------------------------------------------------
// Interval family I_j inside [0, 1], exact rational endpoints.
// ---------------------------------------------------------------------------

struct IntervalFamily {
    std::vector<Rat> a;        // left endpoints
    std::vector<Rat> b;        // right endpoints
    std::vector<Rat> weights;  // realized j^-(1+eps) weights w_j
    Rat C;                     // realized partial sum of the weights
    double epsilon = 0.0;
    int count = 0;

    Rat length(int j) const { return b[j - 1] - a[j - 1]; }
    // Euclidean distance between I_l and I_j (0 if they touch/overlap).
    Rat distance(int l, int j) const;
};

// Intervals I(nu): the halves (scaled by 1/2 about their centers) of the
// consecutive partition of [0,1] with weights w_j proportional to j^-(1+eps).
// Weights are exact 1/j^(1+eps) when that is rational and count is modest;
// otherwise directed fixed-point upper roundings at 2^-80 (still exact
// rationals, so every downstream gap computation stays exact).
IntervalFamily build_intervals(double epsilon, int count);

// ---------------------------------------------------------------------------
// Thresholds K_j: for all realized k >= K_j,
//   (gap)      c_k - d_{k-1} >= 2j,
//   (distance) dist(I_l, I_j) * (d_k - c_k) >= 2j   for all l < j.
// ---------------------------------------------------------------------------

struct ThresholdTable {
    std::vector<int> K;  // K[j-1] = K_j, j = 1..j_max
    int j_max = 0;

    int at(int j) const { return K.at(static_cast<std::size_t>(j) - 1); }
};

ThresholdTable compute_thresholds(const BlockFamily& blocks, const IntervalFamily& intervals,
                                  int j_max);

// ---------------------------------------------------------------------------
// Separated family A(nu): the 2nu-strided subsequence of
// A'(nu) cap N_{>= nu}, A'(nu) = union_{k >= K_nu} [I_nu * N_k].
// ---------------------------------------------------------------------------

struct SeparatedFamily {
    int nu = 0;
    std::vector<Int> elements;          // realized prefix, strictly increasing
    std::vector<Int> aprime_prefix;     // the A'(nu) elements backing the prefix provenance
    int stride = 0;                     // 2 * nu
    bool truncated_by_horizon = false;  // horizon cut the enumeration short
    bool empty_warning = false;         // no element realized below the horizon
};

// Indexed view over A'(nu) (per-block integer ranges); all queries exact.
class AprimeView {
  public:
    AprimeView(const BlockFamily& blocks, const IntervalFamily& intervals, int nu, int k_start);

    // Number of elements <= x.
    Int count_up_to(const Int& x) const;
    // 1-based index access; throws horizon_exhausted_error past the realized blocks.
    Int element_at(const Int& index) const;
    // Total elements realized over all blocks.
    const Int& total() const { return total_; }
    int first_block() const { return k_start_; }

  private:
    struct BlockRange {
        Int lo, hi;  // inclusive integer endpoints, empty if lo > hi
        Int cumulative_before;
    };
    std::vector<BlockRange> ranges_;
    Int total_ = 0;
    int k_start_ = 0;
};

// max_count <= 0 means "as many as the horizon allows".
SeparatedFamily build_separated_family(int nu, const BlockFamily& blocks,
                                       const IntervalFamily& intervals,
                                       const ThresholdTable& thresholds, const Int& horizon,
                                       long max_count = -1);

// ---------------------------------------------------------------------------
// Least-prime-factor partition of positions: B_1 = {1} + evens, B_l (l >= 2)
// = multiples of the l-th prime with no smaller prime factor.
// ---------------------------------------------------------------------------

std::vector<std::int64_t> prime_partition(int l, std::int64_t horizon);

// Streaming enumeration of B_l in increasing order.
class PartitionPositions {
  public:
    explicit PartitionPositions(int l);
    std::int64_t next();  // 1st, 2nd, ... element of B_l

  private:
    int l_;
    std::int64_t cursor_ = 0;
    std::int64_t emitted_ = 0;
};

// j-th element (1-based) of B_l; throws capacity_error past internal caps.
std::int64_t partition_position(int l, std::int64_t j);

// A_l = elements of A at positions in B_l.
std::vector<Int> decompose(const std::vector<Int>& elements, int l);

// ---------------------------------------------------------------------------
// The grid A(l, nu) = decompose(A(nu), l), cells cached on demand.
// ---------------------------------------------------------------------------

struct GridParams {
    int j_max = 128;            // largest nu served
    double epsilon = 1.0;       // interval decay exponent (1 + epsilon)
    int block_count = 0;        // 0: derived from j_max
    long cell_max_count = 512;  // default cap on materialized elements per cell
};

class SeparatedFamilyGrid {
  public:
    explicit SeparatedFamilyGrid(const GridParams& params);

    const BlockFamily& blocks() const { return blocks_; }
    const IntervalFamily& intervals() const { return intervals_; }
    const ThresholdTable& thresholds() const { return thresholds_; }
    const Int& block_horizon() const { return blocks_.horizon(); }
    int j_max() const { return params_.j_max; }

    // Elements of A(l, nu) with value <= horizon, at most max_count of them
    // (<=0: grid default). Backed by a cache that only ever grows; the
    // returned vector is filtered to the requested bounds.
    std::vector<Int> cell(int l, int nu, const Int& horizon, long max_count = -1);

    // Full family A(nu) (l-unsplit), same caching discipline.
    std::vector<Int> family(int nu, const Int& horizon, long max_count = -1);

    // (l, nu) pairs materialized so far, deterministic order.
    std::vector<std::pair<int, int>> realized_cells() const;

  private:
    struct CellData {
        std::vector<Int> elements;
        Int horizon;
        long max_count;
    };
    GridParams params_;
    BlockFamily blocks_;
    IntervalFamily intervals_;
    ThresholdTable thresholds_;
    std::map<int, CellData> families_;
    std::map<std::pair<int, int>, CellData> cells_;
};

// ---------------------------------------------------------------------------
// Density measurements (finite surrogate of the lower density).
// ---------------------------------------------------------------------------

struct DensityProfile {
    std::vector<Int> sample_N;
    std::vector<Int> sample_count;
    std::vector<double> ratio;
    double inf_over_tail = 0.0;  // min ratio over samples with N in [N0, N_max]
    Int N0, N_max;
    bool empty_warning = false;
};

// Prefix ratios #(A cap [1, N]) / N on a logarithmic ladder of N in
// [N0, N_max] (endpoints included); elements must be sorted ascending.
DensityProfile density_profile(const std::vector<Int>& elements, const Int& N0, const Int& N_max,
                               double ladder_factor = 1.25);

struct ProductCheckResult {
    bool pass = false;
    bool warning = false;  // insufficient horizon to measure
    double dens_a = 0.0;
    double dens_indices = 0.0;
    double dens_composed = 0.0;
    std::string note;
};

// Verifies dens(composed) >= dens(A) * dens(indices) - tolerance, all three
// measured as tail-infima over [N0, N_max] in their own ranges.
ProductCheckResult density_product_check(const std::vector<Int>& a_elements,
                                         const std::vector<std::int64_t>& index_elements,
                                         const std::vector<Int>& composed, const Int& N0,
                                         const Int& N_max, double tolerance = 1e-3);

// ---------------------------------------------------------------------------
// Exhaustive finite certificates.
// ---------------------------------------------------------------------------

struct GapViolation {
    Int n1, n2;
    int l1, nu1, l2, nu2;
};

struct GapCheckReport {
    std::int64_t pairs_checked = 0;
    std::int64_t elements = 0;
    std::vector<GapViolation> violations;  // expected empty
    bool duplicate_found = false;
    bool pass() const { return violations.empty() && !duplicate_found; }
};

// Brute-force pairwise check of the key gap inequality over all realized
// elements <= horizon in the given cells.
GapCheckReport check_pairwise_gaps(SeparatedFamilyGrid& grid,
                                   const std::vector<std::pair<int, int>>& cells,
                                   const Int& horizon);

}  // namespace fhc
