#pragma once

// Polynomial root finding by simultaneous iteration (Durand-Kerner), with a
// residual certificate and multiplicity clustering. Good enough for the
// degree <= 8 factors this project works with; exact arithmetic stays in
// validation, these roots feed the analysis side (pole inventories, winding
// cross-checks).

#include <complex>
#include <vector>

namespace fhc {

struct RootCluster {
    std::complex<double> location;  // multiplicity-averaged representative
    int multiplicity = 1;
};

struct RootResult {
    std::vector<std::complex<double>> roots;    // degree entries, unclustered
    std::vector<RootCluster> clusters;          // grouped within cluster_radius
    double max_residual = 0.0;                  // max |p(root)| over roots
    bool certified = false;                     // residual < tol * height
    int iterations = 0;
};

// coeffs: constant term first, complex doubles, leading coefficient nonzero.
// residual_tol is multiplied by the coefficient height (max |c_k|).
RootResult find_roots(const std::vector<std::complex<double>>& coeffs,
                      double residual_tol = 1e-10, double cluster_radius = 1e-6,
                      int max_iterations = 512);

}  // namespace fhc
