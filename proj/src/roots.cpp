#include "fhc/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fhc {

namespace {

std::complex<double> horner(const std::vector<std::complex<double>>& c, std::complex<double> z) {
    std::complex<double> acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

}  // namespace

RootResult find_roots(const std::vector<std::complex<double>>& coeffs, double residual_tol,
                      double cluster_radius, int max_iterations) {
    RootResult out;
    // Strip trailing zero coefficients, then leading zeros of the variable
    // (roots at the origin come out exactly).
    std::vector<std::complex<double>> c = coeffs;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() <= 1) return out;  // constant: no roots

    int zero_roots = 0;
    while (std::abs(c.front()) == 0.0) {
        ++zero_roots;
        c.erase(c.begin());
    }

    const int n = static_cast<int>(c.size()) - 1;
    double height = 0.0;
    for (const auto& v : c) height = std::max(height, std::abs(v));

    std::vector<std::complex<double>> r;
    if (n >= 1) {
        // Monic normalization.
        std::complex<double> lead = c.back();
        std::vector<std::complex<double>> m(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) m[k] = c[k] / lead;

        // Cauchy bound for the initial circle radius.
        double bound = 0.0;
        for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(m[k]));
        double radius = 0.5 * std::min(4.0 + bound, 1.0 + bound);

        r.resize(n);
        const std::complex<double> seed(0.4, 0.9);
        std::complex<double> p(1.0, 0.0);
        for (int k = 0; k < n; ++k) {
            p *= seed;
            r[k] = radius * p / std::abs(p) * (1.0 + 0.05 * k / n);
            // slight radius stagger avoids symmetric stalls
        }

        for (int it = 0; it < max_iterations; ++it) {
            double step = 0.0;
            for (int i = 0; i < n; ++i) {
                std::complex<double> denom(1.0, 0.0);
                for (int j = 0; j < n; ++j)
                    if (j != i) denom *= (r[i] - r[j]);
                if (std::abs(denom) == 0.0) {
                    r[i] += std::complex<double>(1e-8, 2e-8);
                    continue;
                }
                std::complex<double> d = horner(m, r[i]) / denom;
                r[i] -= d;
                step = std::max(step, std::abs(d));
            }
            out.iterations = it + 1;
            if (step < 1e-14 * std::max(1.0, radius)) break;
        }
    }

    for (int k = 0; k < zero_roots; ++k) r.emplace_back(0.0, 0.0);

    out.roots = r;
    // Residual of the full polynomial (including stripped origin roots) at each root.
    for (const auto& z : r) {
        std::complex<double> v = horner(coeffs, z);
        out.max_residual = std::max(out.max_residual, std::abs(v));
    }
    out.certified = out.max_residual < residual_tol * std::max(height, 1.0);

    // Cluster within cluster_radius (transitive closure via sorted greedy).
    std::vector<bool> used(r.size(), false);
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> group{i};
        used[i] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t j = 0; j < r.size(); ++j) {
                if (used[j]) continue;
                for (std::size_t g : group) {
                    if (std::abs(r[j] - r[g]) <= cluster_radius) {
                        group.push_back(j);
                        used[j] = true;
                        grew = true;
                        break;
                    }
                }
            }
        }
        std::complex<double> mean{0.0, 0.0};
        for (std::size_t g : group) mean += r[g];
        mean /= static_cast<double>(group.size());
        out.clusters.push_back({mean, static_cast<int>(group.size())});
    }
    std::sort(out.clusters.begin(), out.clusters.end(), [](const RootCluster& a, const RootCluster& b) {
        if (std::abs(a.location) != std::abs(b.location)) return std::abs(a.location) < std::abs(b.location);
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return out;
}

}  // namespace fhc
