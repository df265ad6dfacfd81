#include "fhc/curves.hpp"

#include "fhc/density.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fhc {

std::string RationalCurve::canonical_string() const {
    std::ostringstream os;
    os << "curve " << m << "\n";
    for (const auto& p : components) {
        os << "poly";
        for (const auto& c : p.coefficients()) os << " " << gaussian_to_token(c);
        if (p.is_zero()) os << " 0";
        os << "\n";
    }
    return os.str();
}

RationalCurve validate_curve(const std::vector<ExactPolynomial>& candidate) {
    if (candidate.empty() || candidate.front().is_zero())
        throw std::invalid_argument("validate_curve: p_0 must be nonzero");
    RationalCurve curve;
    curve.m = static_cast<int>(candidate.size()) - 1;

    const ExactPolynomial& p0 = candidate.front();
    ExactPolynomial g = p0;
    for (std::size_t j = 1; j < candidate.size(); ++j) {
        if (candidate[j].is_zero()) continue;
        if (p0.degree() < candidate[j].degree() + 4)
            throw degree_margin_error("validate_curve: deg(p_0) >= deg(p_" + std::to_string(j) +
                                      ") + 4 fails");
        g = poly_gcd(g, candidate[j]);
    }
    if (g.degree() > 0)
        throw common_zero_error("validate_curve: components share a zero (gcd " + g.to_string() +
                                ")");

    // Normalize the overall constant: make p_0 monic.
    GaussianRational inv = GaussianRational(Rat(1), Rat(0)) / p0.leading();
    curve.components.reserve(candidate.size());
    for (const auto& p : candidate) curve.components.push_back(p * inv);
    return curve;
}

Rat decay_radius(const RationalCurve& curve) {
    const ExactPolynomial& p0 = curve.p0();
    const int d0 = p0.degree();
    const Rat floor_radius(1, 1000000);

    // Majorant polynomial for one numerator component (real rational coeffs).
    // Positive leading coefficient, all other coefficients <= 0: exactly one
    // positive root, and positivity at R implies positivity for all R' >= R.
    auto majorant = [&](const ExactPolynomial& pj) {
        std::vector<Rat> L(static_cast<std::size_t>(d0) + 1, Rat(0));
        L[static_cast<std::size_t>(d0)] = abs_lower(p0.leading());
        for (int i = 0; i < d0; ++i) L[static_cast<std::size_t>(i)] -= abs_upper(p0.coefficient(i));
        for (int i = 0; i <= pj.degree(); ++i)
            L[static_cast<std::size_t>(i + 3)] -= abs_upper(pj.coefficient(i));
        return L;
    };
    auto eval = [](const std::vector<Rat>& L, const Rat& x) {
        Rat acc(0);
        for (auto it = L.rbegin(); it != L.rend(); ++it) acc = acc * x + *it;
        return acc;
    };

    Rat radius = floor_radius;
    for (int j = 1; j <= curve.m; ++j) {
        const ExactPolynomial& pj = curve.components[static_cast<std::size_t>(j)];
        if (pj.is_zero()) continue;
        std::vector<Rat> L = majorant(pj);
        Rat lo = floor_radius;
        if (eval(L, lo) >= 0) {
            if (lo > radius) radius = lo;
            continue;
        }
        Rat hi(1);
        while (eval(L, hi) < 0) hi *= 2;
        // Bisect to relative 2^-20; the kept endpoint certifies L >= 0.
        for (int it = 0; it < 64 && (hi - lo) * Rat(1 << 20) > hi; ++it) {
            Rat mid = (lo + hi) / 2;
            if (eval(L, mid) >= 0)
                hi = mid;
            else
                lo = mid;
        }
        if (hi > radius) radius = hi;
    }
    return radius;
}

int pole_count(const RationalCurve& curve) {
    const ExactPolynomial& p0 = curve.p0();
    int total = 0;
    for (int j = 1; j <= curve.m; ++j) {
        const ExactPolynomial& pj = curve.components[static_cast<std::size_t>(j)];
        if (pj.is_zero()) continue;
        ExactPolynomial g = poly_gcd(p0, pj);
        total += p0.degree() - g.degree();
    }
    return total;
}

Rat zeta3_upper_bound(long terms) {
    if (terms < 2) throw std::invalid_argument("zeta3_upper_bound: need terms >= 2");
    const Int scale = Int(1) << 80;
    Int acc = 0;
    for (long n = 1; n <= terms; ++n) {
        Int cube = Int(n) * n * n;
        acc += (scale + cube - 1) / cube;  // ceil(2^80 / n^3)
    }
    Rat partial(acc, scale);
    Rat tail(Int(1), Int(2) * terms * terms);
    return partial + tail;
}

Int choose_eta(const Rat& decay_radius, int pole_count, int k, const Rat& zeta3) {
    if (k < 1) throw std::invalid_argument("choose_eta: k must be >= 1");
    if (k > 64) throw capacity_error("choose_eta: 3^k beyond supported range");
    Int eta = rat_ceil(2 * decay_radius);
    Int three_k = 1;
    for (int t = 0; t < k; ++t) three_k *= 3;
    if (three_k > eta) eta = three_k;
    if (Int(pole_count) > eta) eta = pole_count;

    Rat target = Rat(Int(1) << (k + 4)) * zeta3;
    Int c = Int(std::llround(std::cbrt(to_double(target)))) + 1;
    while (c > 1 && Rat((c - 1) * (c - 1) * (c - 1)) >= target) --c;
    while (Rat(c * c * c) < target) ++c;
    if (c > eta) eta = c;
    return eta;
}

CurveCatalogue build_catalogue(const std::vector<std::vector<ExactPolynomial>>& sources,
                               const Rat& zeta3) {
    CurveCatalogue cat;
    cat.zeta3 = zeta3;
    std::vector<RationalCurve> curves;
    for (std::size_t s = 0; s < sources.size(); ++s) {
        try {
            curves.push_back(validate_curve(sources[s]));
        } catch (const std::exception& e) {
            throw std::invalid_argument("catalogue source " + std::to_string(s + 1) + ": " +
                                        e.what());
        }
    }
    // Deduplicate projectively equal curves (equal after the monic normalization).
    std::vector<RationalCurve> unique;
    std::vector<std::string> keys;
    for (auto& c : curves) {
        std::string key = c.canonical_string();
        if (std::find(keys.begin(), keys.end(), key) != keys.end()) {
            cat.warnings.push_back("duplicate curve dropped: " + key.substr(0, 48));
            continue;
        }
        keys.push_back(std::move(key));
        unique.push_back(std::move(c));
    }
    std::sort(unique.begin(), unique.end(), [](const RationalCurve& a, const RationalCurve& b) {
        if (a.max_degree() != b.max_degree()) return a.max_degree() < b.max_degree();
        if (a.height() != b.height()) return a.height() < b.height();
        return a.canonical_string() < b.canonical_string();
    });

    std::string all_text;
    for (std::size_t i = 0; i < unique.size(); ++i) {
        CatalogueEntry entry;
        entry.curve = std::move(unique[i]);
        entry.params.k = static_cast<int>(i) + 1;
        entry.params.R = decay_radius(entry.curve);
        entry.params.n = pole_count(entry.curve);
        entry.params.eta = choose_eta(entry.params.R, entry.params.n, entry.params.k, zeta3);
        std::vector<std::complex<double>> coeffs;
        for (const auto& c : entry.curve.p0().coefficients()) coeffs.push_back(to_complex(c));
        RootResult roots = find_roots(coeffs);
        entry.denominator_roots = roots.clusters;
        all_text += entry.curve.canonical_string();
        cat.entries.push_back(std::move(entry));
    }
    cat.content_hash = fnv1a(all_text);
    return cat;
}

std::complex<double> evaluate_gamma(const RationalCurve& curve, int j, std::complex<double> z,
                                    double guard) {
    if (j < 1 || j > curve.m) throw std::invalid_argument("evaluate_gamma: component index");
    std::complex<double> den = curve.p0().eval(z);
    double h = to_double(Rat(curve.p0().height()));
    double scale = std::max(h, 1.0) * std::pow(std::max(1.0, std::abs(z)), curve.p0().degree());
    if (std::abs(den) < guard * scale)
        throw pole_hit_error("evaluate_gamma: p_0 underflows the pole guard");
    return curve.components[static_cast<std::size_t>(j)].eval(z) / den;
}

// ---------------------------------------------------------------------------
// Catalogue IO.
// ---------------------------------------------------------------------------

std::vector<std::vector<ExactPolynomial>> parse_catalogue_text(std::istream& in) {
    std::vector<std::vector<ExactPolynomial>> out;
    std::string line;
    int expect = 0;  // components still owed to the current record
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "curve") {
            int m = -1;
            if (!(ls >> m) || m < 0) throw std::invalid_argument("catalogue: bad curve header");
            out.emplace_back();
            expect = m + 1;
        } else if (head == "poly") {
            if (out.empty() || expect == 0)
                throw std::invalid_argument("catalogue: poly line outside a curve record");
            std::vector<GaussianRational> coeffs;
            std::string tok;
            while (ls >> tok) coeffs.push_back(gaussian_from_token(tok));
            out.back().emplace_back(std::move(coeffs));
            --expect;
        } else {
            throw std::invalid_argument("catalogue: unknown line '" + head + "'");
        }
    }
    if (expect != 0) throw std::invalid_argument("catalogue: truncated curve record");
    return out;
}

std::vector<std::vector<ExactPolynomial>> load_catalogue_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalogue file: " + path);
    return parse_catalogue_text(in);
}

std::string catalogue_to_text(const CurveCatalogue& catalogue) {
    std::string out;
    for (const auto& e : catalogue.entries) out += e.curve.canonical_string();
    return out;
}

std::string params_cache_to_text(const CurveCatalogue& catalogue) {
    std::ostringstream os;
    os << "hash " << catalogue.content_hash << "\n";
    for (const auto& e : catalogue.entries) {
        os << "params " << e.params.k << " " << numerator(e.params.R) << "/"
           << denominator(e.params.R) << " " << e.params.n << " " << e.params.eta << "\n";
    }
    return os.str();
}

bool try_load_params_cache(const std::string& text, std::uint64_t expected_hash,
                           CurveCatalogue& catalogue) {
    std::istringstream in(text);
    std::string head;
    std::uint64_t h = 0;
    if (!(in >> head >> h) || head != "hash" || h != expected_hash) return false;
    for (auto& entry : catalogue.entries) {
        int k = 0, n = 0;
        std::string rtxt, eta;
        if (!(in >> head >> k >> rtxt >> n >> eta) || head != "params") return false;
        if (k != entry.params.k) return false;
        auto slash = rtxt.find('/');
        if (slash == std::string::npos) return false;
        entry.params.R = Rat(Int(rtxt.substr(0, slash)), Int(rtxt.substr(slash + 1)));
        entry.params.n = n;
        entry.params.eta = Int(eta);
    }
    return true;
}

}  // namespace fhc
