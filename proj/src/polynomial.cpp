#include "fhc/polynomial.hpp"

#include <sstream>

namespace fhc {

ExactPolynomial ExactPolynomial::from_ints(const std::vector<long>& coeffs) {
    std::vector<GaussianRational> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return ExactPolynomial(std::move(c));
}

ExactPolynomial ExactPolynomial::derivative() const {
    if (c_.size() <= 1) return ExactPolynomial{};
    std::vector<GaussianRational> d;
    d.reserve(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
        d.push_back(c_[k] * GaussianRational(Rat(static_cast<long>(k)), Rat(0)));
    return ExactPolynomial(std::move(d));
}

ExactPolynomial ExactPolynomial::shifted(const GaussianRational& shift) const {
    // Horner on coefficients: p(z - s) built from the top down.
    std::vector<GaussianRational> acc;  // coefficients of the running polynomial
    GaussianRational neg = -shift;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        // acc = acc * (z + neg) + c
        std::vector<GaussianRational> next(acc.size() + 1);
        for (std::size_t k = 0; k < acc.size(); ++k) {
            next[k + 1] = next[k + 1] + acc[k];
            next[k] = next[k] + acc[k] * neg;
        }
        if (next.empty()) next.emplace_back();
        next[0] = next[0] + *it;
        acc = std::move(next);
    }
    return ExactPolynomial(std::move(acc));
}

ExactPolynomial ExactPolynomial::scaled_argument(const Rat& s) const {
    std::vector<GaussianRational> out = c_;
    Rat pw(1);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = out[k] * GaussianRational(pw, Rat(0));
        pw *= s;
    }
    return ExactPolynomial(std::move(out));
}

ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b) {
    std::vector<GaussianRational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k < a.c_.size()) c[k] = c[k] + a.c_[k];
        if (k < b.c_.size()) c[k] = c[k] + b.c_[k];
    }
    return ExactPolynomial(std::move(c));
}

ExactPolynomial operator-(const ExactPolynomial& a, const ExactPolynomial& b) {
    std::vector<GaussianRational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k < a.c_.size()) c[k] = c[k] + a.c_[k];
        if (k < b.c_.size()) c[k] = c[k] - b.c_[k];
    }
    return ExactPolynomial(std::move(c));
}

ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return ExactPolynomial{};
    std::vector<GaussianRational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return ExactPolynomial(std::move(c));
}

ExactPolynomial ExactPolynomial::operator*(const GaussianRational& s) const {
    std::vector<GaussianRational> c = c_;
    for (auto& v : c) v = v * s;
    return ExactPolynomial(std::move(c));
}

void ExactPolynomial::divmod(const ExactPolynomial& a, const ExactPolynomial& b,
                             ExactPolynomial& q, ExactPolynomial& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<GaussianRational> rem = a.c_;
    int db = b.degree();
    GaussianRational lead = b.c_.back();
    std::vector<GaussianRational> quot;
    int dr = static_cast<int>(rem.size()) - 1;
    if (dr >= db) quot.assign(dr - db + 1, GaussianRational{});
    while (dr >= db) {
        if (!rem[dr].is_zero()) {
            GaussianRational f = rem[dr] / lead;
            quot[dr - db] = f;
            for (int k = 0; k <= db; ++k) rem[dr - db + k] = rem[dr - db + k] - f * b.c_[k];
        }
        --dr;
    }
    q = ExactPolynomial(std::move(quot));
    r = ExactPolynomial(std::move(rem));
}

ExactPolynomial ExactPolynomial::monic() const {
    if (is_zero()) return *this;
    GaussianRational inv = GaussianRational(Rat(1), Rat(0)) / c_.back();
    return *this * inv;
}

ExactPolynomial poly_gcd(ExactPolynomial a, ExactPolynomial b) {
    // Monic normalization at every step keeps coefficient growth in check.
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
        ExactPolynomial q, r;
        ExactPolynomial::divmod(a, b, q, r);
        a = std::move(b);
        b = r.monic();
    }
    return a;
}

std::string ExactPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const GaussianRational& g = c_[k];
        if (g.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << gaussian_to_token(g) << ")";
        if (k >= 1) os << "*z";
        if (k >= 2) os << "^" << k;
    }
    return os.str();
}

std::string gaussian_to_token(const GaussianRational& g) {
    auto rat_str = [](const Rat& r) {
        std::string s = numerator(r).str();
        if (denominator(r) != 1) s += "/" + denominator(r).str();
        return s;
    };
    std::string out = rat_str(g.re);
    if (g.im != 0) {
        if (g.im > 0) out += "+";
        out += rat_str(g.im) + "i";
    }
    return out;
}

GaussianRational gaussian_from_token(const std::string& token) {
    // Grammar: RAT ( SIGN RAT 'i' )? | RAT 'i', with RAT = [+-]?digits(/digits)?
    std::string s;
    for (char ch : token)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty coefficient token");

    auto parse_rat = [](std::string txt) -> Rat {
        if (!txt.empty() && txt.front() == '+') txt.erase(txt.begin());
        auto slash = txt.find('/');
        if (slash == std::string::npos) return Rat(Int(txt));
        Int n(txt.substr(0, slash));
        Int d(txt.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator in token");
        return Rat(n, d);
    };

    bool has_i = s.back() == 'i';
    if (has_i) s.pop_back();

    // Find the split point: a sign that is not leading and not right after '/'.
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < s.size(); ++k) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
            split = k;  // keep last such sign: real part may itself be signed only at front
            break;
        }
    }
    if (!has_i) {
        if (split != std::string::npos) throw std::invalid_argument("malformed real token: " + token);
        return {parse_rat(s), Rat(0)};
    }
    if (split == std::string::npos) {
        // Pure imaginary, e.g. "-1/2i".
        return {Rat(0), parse_rat(s.empty() ? "1" : s)};
    }
    Rat re = parse_rat(s.substr(0, split));
    std::string imtxt = s.substr(split);
    if (imtxt == "+") imtxt = "1";
    if (imtxt == "-") imtxt = "-1";
    return {re, parse_rat(imtxt)};
}

}  // namespace fhc
