#include "fhc/numeric.hpp"

#include <cmath>
#include <cstdio>

namespace fhc {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string to_decimal_string(const Rat& x, int digits) {
    bool neg = x < 0;
    Rat a = neg ? -x : x;
    Int ip = rat_floor(a);
    Rat frac = a - Rat(ip);
    std::string out = neg ? "-" : "";
    out += ip.str();
    if (digits > 0 && frac != 0) {
        out += '.';
        for (int i = 0; i < digits && frac != 0; ++i) {
            frac *= 10;
            Int d = rat_floor(frac);
            out += static_cast<char>('0' + d.template convert_to<int>());
            frac -= Rat(d);
        }
    }
    return out;
}

}  // namespace fhc
