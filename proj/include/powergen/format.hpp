#pragma once

#include <complex>
#include <cstdio>
#include <string>

namespace powergen {

// All serialized floats use 17 significant digits so that parsing the text
// reproduces the exact double (round-trip identity, reproducible goldens).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_complex(std::complex<double> v) {
    if (v.imag() == 0.0) return format_double(v.real());
    std::string s = format_double(v.real());
    s += (v.imag() < 0.0 ? "-" : "+");
    s += format_double(std::abs(v.imag()));
    s += "i";
    return s;
}

}  // namespace powergen
