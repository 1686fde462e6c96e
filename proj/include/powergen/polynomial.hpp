#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "powergen/format.hpp"

namespace powergen {

using Complex = std::complex<double>;

/// Dense polynomial in z with complex coefficients, ascending powers.
/// The zero polynomial is represented by an empty coefficient list.
class PolynomialZ {
public:
    PolynomialZ() = default;
    explicit PolynomialZ(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    explicit PolynomialZ(const std::vector<double>& coeffs) {
        coeffs_.reserve(coeffs.size());
        for (double c : coeffs) coeffs_.emplace_back(c, 0.0);
        trim();
    }

    static PolynomialZ constant(Complex c) { return PolynomialZ(std::vector<Complex>{c}); }
    static PolynomialZ variable() { return PolynomialZ(std::vector<Complex>{{0.0, 0.0}, {1.0, 0.0}}); }

    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    Complex coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }
    Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

    Complex eval(Complex z) const {
        Complex acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    PolynomialZ derivative() const {
        if (coeffs_.size() <= 1) return PolynomialZ{};
        std::vector<Complex> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
        return PolynomialZ(std::move(d));
    }

    PolynomialZ& operator+=(const PolynomialZ& other) {
        if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
        for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
        trim();
        return *this;
    }

    PolynomialZ& operator*=(Complex s) {
        if (s == Complex{}) { coeffs_.clear(); return *this; }
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    friend PolynomialZ operator+(PolynomialZ a, const PolynomialZ& b) { a += b; return a; }
    friend PolynomialZ operator*(PolynomialZ a, Complex s) { a *= s; return a; }

    friend PolynomialZ operator*(const PolynomialZ& a, const PolynomialZ& b) {
        if (a.is_zero() || b.is_zero()) return PolynomialZ{};
        std::vector<Complex> prod(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return PolynomialZ(std::move(prod));
    }

    bool is_real() const {
        for (const auto& c : coeffs_)
            if (c.imag() != 0.0) return false;
        return true;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
    }

    std::vector<Complex> coeffs_;
};

struct PolyParseError : std::runtime_error {
    PolyParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

namespace detail {

// One coefficient: decimal real, optionally followed by (+|-) real and 'i'.
inline Complex parse_coeff(const std::string& tok, std::size_t base_pos) {
    if (tok.empty()) throw PolyParseError("empty coefficient", base_pos);
    std::size_t consumed = 0;
    double re;
    try {
        re = std::stod(tok, &consumed);
    } catch (const std::exception&) {
        throw PolyParseError("malformed number '" + tok + "'", base_pos);
    }
    if (consumed == tok.size()) return {re, 0.0};

    char sign_ch = tok[consumed];
    if (sign_ch != '+' && sign_ch != '-')
        throw PolyParseError("expected '+' or '-' in complex literal", base_pos + consumed);
    std::string rest = tok.substr(consumed + 1);
    if (rest.empty() || rest.back() != 'i')
        throw PolyParseError("complex literal must end in 'i'", base_pos + tok.size());
    rest.pop_back();
    double im;
    std::size_t im_consumed = 0;
    try {
        im = std::stod(rest, &im_consumed);
    } catch (const std::exception&) {
        throw PolyParseError("malformed imaginary part '" + rest + "'", base_pos + consumed + 1);
    }
    if (im_consumed != rest.size())
        throw PolyParseError("trailing characters in imaginary part", base_pos + consumed + 1 + im_consumed);
    return {re, sign_ch == '-' ? -im : im};
}

}  // namespace detail

/// Grammar: coeff ("," coeff)*, coeff := real | a+bi | a-bi; whitespace ignored.
/// Ascending powers of z. Round-trips through print_poly on canonical forms.
inline PolynomialZ parse_poly(const std::string& text) {
    std::string compact;
    std::vector<std::size_t> src_pos;
    compact.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!std::isspace(static_cast<unsigned char>(text[i]))) {
            compact.push_back(text[i]);
            src_pos.push_back(i);
        }
    }
    if (compact.empty()) throw PolyParseError("empty polynomial", 0);

    std::vector<Complex> coeffs;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = compact.find(',', start);
        std::string tok = compact.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        coeffs.push_back(detail::parse_coeff(tok, src_pos.empty() ? 0 : src_pos[std::min(start, src_pos.size() - 1)]));
        if (comma == std::string::npos) break;
        start = comma + 1;
        if (start >= compact.size()) throw PolyParseError("trailing comma", src_pos.back());
    }
    // Keep explicit trailing zeros out; the canonical form has a nonzero lead.
    return PolynomialZ(std::move(coeffs));
}

inline std::string print_poly(const PolynomialZ& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        if (k) out += ",";
        out += format_complex(p.coeffs()[k]);
    }
    return out;
}

}  // namespace powergen
