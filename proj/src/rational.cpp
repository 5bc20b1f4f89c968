#include "ectf/rational.hpp"

#include <stdexcept>

namespace ectf {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("parse_rational: malformed decimal");
    BigInt num(digits);
    BigInt den = 1;
    for (size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Rational(num, den);
}

std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

}  // namespace ectf
