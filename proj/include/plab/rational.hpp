#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace plab {

// Exact rational scalar for the "exact" arithmetic mode. Expression templates
// are disabled so arithmetic yields plain values and the type deduces cleanly
// through the templated kernels.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline double to_double(const Rat& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rat> {
    static constexpr bool exact = true;
    static constexpr const char* mode_name = "exact";
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr const char* mode_name = "numeric";
};

// "num/den" with the "/den" part omitted for integers.
inline std::string rat_str(const Rat& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) s += "/" + denominator(x).str();
    return s;
}

// Accepts "num/den", plain integers, and finite decimals ("0.25" == 1/4).
inline Rat rat_parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        return Rat(num) / Rat(den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rat(BigInt(text));
    std::string head = text.substr(0, dot);
    std::string tail = text.substr(dot + 1);
    if (tail.empty()) return Rat(BigInt(head));
    bool negative = !head.empty() && head[0] == '-';
    if (head == "-" || head.empty()) head = "0";
    BigInt scale = 1;
    for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
    BigInt whole(head);
    BigInt frac(tail);
    BigInt num = whole * scale + (negative ? -frac : frac);
    return Rat(num) / Rat(scale);
}

}  // namespace plab
