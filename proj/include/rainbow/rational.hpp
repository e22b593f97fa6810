#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "errors.hpp"

namespace rainbow {

/// Exact rational used for delta and every threshold derived from it.
using Rational = boost::rational<std::int64_t>;

inline std::int64_t floor_of(const Rational& r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

inline std::int64_t ceil_of(const Rational& r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
    return q;
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Accepts "3", "-2", "1/6" or a finite decimal such as "0.25".
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { return Error(ErrorKind::parse, "not a rational number: '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();
    auto parse_int = [&](std::string_view s) -> std::int64_t {
        if (s.empty()) throw fail();
        std::size_t i = 0;
        bool negative = false;
        if (s[0] == '-' || s[0] == '+') {
            negative = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw fail();
        std::int64_t v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw fail();
            if (v > (INT64_MAX - 9) / 10) throw fail();
            v = v * 10 + (s[i] - '0');
        }
        return negative ? -v : v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::int64_t num = parse_int(text.substr(0, slash));
        std::int64_t den = parse_int(text.substr(slash + 1));
        if (den == 0) throw fail();
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 15) throw fail();
        bool negative = !whole.empty() && whole[0] == '-';
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole);
        std::int64_t f = parse_int(frac);
        if (f < 0) throw fail();
        std::int64_t magnitude = (w < 0 ? -w : w) * scale + f;
        return Rational(negative ? -magnitude : magnitude, scale);
    }
    return Rational(parse_int(text));
}

} // namespace rainbow
