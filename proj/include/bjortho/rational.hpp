#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bjortho {

// Exact rational scalar. GMP keeps values in lowest terms with a positive
// denominator, so equality is plain value equality and hashing/ordering are
// safe. No floating point enters any decision path; to_double exists only
// for display annotations.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline std::string to_string(const Rational& q) {
    return q.str();
}

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

// Accepts "p", "-p", "p/q" with optional sign on p; q must be positive.
// The two-integer constructor canonicalizes (the string one does not).
inline std::optional<Rational> try_parse_rational(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;
    auto is_int = [](std::string_view s, bool allow_sign) {
        if (s.empty()) return false;
        size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            if (!is_int(text, true)) return std::nullopt;
            return Rational(Integer(std::string(text)), Integer(1));
        }
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!is_int(num, true) || !is_int(den, false)) return std::nullopt;
        Integer d{std::string(den)};
        if (d == 0) return std::nullopt;
        return Rational(Integer(std::string(num)), d);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline Rational parse_rational(std::string_view text) {
    auto q = try_parse_rational(text);
    if (!q) throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    return *q;
}

inline int sign(const Rational& q) {
    return q.sign();
}

inline Rational abs(const Rational& q) {
    return q < 0 ? Rational(-q) : q;
}

} // namespace bjortho
