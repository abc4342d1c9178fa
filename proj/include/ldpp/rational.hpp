#pragma once

// Exact rational scalars. Every numeric quantity in this library is a
// Rational; no floating point is used anywhere.

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ldpp {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Canonical "p/q" rendering ("p" when the denominator is 1).
inline std::string to_string(const Rational& r) { return r.str(); }

/// Parses "p" or "p/q" with an optional leading sign on p and a positive
/// integer q. Values need not be in lowest terms; the result always is.
/// Throws std::invalid_argument on any other input (including q = 0).
inline Rational parse_rational(std::string_view text) {
    const auto fail = [&text]() -> Rational {
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    };
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) return fail();

    const auto all_digits = [](std::string_view v) {
        if (v.empty()) return false;
        for (char c : v)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };

    std::string_view num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '+' || num_digits.front() == '-'))
        num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den)) return fail();

    if (num.front() == '+') num.remove_prefix(1);  // mpz rejects a leading '+'
    Integer p{std::string(num)};
    Integer q{std::string(den)};
    if (q == 0) return fail();
    return Rational(p, q);  // the (p, q) constructor canonicalises
}

}  // namespace ldpp
