#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>

#include "bsa/error.hpp"

namespace bsa {

// All coefficient arithmetic is exact. cpp_rational keeps values reduced
// with a positive denominator, which is exactly the canonical form the
// rest of the library relies on.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return den(q) == 1; }

/// Largest integer <= q.
inline Int floor_rat(const Rat& q) {
    Int n = num(q), d = den(q);
    Int t = n / d;
    if (n < 0 && t * d != n) --t;
    return t;
}

inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

/// true iff q is an integer >= 1.
inline bool is_positive_integer(const Rat& q) { return is_integer(q) && num(q) >= 1; }

inline std::string to_string(const Rat& q) {
    std::string s = num(q).str();
    if (!is_integer(q)) s += "/" + den(q).str();
    return s;
}

inline std::string to_string(const Int& n) { return n.str(); }

/// Parse "p" or "p/q". The fraction must already be in lowest terms with a
/// positive denominator; anything else (floats, "2/4", "1/-2") is rejected.
inline Rat parse_rat(const std::string& text) {
    auto bad = [&](const char* why) -> Rat {
        fail(errc::input_error, "invalid rational '" + text + "': " + why);
    };
    if (text.empty()) return bad("empty");
    auto is_int_token = [](const std::string& t) {
        std::size_t i = (t[0] == '-') ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    std::size_t slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_int_token(text)) return bad("not an integer");
        return Rat(Int(text));
    }
    std::string p = text.substr(0, slash), q = text.substr(slash + 1);
    if (p.empty() || q.empty() || !is_int_token(p) || !is_int_token(q)) return bad("malformed fraction");
    Int np(p), dq(q);
    if (dq <= 0) return bad("denominator must be positive");
    if (boost::multiprecision::gcd(boost::multiprecision::abs(np), dq) != 1)
        return bad("not in lowest terms");
    return Rat(np, dq);
}

} // namespace bsa
