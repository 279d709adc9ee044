#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace spb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Throws std::invalid_argument when a caller-supplied precondition fails.
inline void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

/// Throws std::logic_error when an internal arithmetic invariant fails.
/// Used for conditions that indicate a bug rather than bad input.
inline void ensure(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error(what);
}

/// Exact factorial.
inline Int factorial(unsigned n) {
    Int f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Exact binomial coefficient C(n, k) for integer n >= 0; zero when k > n.
inline Int binomial(const Int& n, unsigned k) {
    if (n < 0) throw std::invalid_argument("binomial: negative upper index");
    if (Int(k) > n) return 0;
    Int num = 1;
    Int den = 1;
    for (unsigned i = 1; i <= k; ++i) {
        num *= n - Int(i - 1);
        den *= i;
    }
    return num / den;
}

/// First `count` Bernoulli numbers B_0..B_{count-1} with B_1 = -1/2,
/// computed by the defining recurrence sum_{j<=m} C(m+1, j) B_j = 0.
inline std::vector<Rat> bernoulli_numbers(std::size_t count) {
    std::vector<Rat> b;
    b.reserve(count);
    for (std::size_t m = 0; m < count; ++m) {
        if (m == 0) {
            b.push_back(1);
            continue;
        }
        Rat acc = 0;
        for (std::size_t j = 0; j < m; ++j)
            acc += Rat(binomial(Int(m + 1), static_cast<unsigned>(j))) * b[j];
        b.push_back(-acc / Rat(Int(m + 1)));
    }
    return b;
}

/// Parses "123", "-4.75", or "22/7" into an exact rational.
/// Decimal inputs are converted exactly (6.283185 -> 6283185/1000000),
/// so a caller typing a truncated constant gets that literal value,
/// not a nearby binary float.
inline Rat parse_rational(const std::string& text) {
    auto digits_only = [](const std::string& s) {
        if (s.empty()) return false;
        for (char ch : s)
            if (ch < '0' || ch > '9') return false;
        return true;
    };
    std::string body = text;
    bool negative = false;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        negative = body[0] == '-';
        body = body.substr(1);
    }
    Rat value;
    auto slash = body.find('/');
    auto dot = body.find('.');
    if (slash != std::string::npos) {
        const std::string num = body.substr(0, slash);
        const std::string den = body.substr(slash + 1);
        require(digits_only(num) && digits_only(den),
                "parse_rational: malformed fraction '" + text + "'");
        const Int d(den);
        require(d != 0, "parse_rational: zero denominator in '" + text + "'");
        value = Rat(Int(num), d);
    } else if (dot != std::string::npos) {
        const std::string whole = body.substr(0, dot);
        const std::string frac = body.substr(dot + 1);
        require(digits_only(whole) && digits_only(frac),
                "parse_rational: malformed decimal '" + text + "'");
        Int scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        value = Rat(Int(whole) * scale + Int(frac), scale);
    } else {
        require(digits_only(body), "parse_rational: malformed number '" + text + "'");
        value = Rat(Int(body));
    }
    return negative ? -value : value;
}

/// Numerator of a rational as a decimal string (exact).
inline std::string num_str(const Rat& r) {
    return boost::multiprecision::numerator(r).str();
}

/// Denominator of a rational as a decimal string (exact, always positive).
inline std::string den_str(const Rat& r) {
    return boost::multiprecision::denominator(r).str();
}

}  // namespace spb
