#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace rcbell {

/// Exact rational scalar used by every construction and by the LP solver.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Canonical text form: "num" when the denominator is 1, else "num/den".
inline std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "num" or "num/den". Throws std::invalid_argument on malformed input
/// or a zero denominator.
inline Rational rational_from_string(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("malformed rational '" + s + "': " + e.what());
    }
}

/// Best rational approximation of v with denominator <= den_cap (continued
/// fractions). Returns nullopt when the residual exceeds tol.
inline std::optional<Rational> rationalize(double v, std::int64_t den_cap = 1000000,
                                           double tol = 1e-9) {
    if (!std::isfinite(v)) return std::nullopt;
    const bool neg = v < 0;
    double x = neg ? -v : v;
    // Convergents p/q of the continued fraction of x.
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(frac);
        if (fl > 9e17) break;
        const auto a = static_cast<std::int64_t>(fl);
        if (q0 > (den_cap - q1 * (a ? a : 1)) && q1 != 0) {
            // Next convergent would exceed the cap; take the best semiconvergent.
            const std::int64_t k = (den_cap - q0) / q1;
            const std::int64_t pc = p0 + k * p1, qc = q0 + k * q1;
            const double e_conv = std::abs(x - static_cast<double>(p1) / static_cast<double>(q1));
            const double e_semi = std::abs(x - static_cast<double>(pc) / static_cast<double>(qc));
            if (qc > 0 && e_semi < e_conv) { p1 = pc; q1 = qc; }
            break;
        }
        const std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > den_cap) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double rem = frac - fl;
        if (rem < 1e-18) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) return std::nullopt;
    Rational r(p1, q1);
    if (neg) r = -r;
    if (std::abs(to_double(r) - v) > tol) return std::nullopt;
    return r;
}

}  // namespace rcbell
