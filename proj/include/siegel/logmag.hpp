#pragma once

#include <gmpxx.h>
#include <string>

namespace siegel {

// Certified enclosure [lo, hi] of the natural logarithm of a positive real.
// All bound arithmetic works on these; the underlying quantities are never
// materialized.
struct LogMagnitude {
    mpq_class lo;
    mpq_class hi;

    mpq_class width() const { return hi - lo; }
};

enum class Tri { True, False, Unknown };

// Singleton interval [r, r] for an exactly-known logarithm.
LogMagnitude lm_exact(const mpq_class& r);

// Enclosure of ln(q) with width <= 2^(1-precision) * max(1, |ln q|).
// Throws NonPositiveArgument for q <= 0. precision >= 8.
LogMagnitude ln_interval(const mpq_class& q, unsigned precision);

// ln(x*y): sum of logarithms.
LogMagnitude lm_add(const LogMagnitude& a, const LogMagnitude& b);

// ln(x^k) for exact rational k.
LogMagnitude lm_scale(const LogMagnitude& a, const mpq_class& k);

// ln(ln x) given an enclosure of ln x. Requires a.lo > 0; throws
// LogOfNonPositiveLog when a.hi <= 0 and IndeterminateSign when the
// interval straddles 0.
LogMagnitude lm_ln_of(const LogMagnitude& a, unsigned precision);

// True iff a.hi <= b.lo, False iff b.hi < a.lo, Unknown on overlap.
Tri lm_leq_certified(const LogMagnitude& a, const LogMagnitude& b);

// Directed-rounding ln of a single rational endpoint.
mpq_class ln_rational_down(const mpq_class& q, unsigned precision);
mpq_class ln_rational_up(const mpq_class& q, unsigned precision);

// 15-significant-digit decimal rendering of an exact rational.
std::string rational_to_decimal(const mpq_class& q, int sig_digits = 15);

const char* tri_name(Tri t);

} // namespace siegel
