#pragma once

#include "siegel/bounds.hpp"
#include "siegel/intpoly.hpp"
#include "siegel/logmag.hpp"
#include "siegel/modpoly.hpp"
#include "siegel/numfield.hpp"

#include <vector>

namespace siegel {

// Algebraic number given by its primitive integer minimal polynomial
// (content 1, positive leading coefficient, irreducible).
struct AlgebraicNumber {
    IntPoly minpoly;
};

AlgebraicNumber make_algebraic_number(const IntPoly& f);

// ln max(|a|, |b|) for a/b in lowest terms.
LogMagnitude height_rational(const mpz_class& a, const mpz_class& b);
LogMagnitude height_rational(const mpq_class& x);

// Absolute logarithmic height via the Mahler measure: certified root
// enclosures refined until the interval width is at most tol.
LogMagnitude height_algebraic(const AlgebraicNumber& alpha, const mpq_class& tol);

struct CmValue {
    long disc;     // negative discriminant
    mpz_class j;   // rational (integer) j-invariant
};

// The class-number-one CM j-invariants, generated by high-precision
// evaluation of the j q-series at the CM points of each imaginary
// quadratic discriminant down to -163.
std::vector<CmValue> cm_j_invariants();

struct PointBoundReport {
    mpq_class j0;
    LogMagnitude height;
    LogMagnitude bound;       // log_main_simplified
    Tri verdict = Tri::Unknown;
    unsigned precision_bits = 0;
};

// Checks h(j0) against the X0(p) height bound for the given field/places.
// Throws NotAnSInteger when j0's denominator has a prime outside S.
PointBoundReport verify_point_bound(long p, const mpq_class& j0, const PlaceSet& places,
                                    const mpz_class& C_const = mpz_class(1) << 15,
                                    unsigned prec_start = 256, unsigned prec_cap = 4096);

} // namespace siegel
