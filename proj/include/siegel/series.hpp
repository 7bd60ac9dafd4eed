#pragma once

#include <gmpxx.h>
#include <vector>

namespace siegel {

// Truncated integer Laurent series in q: c[i] is the coefficient of
// q^{lead+i}; coefficients are valid for all exponents < prec.
struct Laurent {
    long lead = 0;
    long prec = 0;
    std::vector<mpz_class> c;

    mpz_class coeff(long n) const {
        if (n < lead || n - lead >= static_cast<long>(c.size())) return 0;
        return c[static_cast<size_t>(n - lead)];
    }
    long valid_to() const { return prec; } // exponents < prec are trustworthy
};

Laurent ls_trim(Laurent a);
Laurent ls_add(const Laurent& a, const Laurent& b);
Laurent ls_sub(const Laurent& a, const Laurent& b);
Laurent ls_mul(const Laurent& a, const Laurent& b);
Laurent ls_pow(const Laurent& a, long e);
// Multiplicative inverse; requires the lowest coefficient to be a unit.
Laurent ls_inverse(const Laurent& a);
// Substitute q -> q^k.
Laurent ls_stretch(const Laurent& a, long k);
bool ls_is_zero_through(const Laurent& a, long order);

// j-invariant q-expansion with exponents -1 .. order-1 inclusive
// (E4^3 / Delta; coefficients 1, 744, 196884, ...).
Laurent j_expansion_laurent(long order);

// q*j(q) as a plain power series: coefficients of q^0 .. q^{order-1}.
std::vector<mpz_class> j_expansion(long order);

} // namespace siegel
