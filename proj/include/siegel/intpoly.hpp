#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <vector>

namespace siegel {

// Dense integer polynomial, coefficient of x^i at index i. Invariant:
// trailing zero coefficients stripped; the zero polynomial is {}.
using IntPoly = std::vector<mpz_class>;

IntPoly ip_normalize(IntPoly f);
int ip_degree(const IntPoly& f); // -1 for the zero polynomial
IntPoly ip_add(const IntPoly& a, const IntPoly& b);
IntPoly ip_sub(const IntPoly& a, const IntPoly& b);
IntPoly ip_mul(const IntPoly& a, const IntPoly& b);
IntPoly ip_derivative(const IntPoly& f);
mpz_class ip_content(const IntPoly& f);
IntPoly ip_primitive_part(const IntPoly& f);
mpz_class ip_eval_z(const IntPoly& f, const mpz_class& x);
mpq_class ip_eval_q(const IntPoly& f, const mpq_class& x);

// Resultant of two integer polynomials via fraction-free elimination of
// the Sylvester matrix.
mpz_class ip_resultant(const IntPoly& f, const IntPoly& g);

// (-1)^{n(n-1)/2} Res(f, f') / lc(f).
mpz_class ip_discriminant(const IntPoly& f);

// Number of distinct real roots (Sturm chain over the rationals).
int ip_count_real_roots(const IntPoly& f);

// Number of distinct real roots in the half-open interval (a, b].
int ip_count_real_roots_between(const IntPoly& f, const mpq_class& a, const mpq_class& b);

bool is_perfect_square(const mpz_class& n, mpz_class* root = nullptr);

// --- arithmetic in F_q[x], q an odd prime < 2^62 (q = 2 also supported) ---

struct ModPoly {
    uint64_t q = 0;
    std::vector<uint64_t> c; // coeff of x^i at index i, trailing zeros stripped
};

ModPoly mp_from_int_poly(const IntPoly& f, uint64_t q);
int mp_degree(const ModPoly& f);
ModPoly mp_mul(const ModPoly& a, const ModPoly& b);
ModPoly mp_rem(ModPoly a, const ModPoly& b);
ModPoly mp_gcd(ModPoly a, ModPoly b);
ModPoly mp_monic(ModPoly f);

struct ModFactor {
    ModPoly factor;   // monic irreducible
    int multiplicity;
};

// Full factorization of a nonzero polynomial over F_q (squarefree
// decomposition + distinct-degree + Cantor-Zassenhaus). Deterministically
// seeded; result sorted for reproducibility.
std::vector<ModFactor> mp_factor(const ModPoly& f);

// Dedekind's criterion: true iff Z[x]/(f) is maximal at q. f monic.
bool dedekind_q_maximal(const IntPoly& f, uint64_t q);

// true if f is irreducible mod q (requires q not dividing lc(f)).
bool mp_is_irreducible(const ModPoly& f);

} // namespace siegel
