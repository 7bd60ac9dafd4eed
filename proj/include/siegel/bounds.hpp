#pragma once

#include "siegel/logmag.hpp"

#include <vector>

namespace siegel {

struct BoundInput {
    long p = 0;                        // prime level for the X0(p) path
    long d = 1;                        // [K:Q]
    mpz_class absD = 1;                // |D|
    long s = 1;                        // |S|
    mpz_class ell = 1;                 // largest rational prime under S (1 if none)
    std::vector<mpz_class> finite_norms;
    mpz_class C_const = mpz_class(1) << 15;
};

struct BoundBreakdown {
    LogMagnitude log_delta0;             // Delta_0(2p) for the base field
    LogMagnitude log_Dstar;
    LogMagnitude log_delta_p;
    LogMagnitude log_delta0_tilde_bound;
    LogMagnitude log_C_KS;
    LogMagnitude log_precise;
    LogMagnitude log_simplified;
    Tri tilde_matches_delta_p = Tri::Unknown;    // (a) sanity equality
    Tri precise_le_simplified = Tri::Unknown;    // (b)
    Tri dstar_ge_dedekind = Tri::Unknown;        // (c)
    unsigned precision_bits = 0;
};

// ln of the sum of logarithms of norms: ln( prod_v ln N(v) ), i.e.
// sum_v ln ln N(v). Empty product -> exact 0.
LogMagnitude log_norm_product(const std::vector<mpz_class>& norms, unsigned prec);

// ln Delta_0(N) with |D| and the norm product supplied as log enclosures;
// used both for the standard path and for the Gamma-tilde surrogate.
LogMagnitude log_delta0_core(long N, long d, const LogMagnitude& log_absD,
                             const LogMagnitude& log_norm_prod, unsigned prec);

LogMagnitude log_delta0(long N, long d, const mpz_class& absD,
                        const std::vector<mpz_class>& finite_norms, unsigned prec);

// M = N when N has two distinct prime factors, 3N for powers of 2,
// 2N for powers of an odd prime.
long aux_level_M(long N);

// Height bound for a >=3-cusp congruence subgroup of level N, with the
// explicit constant C absorbed into the leading factor.
LogMagnitude log_composite_bound(long N, long d, long s, const mpz_class& absD, const mpz_class& ell,
                           const std::vector<mpz_class>& finite_norms, const mpz_class& C_const,
                           unsigned prec);

// Same, with the level already adjusted to M and ln Delta_0(M) precomputed.
LogMagnitude log_composite_bound_given_delta0(long M, long d, long s, const mpz_class& ell,
                                        const mpz_class& C_const, const LogMagnitude& log_d0,
                                        unsigned prec);

// degL^2 * sum_{q in T} ln q.
LogMagnitude log_dedekind_bound(const std::vector<mpz_class>& T, long degL, unsigned prec);

// ((p-1)/2, d^2 (p-1)^3 / 8 * ln p).
std::pair<long, LogMagnitude> aux_extension_bounds(long p, long d, unsigned prec);

LogMagnitude log_Dstar(long p, long d, const mpz_class& absD, unsigned prec);

LogMagnitude log_delta_p(long p, long d, const mpz_class& absD, long s,
                         const std::vector<mpz_class>& finite_norms, unsigned prec);

LogMagnitude log_delta0_tilde_bound(long p, long d, long s, const mpz_class& absD,
                                    const std::vector<mpz_class>& finite_norms, unsigned prec);

LogMagnitude log_main_precise(long p, long d, long s, const mpz_class& absD, const mpz_class& ell,
                              const std::vector<mpz_class>& finite_norms, const mpz_class& C_const,
                              unsigned prec);

LogMagnitude log_C_KS(long d, long s, const mpz_class& absD, const mpz_class& ell,
                      const std::vector<mpz_class>& finite_norms, unsigned prec);

LogMagnitude log_main_simplified(long p, long d, long s, const mpz_class& absD,
                                 const mpz_class& ell, const std::vector<mpz_class>& finite_norms,
                                 unsigned prec);

// Evaluates every intermediate and certifies the inequality chain,
// doubling precision (up to prec_cap) while any verdict is Unknown.
BoundBreakdown chain_check(const BoundInput& in, unsigned prec_start = 256,
                           unsigned prec_cap = 4096);

// Primes <= x in increasing order.
std::vector<mpz_class> primes_up_to(long x);

bool is_excluded_prime(long p);
void require_admissible_prime(long p);

} // namespace siegel
