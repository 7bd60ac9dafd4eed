#include "siegel/bounds.hpp"
#include "siegel/errors.hpp"
#include "siegel/numfield.hpp"

namespace siegel {

namespace {

bool prime_l(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

mpq_class q_of(long num, long den = 1) { return mpq_class(num, den); }

} // namespace

std::vector<mpz_class> primes_up_to(long x) {
    std::vector<mpz_class> out;
    for (long n = 2; n <= x; ++n)
        if (prime_l(n)) out.emplace_back(n);
    return out;
}

bool is_excluded_prime(long p) {
    return p == 2 || p == 3 || p == 5 || p == 7 || p == 13;
}

void require_admissible_prime(long p) {
    if (!prime_l(p)) throw ExcludedPrime("level must be prime");
    if (is_excluded_prime(p))
        throw ExcludedPrime("the X0(p) bound excludes p in {2,3,5,7,13}");
}

LogMagnitude log_norm_product(const std::vector<mpz_class>& norms, unsigned prec) {
    LogMagnitude acc = lm_exact(0);
    for (const auto& n : norms) {
        if (n < 2) throw Error("finite place norm must be >= 2");
        acc = lm_add(acc, lm_ln_of(ln_interval(mpq_class(n), prec), prec));
    }
    return acc;
}

LogMagnitude log_delta0_core(long N, long d, const LogMagnitude& log_absD,
                             const LogMagnitude& log_norm_prod, unsigned prec) {
    if (N < 1 || d < 1) throw Error("log_delta0: N and d must be positive");
    mpz_class phi = euler_phi(mpz_class(N));
    mpq_class phi_q(phi);
    // ln(N^{dN} |D|^{phi(N)})
    LogMagnitude inner = lm_add(lm_scale(ln_interval(mpq_class(N), prec), q_of(d * N)),
                                lm_scale(log_absD, phi_q));
    if (inner.hi <= 0)
        throw DegenerateLogFactor("Delta_0 vanishes: log(N^{dN}|D|^{phi}) <= 0");
    LogMagnitude r = lm_scale(inner, q_of(1, 2));
    r = lm_add(r, lm_scale(lm_ln_of(inner, prec), q_of(d) * phi_q));
    r = lm_add(r, lm_scale(log_norm_prod, phi_q));
    return r;
}

LogMagnitude log_delta0(long N, long d, const mpz_class& absD,
                        const std::vector<mpz_class>& finite_norms, unsigned prec) {
    if (absD < 1) throw Error("log_delta0: |D| must be positive");
    return log_delta0_core(N, d, ln_interval(mpq_class(absD), prec),
                           log_norm_product(finite_norms, prec), prec);
}

long aux_level_M(long N) {
    if (N < 1) throw Error("aux_level_M: N must be positive");
    long m = N;
    long distinct = 0;
    long smallest = 0;
    for (long q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            ++distinct;
            if (smallest == 0) smallest = q;
            while (m % q == 0) m /= q;
        }
    }
    if (m > 1) {
        ++distinct;
        if (smallest == 0) smallest = m;
    }
    if (distinct >= 2) return N;
    if (smallest == 2) return 3 * N;
    return 2 * N; // power of an odd prime (N = 1 never reaches here; see below)
}

LogMagnitude log_composite_bound_given_delta0(long M, long d, long s, const mpz_class& ell,
                                        const mpz_class& C_const, const LogMagnitude& log_d0,
                                        unsigned prec) {
    if (d * M < 2) throw LogOfNonPositiveLog("log_composite_bound: dM must be >= 2");
    mpq_class M2(mpz_class(M) * M);
    // (C d s M^2)^{2sM}
    LogMagnitude r = lm_scale(ln_interval(mpq_class(C_const * d * s) * M2, prec), q_of(2 * s * M));
    // (log(dM))^{3sM}; ln(dM) < 1 is possible, handled by signed intervals
    r = lm_add(r, lm_scale(lm_ln_of(ln_interval(q_of(d * M), prec), prec), q_of(3 * s * M)));
    // ell^{dM}
    if (ell > 1) r = lm_add(r, lm_scale(ln_interval(mpq_class(ell), prec), q_of(d * M)));
    return lm_add(r, log_d0);
}

LogMagnitude log_composite_bound(long N, long d, long s, const mpz_class& absD, const mpz_class& ell,
                           const std::vector<mpz_class>& finite_norms, const mpz_class& C_const,
                           unsigned prec) {
    const long M = aux_level_M(N);
    return log_composite_bound_given_delta0(M, d, s, ell, C_const,
                                      log_delta0(M, d, absD, finite_norms, prec), prec);
}

LogMagnitude log_dedekind_bound(const std::vector<mpz_class>& T, long degL, unsigned prec) {
    if (degL < 1) throw Error("log_dedekind_bound: degree must be >= 1");
    LogMagnitude sum = lm_exact(0);
    for (const auto& p : T) sum = lm_add(sum, ln_interval(mpq_class(p), prec));
    return lm_scale(sum, mpq_class(mpz_class(degL) * degL));
}

std::pair<long, LogMagnitude> aux_extension_bounds(long p, long d, unsigned prec) {
    if (!prime_l(p) || p < 5) throw Error("aux_extension_bounds: p must be a prime >= 5");
    mpz_class pm1(p - 1);
    mpq_class expo(mpz_class(d) * d * pm1 * pm1 * pm1, mpz_class(8));
    expo.canonicalize();
    return {(p - 1) / 2, lm_scale(ln_interval(mpq_class(p), prec), expo)};
}

LogMagnitude log_Dstar(long p, long d, const mpz_class& absD, unsigned prec) {
    auto [reldeg, logp_term] = aux_extension_bounds(p, d, prec);
    LogMagnitude r = logp_term;
    if (absD > 1)
        r = lm_add(r, lm_scale(ln_interval(mpq_class(absD), prec), q_of(p - 1, 2)));
    return r;
}

LogMagnitude log_delta_p(long p, long d, const mpz_class& absD, long s,
                         const std::vector<mpz_class>& finite_norms, unsigned prec) {
    if (!prime_l(p) || p < 11) throw Error("log_delta_p: p must be a prime >= 11");
    (void)s;
    mpz_class pm1(p - 1);
    // ln((2p)^{dp(p-1)} (D*)^{p-1})
    LogMagnitude inner = lm_add(lm_scale(ln_interval(q_of(2 * p), prec), mpq_class(mpz_class(d) * p * pm1)),
                                lm_scale(log_Dstar(p, d, absD, prec), mpq_class(pm1)));
    mpq_class half_sq(pm1 * pm1, mpz_class(2));
    half_sq.canonicalize();
    LogMagnitude r = lm_scale(inner, q_of(1, 2));
    r = lm_add(r, lm_scale(lm_ln_of(inner, prec), q_of(d) * half_sq));
    r = lm_add(r, lm_scale(log_norm_product(finite_norms, prec), half_sq));
    return r;
}

LogMagnitude log_delta0_tilde_bound(long p, long d, long s, const mpz_class& absD,
                                    const std::vector<mpz_class>& finite_norms, unsigned prec) {
    mpz_class pm1(p - 1);
    mpq_class coeff(mpz_class(s) * pm1 * pm1, mpz_class(2));
    coeff.canonicalize();
    return lm_add(lm_scale(ln_interval(mpq_class(2), prec), coeff),
                  log_delta_p(p, d, absD, s, finite_norms, prec));
}

LogMagnitude log_main_precise(long p, long d, long s, const mpz_class& absD, const mpz_class& ell,
                              const std::vector<mpz_class>& finite_norms, const mpz_class& C_const,
                              unsigned prec) {
    require_admissible_prime(p);
    mpz_class pm1(p - 1);
    mpq_class two_pow(mpz_class(s) * pm1 * pm1, mpz_class(2));
    two_pow.canonicalize();
    LogMagnitude r = lm_scale(ln_interval(mpq_class(2), prec), two_pow);
    // (C d s (p-1)^2 p^2)^{2sp(p-1)}
    mpq_class base(C_const * d * s * pm1 * pm1 * p * p);
    r = lm_add(r, lm_scale(ln_interval(base, prec), mpq_class(mpz_class(2) * s * p * pm1)));
    // (log(dp(p-1)))^{3sp(p-1)}
    r = lm_add(r, lm_scale(lm_ln_of(ln_interval(mpq_class(mpz_class(d) * p * pm1), prec), prec),
                           mpq_class(mpz_class(3) * s * p * pm1)));
    // ell^{dp(p-1)}
    if (ell > 1)
        r = lm_add(r, lm_scale(ln_interval(mpq_class(ell), prec), mpq_class(mpz_class(d) * p * pm1)));
    return lm_add(r, log_delta_p(p, d, absD, s, finite_norms, prec));
}

LogMagnitude log_C_KS(long d, long s, const mpz_class& absD, const mpz_class& ell,
                      const std::vector<mpz_class>& finite_norms, unsigned prec) {
    if (d < 1 || s < 1 || absD < 1 || ell < 1) throw Error("log_C_KS: invalid inputs");
    LogMagnitude r = lm_scale(ln_interval(mpq_class(2), prec), q_of(31 * s));
    if (d > 1) r = lm_add(r, lm_scale(ln_interval(q_of(d), prec), q_of(9 * s)));
    if (s > 1) r = lm_add(r, lm_scale(ln_interval(q_of(s), prec), q_of(2 * s)));
    if (ell > 1) r = lm_add(r, lm_scale(ln_interval(mpq_class(ell), prec), q_of(d)));
    if (absD > 1) r = lm_add(r, ln_interval(mpq_class(absD), prec));
    // (log(|D|+1))^d; ln ln 2 < 0 when |D| = 1
    r = lm_add(r, lm_scale(lm_ln_of(ln_interval(mpq_class(absD + 1), prec), prec), q_of(d)));
    return lm_add(r, log_norm_product(finite_norms, prec));
}

LogMagnitude log_main_simplified(long p, long d, long s, const mpz_class& absD,
                                 const mpz_class& ell, const std::vector<mpz_class>& finite_norms,
                                 unsigned prec) {
    require_admissible_prime(p);
    mpz_class p2(mpz_class(p) * p);
    mpq_class coeff(mpz_class(9) * s * s * p2 * p2);
    LogMagnitude r = lm_scale(ln_interval(mpq_class(p), prec), coeff);
    return lm_add(r, lm_scale(log_C_KS(d, s, absD, ell, finite_norms, prec), mpq_class(p2)));
}

BoundBreakdown chain_check(const BoundInput& in, unsigned prec_start, unsigned prec_cap) {
    require_admissible_prime(in.p);
    BoundBreakdown bb;
    for (unsigned prec = prec_start;; prec *= 2) {
        bb.precision_bits = prec;
        bb.log_delta0 = log_delta0(2 * in.p, in.d, in.absD, in.finite_norms, prec);
        bb.log_Dstar = log_Dstar(in.p, in.d, in.absD, prec);
        bb.log_delta_p = log_delta_p(in.p, in.d, in.absD, in.s, in.finite_norms, prec);
        bb.log_delta0_tilde_bound =
            log_delta0_tilde_bound(in.p, in.d, in.s, in.absD, in.finite_norms, prec);
        bb.log_C_KS = log_C_KS(in.d, in.s, in.absD, in.ell, in.finite_norms, prec);
        bb.log_precise = log_main_precise(in.p, in.d, in.s, in.absD, in.ell, in.finite_norms,
                                          in.C_const, prec);
        bb.log_simplified =
            log_main_simplified(in.p, in.d, in.s, in.absD, in.ell, in.finite_norms, prec);

        // (a) the tilde bound is 2^{s(p-1)^2/2} Delta(p) by construction
        mpz_class pm1(in.p - 1);
        mpq_class coeff(mpz_class(in.s) * pm1 * pm1, mpz_class(2));
        coeff.canonicalize();
        LogMagnitude rhs = lm_add(lm_scale(ln_interval(mpq_class(2), prec), coeff), bb.log_delta_p);
        bb.tilde_matches_delta_p = (bb.log_delta0_tilde_bound.lo == rhs.lo &&
                                    bb.log_delta0_tilde_bound.hi == rhs.hi)
                                       ? Tri::True
                                       : Tri::Unknown;

        // (b) the simplified bound dominates the precise one
        bb.precise_le_simplified = lm_leq_certified(bb.log_precise, bb.log_simplified);

        // (c) D* dominates the ramification-based route with T = {q <= (p-1)/2} u {p}
        std::vector<mpz_class> T = primes_up_to((in.p - 1) / 2);
        T.emplace_back(in.p);
        long degL = in.d * (in.p - 1) / 2;
        LogMagnitude lhs = log_dedekind_bound(T, degL, prec);
        if (in.absD > 1)
            lhs = lm_add(lhs, lm_scale(ln_interval(mpq_class(in.absD), prec), q_of(in.p - 1, 2)));
        bb.dstar_ge_dedekind = lm_leq_certified(lhs, bb.log_Dstar);

        bool unknown = bb.tilde_matches_delta_p == Tri::Unknown ||
                       bb.precise_le_simplified == Tri::Unknown ||
                       bb.dstar_ge_dedekind == Tri::Unknown;
        if (!unknown || prec >= prec_cap) return bb;
    }
}

} // namespace siegel
