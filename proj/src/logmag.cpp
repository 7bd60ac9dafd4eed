#include "siegel/logmag.hpp"
#include "siegel/errors.hpp"

#include <mpfr.h>

namespace siegel {

namespace {

// Exact rational value of an mpfr number (mpfr floats are dyadic).
mpq_class mpfr_to_mpq(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return mpq_class(0);
    mpz_class mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    mpq_class r(mant);
    mpq_class two(2);
    if (e >= 0) {
        mpz_class sh;
        mpz_mul_2exp(sh.get_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        r *= mpq_class(sh);
    } else {
        mpz_class sh;
        mpz_mul_2exp(sh.get_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
        r /= mpq_class(sh);
    }
    return r;
}

mpq_class ln_directed(const mpq_class& q, unsigned precision, mpfr_rnd_t rnd) {
    if (q <= 0) throw NonPositiveArgument("ln of non-positive rational");
    mpfr_t x;
    mpfr_init2(x, precision + 8);
    mpfr_set_q(x, q.get_mpq_t(), rnd);
    mpfr_log(x, x, rnd);
    mpq_class r = mpfr_to_mpq(x);
    mpfr_clear(x);
    return r;
}

} // namespace

LogMagnitude lm_exact(const mpq_class& r) { return LogMagnitude{r, r}; }

mpq_class ln_rational_down(const mpq_class& q, unsigned precision) {
    return ln_directed(q, precision, MPFR_RNDD);
}

mpq_class ln_rational_up(const mpq_class& q, unsigned precision) {
    return ln_directed(q, precision, MPFR_RNDU);
}

LogMagnitude ln_interval(const mpq_class& q, unsigned precision) {
    if (q <= 0) throw NonPositiveArgument("ln_interval: argument must be positive");
    if (q == 1) return lm_exact(mpq_class(0));
    return LogMagnitude{ln_rational_down(q, precision), ln_rational_up(q, precision)};
}

LogMagnitude lm_add(const LogMagnitude& a, const LogMagnitude& b) {
    return LogMagnitude{a.lo + b.lo, a.hi + b.hi};
}

LogMagnitude lm_scale(const LogMagnitude& a, const mpq_class& k) {
    if (k >= 0) return LogMagnitude{a.lo * k, a.hi * k};
    return LogMagnitude{a.hi * k, a.lo * k};
}

LogMagnitude lm_ln_of(const LogMagnitude& a, unsigned precision) {
    if (a.hi <= 0) throw LogOfNonPositiveLog("lm_ln_of: enclosed logarithm is non-positive");
    if (a.lo <= 0) throw IndeterminateSign("lm_ln_of: enclosure straddles 0; raise precision");
    return LogMagnitude{ln_rational_down(a.lo, precision), ln_rational_up(a.hi, precision)};
}

Tri lm_leq_certified(const LogMagnitude& a, const LogMagnitude& b) {
    if (a.hi <= b.lo) return Tri::True;
    if (b.hi < a.lo) return Tri::False;
    return Tri::Unknown;
}

std::string rational_to_decimal(const mpq_class& q, int sig_digits) {
    mpfr_t x;
    mpfr_init2(x, 128);
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
    char buf[96];
    mpfr_snprintf(buf, sizeof(buf), "%.*Rg", sig_digits, x);
    mpfr_clear(x);
    return std::string(buf);
}

const char* tri_name(Tri t) {
    switch (t) {
        case Tri::True: return "True";
        case Tri::False: return "False";
        default: return "Unknown";
    }
}

} // namespace siegel
