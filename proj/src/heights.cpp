#include "siegel/heights.hpp"
#include "siegel/errors.hpp"
#include "siegel/series.hpp"

#include <mpfr.h>

#include <algorithm>
#include <complex>
#include <vector>

namespace siegel {

namespace {

// sqrt enclosures for nonnegative rationals
mpq_class sqrt_directed(const mpq_class& x, unsigned prec, mpfr_rnd_t rnd) {
    if (x < 0) throw Error("sqrt of negative rational");
    mpfr_t t;
    mpfr_init2(t, prec);
    mpfr_set_q(t, x.get_mpq_t(), rnd);
    mpfr_sqrt(t, t, rnd);
    mpz_class mant;
    mpq_class r = 0;
    if (!mpfr_zero_p(t)) {
        mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), t);
        r = mpq_class(mant);
        mpz_class sh;
        mpz_mul_2exp(sh.get_mpz_t(), mpz_class(1).get_mpz_t(),
                     static_cast<mp_bitcnt_t>(e >= 0 ? e : -e));
        if (e >= 0)
            r *= mpq_class(sh);
        else
            r /= mpq_class(sh);
    }
    mpfr_clear(t);
    return r;
}

mpq_class sqrt_up(const mpq_class& x) { return sqrt_directed(x, 160, MPFR_RNDU); }
mpq_class sqrt_down(const mpq_class& x) {
    mpq_class r = sqrt_directed(x, 160, MPFR_RNDD);
    return r < 0 ? mpq_class(0) : r;
}

struct QC {
    mpq_class re, im;
};

QC qc_mul(const QC& a, const QC& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
QC qc_sub(const QC& a, const QC& b) { return {a.re - b.re, a.im - b.im}; }
mpq_class qc_norm2(const QC& a) { return a.re * a.re + a.im * a.im; }
QC qc_div(const QC& a, const QC& b) {
    mpq_class n = qc_norm2(b);
    QC conj{b.re, -b.im};
    QC t = qc_mul(a, conj);
    return {t.re / n, t.im / n};
}

QC qc_eval(const IntPoly& f, const QC& z) {
    QC r{mpq_class(0), mpq_class(0)};
    for (auto it = f.rbegin(); it != f.rend(); ++it) {
        r = qc_mul(r, z);
        r.re += mpq_class(*it);
    }
    return r;
}

// round a rational to `bits` fractional bits, keeping certificates exact
mpq_class round_dyadic(const mpq_class& x, unsigned bits) {
    mpz_class sh;
    mpz_mul_2exp(sh.get_mpz_t(), mpz_class(1).get_mpz_t(), bits);
    mpq_class scaled = x * mpq_class(sh);
    mpz_class n = scaled.get_num() / scaled.get_den(); // truncation is fine here
    return mpq_class(n) / mpq_class(sh);
}

// Durand-Kerner iteration in double precision for initial approximations.
std::vector<std::complex<double>> initial_roots(const IntPoly& f) {
    const int n = ip_degree(f);
    std::vector<std::complex<double>> a(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        double v = f[static_cast<size_t>(i)].get_d();
        if (!std::isfinite(v)) throw RootIsolationFailure("coefficient exceeds double range");
        a[static_cast<size_t>(i)] = v;
    }
    auto eval = [&](std::complex<double> z) {
        std::complex<double> r = 0;
        for (int i = n; i >= 0; --i) r = r * z + a[static_cast<size_t>(i)];
        return r;
    };
    std::vector<std::complex<double>> z(static_cast<size_t>(n));
    std::complex<double> seed(0.4, 0.9);
    z[0] = seed;
    for (int k = 1; k < n; ++k) z[static_cast<size_t>(k)] = z[static_cast<size_t>(k - 1)] * seed;
    for (int iter = 0; iter < 2000; ++iter) {
        double move = 0;
        for (int k = 0; k < n; ++k) {
            std::complex<double> num = eval(z[static_cast<size_t>(k)]) / a[static_cast<size_t>(n)];
            std::complex<double> den = 1;
            for (int m = 0; m < n; ++m)
                if (m != k) den *= (z[static_cast<size_t>(k)] - z[static_cast<size_t>(m)]);
            std::complex<double> delta = num / den;
            z[static_cast<size_t>(k)] -= delta;
            move = std::max(move, std::abs(delta));
        }
        if (move < 1e-14) break;
    }
    return z;
}

struct RootDisk {
    QC center;
    mpq_class rad_up; // certified upper bound on the inclusion radius
};

// Certified disks around approximations: each disk of radius
// n*|f(z)/f'(z)| contains a root; pairwise disjoint disks isolate them.
bool certify(const IntPoly& f, const std::vector<QC>& centers, std::vector<RootDisk>& out) {
    const int n = ip_degree(f);
    const IntPoly fp = ip_derivative(f);
    out.clear();
    for (const auto& z : centers) {
        QC fz = qc_eval(f, z);
        QC fpz = qc_eval(fp, z);
        mpq_class d2 = qc_norm2(fpz);
        if (d2 == 0) return false;
        mpq_class rad2 = mpq_class(n) * n * qc_norm2(fz) / d2;
        out.push_back(RootDisk{z, sqrt_up(rad2)});
    }
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j) {
            mpq_class dist2 = qc_norm2(qc_sub(out[i].center, out[j].center));
            mpq_class rsum = out[i].rad_up + out[j].rad_up;
            if (dist2 <= rsum * rsum) return false;
        }
    return true;
}

void newton_refine(const IntPoly& f, std::vector<QC>& centers, unsigned bits, int iters) {
    const IntPoly fp = ip_derivative(f);
    for (auto& z : centers) {
        for (int i = 0; i < iters; ++i) {
            QC fpz = qc_eval(fp, z);
            if (qc_norm2(fpz) == 0) break;
            QC step = qc_div(qc_eval(f, z), fpz);
            z = qc_sub(z, step);
            z.re = round_dyadic(z.re, bits);
            z.im = round_dyadic(z.im, bits);
        }
    }
}

} // namespace

AlgebraicNumber make_algebraic_number(const IntPoly& f0) {
    IntPoly f = ip_primitive_part(ip_normalize(f0));
    if (ip_degree(f) < 1) throw Error("algebraic number: polynomial must be nonconstant");
    certify_irreducible(f);
    return AlgebraicNumber{std::move(f)};
}

LogMagnitude height_rational(const mpz_class& a, const mpz_class& b) {
    if (b == 0) throw ZeroDenominator("height of a/0");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (g > 1) throw Error("height_rational: a/b must be in lowest terms");
    mpz_class m = std::max(abs(a), abs(b));
    if (m == 1) return lm_exact(0);
    return ln_interval(mpq_class(m), 256);
}

LogMagnitude height_rational(const mpq_class& x) {
    return height_rational(x.get_num(), x.get_den());
}

LogMagnitude height_algebraic(const AlgebraicNumber& alpha, const mpq_class& tol) {
    if (tol <= 0) throw Error("height_algebraic: tolerance must be positive");
    const IntPoly& f = alpha.minpoly;
    const int n = ip_degree(f);
    if (n == 1) {
        // root -c0/c1, already in lowest terms (content 1)
        mpz_class a = -f[0], b = f[1];
        mpz_class m = std::max(abs(a), abs(b));
        if (m == 1) return lm_exact(0);
        for (unsigned prec = 64;; prec *= 2) {
            LogMagnitude h = ln_interval(mpq_class(m), prec);
            if (h.width() <= tol || prec >= 1u << 14) return h;
        }
    }

    auto approx = initial_roots(f);
    std::vector<QC> centers;
    centers.reserve(approx.size());
    for (const auto& z : approx)
        centers.push_back(QC{mpq_class(z.real()), mpq_class(z.imag())});

    const unsigned kPrecCap = 8192;
    for (unsigned bits = 192; bits <= kPrecCap; bits *= 2) {
        std::vector<RootDisk> disks;
        if (!certify(f, centers, disks)) {
            newton_refine(f, centers, bits, 4);
            continue;
        }
        LogMagnitude sum = lm_exact(0);
        unsigned lnprec = 192;
        for (const auto& d : disks) {
            mpq_class az2 = qc_norm2(d.center);
            mpq_class mlo = sqrt_down(az2) - d.rad_up;
            mpq_class mhi = sqrt_up(az2) + d.rad_up;
            mpq_class lo = (mlo > 1) ? ln_rational_down(mlo, lnprec) : mpq_class(0);
            mpq_class hi = (mhi > 1) ? ln_rational_up(mhi, lnprec) : mpq_class(0);
            sum = lm_add(sum, LogMagnitude{lo, hi});
        }
        mpz_class lc = abs(f.back());
        if (lc > 1) sum = lm_add(sum, ln_interval(mpq_class(lc), lnprec));
        LogMagnitude h = lm_scale(sum, mpq_class(1, n));
        if (h.lo < 0) h.lo = 0; // Mahler measure >= |lc| >= 1
        if (h.width() <= tol) return h;
        newton_refine(f, centers, bits, 4);
    }
    throw RootIsolationFailure("height enclosure did not reach tolerance at precision cap");
}

std::vector<CmValue> cm_j_invariants() {
    const long nterms = 64;
    Laurent j = j_expansion_laurent(nterms);
    const unsigned prec = 512;
    std::vector<CmValue> out;
    mpfr_t x, q, qp, term, acc, pi, sq;
    mpfr_inits2(prec, x, q, qp, term, acc, pi, sq, (mpfr_ptr)nullptr);
    for (long D = 3; D <= 163; ++D) {
        if (D % 4 != 0 && D % 4 != 3) continue;
        // q = exp(2 pi i tau) at the CM point: -e^{-pi sqrt(D)} when
        // D = 3 mod 4 (tau = (1+sqrt(-D))/2), +e^{-pi sqrt(D)} otherwise.
        mpfr_const_pi(pi, MPFR_RNDN);
        mpfr_sqrt_ui(sq, static_cast<unsigned long>(D), MPFR_RNDN);
        mpfr_mul(x, pi, sq, MPFR_RNDN);
        mpfr_neg(x, x, MPFR_RNDN);
        mpfr_exp(q, x, MPFR_RNDN);
        if (D % 4 == 3) mpfr_neg(q, q, MPFR_RNDN);
        // j(q) = sum a_n q^n, n = -1..nterms-1
        mpfr_set_zero(acc, 1);
        mpfr_ui_div(qp, 1, q, MPFR_RNDN);
        for (long nn = -1; nn < nterms; ++nn) {
            mpz_class a = j.coeff(nn);
            if (a != 0) {
                mpfr_mul_z(term, qp, a.get_mpz_t(), MPFR_RNDN);
                mpfr_add(acc, acc, term, MPFR_RNDN);
            }
            mpfr_mul(qp, qp, q, MPFR_RNDN);
        }
        mpfr_round(x, acc);
        mpfr_sub(term, acc, x, MPFR_RNDN);
        mpfr_abs(term, term, MPFR_RNDN);
        if (mpfr_cmp_d(term, 1e-9) < 0) {
            mpz_class z;
            mpfr_get_z(z.get_mpz_t(), x, MPFR_RNDN);
            out.push_back(CmValue{-D, z});
        }
    }
    mpfr_clears(x, q, qp, term, acc, pi, sq, (mpfr_ptr)nullptr);
    return out;
}

PointBoundReport verify_point_bound(long p, const mpq_class& j0, const PlaceSet& places,
                                    const mpz_class& C_const, unsigned prec_start,
                                    unsigned prec_cap) {
    (void)C_const; // the simplified bound already absorbs C = 2^15
    require_admissible_prime(p);
    mpz_class den = j0.get_den();
    for (const auto& pl : places.finite_places) {
        while (den % pl.rational_prime == 0) den /= pl.rational_prime;
    }
    if (den > 1)
        throw NotAnSInteger("denominator of j0 has a prime outside S");

    PointBoundReport rep;
    rep.j0 = j0;
    rep.height = height_rational(j0);
    for (unsigned prec = prec_start;; prec *= 2) {
        rep.precision_bits = prec;
        rep.bound = log_main_simplified(p, places.field.degree, places.s, abs(places.field.disc),
                                        places.ell, places.finite_norms(), prec);
        rep.verdict = lm_leq_certified(rep.height, rep.bound);
        if (rep.verdict != Tri::Unknown || prec >= prec_cap) return rep;
    }
}

} // namespace siegel
