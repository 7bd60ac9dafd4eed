#include "siegel/series.hpp"
#include "siegel/errors.hpp"

#include <algorithm>

namespace siegel {

Laurent ls_trim(Laurent a) {
    size_t lead_zeros = 0;
    while (lead_zeros < a.c.size() && a.c[lead_zeros] == 0) ++lead_zeros;
    if (lead_zeros > 0) {
        a.c.erase(a.c.begin(), a.c.begin() + static_cast<long>(lead_zeros));
        a.lead += static_cast<long>(lead_zeros);
    }
    long maxlen = a.prec - a.lead;
    if (maxlen < 0) maxlen = 0;
    if (static_cast<long>(a.c.size()) > maxlen) a.c.resize(static_cast<size_t>(maxlen));
    return a;
}

Laurent ls_add(const Laurent& a, const Laurent& b) {
    Laurent r;
    r.lead = std::min(a.lead, b.lead);
    r.prec = std::min(a.prec, b.prec);
    r.c.assign(static_cast<size_t>(std::max<long>(0, r.prec - r.lead)), mpz_class(0));
    for (long n = r.lead; n < r.prec; ++n)
        r.c[static_cast<size_t>(n - r.lead)] = a.coeff(n) + b.coeff(n);
    return ls_trim(std::move(r));
}

Laurent ls_sub(const Laurent& a, const Laurent& b) {
    Laurent nb = b;
    for (auto& x : nb.c) x = -x;
    return ls_add(a, nb);
}

Laurent ls_mul(const Laurent& a, const Laurent& b) {
    Laurent r;
    r.lead = a.lead + b.lead;
    // product exponent n is complete when every split n = i + j has both
    // factors inside their validity windows
    r.prec = std::min(a.prec + b.lead, b.prec + a.lead);
    long len = std::max<long>(0, r.prec - r.lead);
    r.c.assign(static_cast<size_t>(len), mpz_class(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        long ea = a.lead + static_cast<long>(i);
        for (size_t j = 0; j < b.c.size(); ++j) {
            long e = ea + b.lead + static_cast<long>(j);
            if (e - r.lead >= len) break;
            if (b.c[j] != 0) r.c[static_cast<size_t>(e - r.lead)] += a.c[i] * b.c[j];
        }
    }
    return ls_trim(std::move(r));
}

Laurent ls_pow(const Laurent& a, long e) {
    if (e < 0) throw Error("ls_pow: negative exponent");
    Laurent r;
    r.lead = 0;
    r.prec = a.prec - a.lead; // refined by multiplications below
    r.c = {mpz_class(1)};
    if (e == 0) {
        r.prec = a.prec;
        return r;
    }
    Laurent base = a;
    bool started = false;
    while (e > 0) {
        if (e & 1) {
            r = started ? ls_mul(r, base) : base;
            started = true;
        }
        e >>= 1;
        if (e > 0) base = ls_mul(base, base);
    }
    return r;
}

Laurent ls_inverse(const Laurent& a) {
    if (a.c.empty() || (a.c[0] != 1 && a.c[0] != -1))
        throw Error("ls_inverse: lowest coefficient must be a unit");
    const long n = a.prec - a.lead;
    if (n <= 0) throw Error("ls_inverse: empty validity window");
    Laurent r;
    r.lead = -a.lead;
    r.prec = r.lead + n;
    r.c.assign(static_cast<size_t>(n), mpz_class(0));
    const mpz_class inv0 = a.c[0]; // +-1 is self-inverse
    r.c[0] = inv0;
    for (long k = 1; k < n; ++k) {
        mpz_class acc = 0;
        long jmax = std::min<long>(k, static_cast<long>(a.c.size()) - 1);
        for (long j = 1; j <= jmax; ++j) acc += a.c[static_cast<size_t>(j)] * r.c[static_cast<size_t>(k - j)];
        r.c[static_cast<size_t>(k)] = -inv0 * acc;
    }
    return r;
}

Laurent ls_stretch(const Laurent& a, long k) {
    if (k < 1) throw Error("ls_stretch: k must be positive");
    Laurent r;
    r.lead = a.lead * k;
    r.prec = a.prec * k - (k - 1); // exponents nk with n < a.prec
    r.c.assign(a.c.size() * static_cast<size_t>(k) - static_cast<size_t>(k - 1), mpz_class(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i * static_cast<size_t>(k)] = a.c[i];
    return ls_trim(std::move(r));
}

bool ls_is_zero_through(const Laurent& a, long order) {
    for (long n = a.lead; n <= order && n < a.prec; ++n)
        if (a.coeff(n) != 0) return false;
    return true;
}

namespace {

// Eisenstein series E4 = 1 + 240 sum sigma_3(n) q^n.
Laurent eisenstein4(long order) {
    Laurent e;
    e.lead = 0;
    e.prec = order;
    e.c.assign(static_cast<size_t>(order), mpz_class(0));
    e.c[0] = 1;
    for (long n = 1; n < order; ++n) {
        mpz_class s3 = 0;
        for (long d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            mpz_class d3 = mpz_class(d) * d * d;
            s3 += d3;
            long e2 = n / d;
            if (e2 != d) s3 += mpz_class(e2) * e2 * e2;
        }
        e.c[static_cast<size_t>(n)] = 240 * s3;
    }
    return e;
}

// Euler product prod (1-q^n) via the pentagonal number theorem.
Laurent euler_product(long order) {
    Laurent e;
    e.lead = 0;
    e.prec = order;
    e.c.assign(static_cast<size_t>(order), mpz_class(0));
    for (long k = 0;; ++k) {
        long g1 = k * (3 * k - 1) / 2;
        long g2 = k * (3 * k + 1) / 2;
        if (g1 >= order && g2 >= order) break;
        mpz_class sign = (k % 2 == 0) ? 1 : -1;
        if (g1 < order) e.c[static_cast<size_t>(g1)] += sign;
        if (g2 < order && k > 0) e.c[static_cast<size_t>(g2)] += sign;
    }
    return e;
}

} // namespace

Laurent j_expansion_laurent(long order) {
    if (order < 1) throw Error("j_expansion: order must be >= 1");
    const long n = order + 1; // power-series length for q*j
    Laurent e4 = eisenstein4(n);
    Laurent disc_over_q = ls_pow(euler_product(n), 24);
    Laurent qj = ls_mul(ls_pow(e4, 3), ls_inverse(disc_over_q));
    // shift: j = (q*j)/q
    qj.lead -= 1;
    qj.prec -= 1;
    return qj;
}

std::vector<mpz_class> j_expansion(long order) {
    Laurent j = j_expansion_laurent(order);
    std::vector<mpz_class> out(static_cast<size_t>(order));
    for (long n = 0; n < order; ++n) out[static_cast<size_t>(n)] = j.coeff(n - 1);
    return out;
}

} // namespace siegel
