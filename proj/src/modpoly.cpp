#include "siegel/modpoly.hpp"
#include "siegel/errors.hpp"
#include "siegel/modgroup.hpp"
#include "siegel/numfield.hpp"

#include <json.hpp>

#include <algorithm>

namespace siegel {

namespace {

Laurent ls_scalar_mul(Laurent a, const mpz_class& k) {
    for (auto& c : a.c) c *= k;
    return ls_trim(std::move(a));
}

Laurent ls_scalar_divexact(Laurent a, long k) {
    for (auto& c : a.c) {
        if (c % k != 0)
            throw InternalInconsistency("Newton identity division is not exact");
        c /= k;
    }
    return a;
}

long floor_div(long x, long y) { return x >= 0 ? x / y : -(((-x) + y - 1) / y); }

// p * sum over t-exponents divisible by p of [t^n] a, reindexed as q^{n/p}.
Laurent extract_divisible(const Laurent& a, long p) {
    Laurent r;
    r.lead = -floor_div(-a.lead, p);            // ceil(a.lead / p)
    r.prec = floor_div(a.prec - 1, p) + 1;      // q^m known iff m*p < a.prec
    long len = std::max<long>(0, r.prec - r.lead);
    r.c.assign(static_cast<size_t>(len), mpz_class(0));
    for (long m = r.lead; m < r.prec; ++m)
        r.c[static_cast<size_t>(m - r.lead)] = a.coeff(m * p) * p;
    return ls_trim(std::move(r));
}

ModularPolynomial build_modpoly(long p, long extra) {
    const long deg = p + 1;
    // the conjugate series have poles of order up to deg*p, and each product
    // in the Newton chain loses prec by the pole order of the other factor;
    // target prec T+1 for every power sum so each e_i keeps prec >= extra+2
    const long T = extra + deg * p + 2;
    Laurent jq_src = j_expansion_laurent(extra + deg + 4);
    Laurent jp = ls_stretch(j_expansion_laurent(T / p + 2 * deg + 6), p);
    // powers of j(t), t = q^{1/p}
    Laurent jt = j_expansion_laurent(p * T + deg + 4);

    // power sums pi_m of the p+1 conjugates, as q-Laurent series
    std::vector<Laurent> pi(static_cast<size_t>(deg) + 1);
    Laurent jp_pow = jp, jt_pow = jt;
    for (long m = 1; m <= deg; ++m) {
        if (m > 1) {
            jp_pow = ls_mul(jp_pow, jp);
            jt_pow = ls_mul(jt_pow, jt);
        }
        pi[static_cast<size_t>(m)] = ls_add(jp_pow, extract_divisible(jt_pow, p));
    }

    // Newton's identities: e_i = (1/i) sum_{k=1..i} (-1)^{k-1} e_{i-k} pi_k
    std::vector<Laurent> e(static_cast<size_t>(deg) + 1);
    e[0] = Laurent{0, T + 1 + deg * p, {mpz_class(1)}}; // exact constant
    for (long i = 1; i <= deg; ++i) {
        Laurent acc;
        bool first = true;
        for (long k = 1; k <= i; ++k) {
            Laurent term = ls_mul(e[static_cast<size_t>(i - k)], pi[static_cast<size_t>(k)]);
            if (k % 2 == 0) term = ls_scalar_mul(std::move(term), mpz_class(-1));
            acc = first ? term : ls_add(acc, term);
            first = false;
        }
        e[static_cast<size_t>(i)] = ls_scalar_divexact(std::move(acc), i);
        if (e[static_cast<size_t>(i)].prec < extra + 2)
            throw InternalInconsistency("symmetric function series prec collapsed");
    }

    // express each e_i as an integer polynomial in j by leading-term
    // elimination against powers of j(q)
    std::vector<Laurent> jq_pow(static_cast<size_t>(deg) + 1);
    jq_pow[0] = Laurent{0, jq_src.prec, {mpz_class(1)}};
    jq_pow[1] = jq_src;
    for (long m = 2; m <= deg; ++m) jq_pow[static_cast<size_t>(m)] = ls_mul(jq_pow[static_cast<size_t>(m - 1)], jq_src);

    ModularPolynomial phi;
    phi.p = p;
    auto put = [&phi](int i, int j, const mpz_class& v) {
        if (v == 0) return;
        if (i < j) std::swap(i, j);
        auto [it, fresh] = phi.terms.emplace(std::make_pair(i, j), v);
        if (!fresh && it->second != v)
            throw InternalInconsistency("modular polynomial coefficient symmetry violated");
    };
    put(static_cast<int>(deg), 0, mpz_class(1)); // X^{p+1}

    for (long i = 1; i <= deg; ++i) {
        Laurent r = e[static_cast<size_t>(i)];
        std::vector<mpz_class> cm(static_cast<size_t>(deg) + 1, mpz_class(0));
        while (!r.c.empty() && r.lead < 0) {
            long m = -r.lead;
            if (m > deg)
                throw InternalInconsistency("symmetric function pole exceeds degree p+1");
            cm[static_cast<size_t>(m)] = r.c[0];
            r = ls_sub(r, ls_scalar_mul(jq_pow[static_cast<size_t>(m)], r.c[0]));
        }
        cm[0] = r.coeff(0);
        Laurent rem = r;
        if (!rem.c.empty()) {
            rem = ls_sub(rem, Laurent{0, rem.prec, {cm[0]}});
        }
        if (rem.prec < extra + 1)
            throw InternalInconsistency("remainder verification window too small");
        if (!ls_is_zero_through(rem, extra))
            throw InternalInconsistency("nonzero remainder when expressing e_i in j");
        const mpz_class sign = (i % 2 == 0) ? 1 : -1;
        for (long m = 0; m <= deg; ++m) {
            if (cm[static_cast<size_t>(m)] == 0) continue;
            put(static_cast<int>(deg - i), static_cast<int>(m), sign * cm[static_cast<size_t>(m)]);
        }
    }
    if (phi.coeff(static_cast<int>(deg), static_cast<int>(deg)) != 0 ||
        phi.coeff(static_cast<int>(deg), 0) != 1)
        throw InternalInconsistency("modular polynomial normalization check failed");
    return phi;
}

} // namespace

ModularPolynomial modular_polynomial(long p, long cap) {
    if (!is_prime_i64(p)) throw InvalidLevel("modular_polynomial: p must be prime");
    if (p > cap) throw CapExceeded("modular polynomial level exceeds cap");
    long extra = p + 8;
    for (int attempt = 0; attempt < 4; ++attempt) {
        try {
            return build_modpoly(p, extra);
        } catch (const InternalInconsistency&) {
            extra *= 2; // insufficient series order; raise and retry
        }
    }
    return build_modpoly(p, extra);
}

IntPoly modpoly_specialize(const ModularPolynomial& phi, const mpq_class& j0) {
    const int deg = phi.degree();
    mpz_class a = j0.get_num(), b = j0.get_den();
    // powers of a and b
    std::vector<mpz_class> ap(static_cast<size_t>(deg) + 1), bp(static_cast<size_t>(deg) + 1);
    ap[0] = 1;
    bp[0] = 1;
    for (int i = 1; i <= deg; ++i) {
        ap[static_cast<size_t>(i)] = ap[static_cast<size_t>(i - 1)] * a;
        bp[static_cast<size_t>(i)] = bp[static_cast<size_t>(i - 1)] * b;
    }
    IntPoly g(static_cast<size_t>(deg) + 1, mpz_class(0));
    for (int m = 0; m <= deg; ++m) {
        mpz_class acc = 0;
        for (int i = 0; i <= deg; ++i) {
            mpz_class c = phi.coeff(i, m);
            if (c != 0) acc += c * ap[static_cast<size_t>(i)] * bp[static_cast<size_t>(deg - i)];
        }
        g[static_cast<size_t>(m)] = acc;
    }
    return ip_normalize(std::move(g));
}

std::vector<mpq_class> rational_points_above_j(const ModularPolynomial& phi, const mpq_class& j0) {
    return ip_rational_roots(modpoly_specialize(phi, j0));
}

bool modpoly_defining_identity_holds(const ModularPolynomial& phi, long order) {
    const long p = phi.p;
    const long deg = p + 1;
    const long need = order + deg * (p + 1) + 8;
    Laurent jq = j_expansion_laurent(need);
    Laurent jp = ls_stretch(j_expansion_laurent(need / p + deg + 4), p);

    std::vector<Laurent> jp_pow(static_cast<size_t>(deg) + 1);
    jp_pow[0] = Laurent{0, jp.prec, {mpz_class(1)}};
    for (long m = 1; m <= deg; ++m)
        jp_pow[static_cast<size_t>(m)] = (m == 1) ? jp : ls_mul(jp_pow[static_cast<size_t>(m - 1)], jp);

    Laurent acc{0, need, {}};
    for (int xi = static_cast<int>(deg); xi >= 0; --xi) {
        Laurent row{0, jp.prec, {}};
        bool any = false;
        for (int m = 0; m <= static_cast<int>(deg); ++m) {
            mpz_class c = phi.coeff(xi, m);
            if (c == 0) continue;
            Laurent t = ls_scalar_mul(jp_pow[static_cast<size_t>(m)], c);
            row = any ? ls_add(row, t) : t;
            any = true;
        }
        if (xi == static_cast<int>(deg)) {
            acc = row;
        } else {
            acc = ls_mul(acc, jq);
            if (any) acc = ls_add(acc, row);
        }
    }
    if (acc.prec <= order) throw InternalInconsistency("identity check ran out of series order");
    return ls_is_zero_through(acc, order);
}

std::string modpoly_to_json(const ModularPolynomial& phi) {
    nlohmann::json j;
    j["p"] = phi.p;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [ij, c] : phi.terms)
        terms.push_back({{"i", ij.first}, {"j", ij.second}, {"c", c.get_str()}});
    j["terms"] = std::move(terms);
    return j.dump();
}

ModularPolynomial modpoly_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ModularPolynomial phi;
    phi.p = j.at("p").get<long>();
    for (const auto& t : j.at("terms")) {
        int i = t.at("i").get<int>(), jj = t.at("j").get<int>();
        mpz_class c(t.at("c").get<std::string>());
        if (i < jj) std::swap(i, jj);
        phi.terms[{i, jj}] = c;
    }
    return phi;
}

} // namespace siegel
