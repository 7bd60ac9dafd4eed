#include "siegel/intpoly.hpp"
#include "siegel/errors.hpp"

#include <algorithm>
#include <random>

namespace siegel {

IntPoly ip_normalize(IntPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

int ip_degree(const IntPoly& f) { return static_cast<int>(f.size()) - 1; }

IntPoly ip_add(const IntPoly& a, const IntPoly& b) {
    IntPoly r(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return ip_normalize(std::move(r));
}

IntPoly ip_sub(const IntPoly& a, const IntPoly& b) {
    IntPoly r(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return ip_normalize(std::move(r));
}

IntPoly ip_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return ip_normalize(std::move(r));
}

IntPoly ip_derivative(const IntPoly& f) {
    if (f.size() <= 1) return {};
    IntPoly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * static_cast<long>(i);
    return ip_normalize(std::move(r));
}

mpz_class ip_content(const IntPoly& f) {
    mpz_class g = 0;
    for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPoly ip_primitive_part(const IntPoly& f) {
    mpz_class c = ip_content(f);
    if (c == 0) return {};
    IntPoly r = f;
    for (auto& x : r) x /= c;
    if (r.back() < 0)
        for (auto& x : r) x = -x;
    return r;
}

mpz_class ip_eval_z(const IntPoly& f, const mpz_class& x) {
    mpz_class r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
    return r;
}

mpq_class ip_eval_q(const IntPoly& f, const mpq_class& x) {
    mpq_class r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + mpq_class(*it);
    return r;
}

// Fraction-free (Bareiss) determinant of an integer matrix.
static mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

mpz_class ip_resultant(const IntPoly& f0, const IntPoly& g0) {
    IntPoly f = ip_normalize(f0), g = ip_normalize(g0);
    if (f.empty() || g.empty()) return 0;
    const int m = ip_degree(f), n = ip_degree(g);
    if (m == 0 && n == 0) return 1;
    if (m == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), f[0].get_mpz_t(), static_cast<unsigned long>(n));
        return r;
    }
    if (n == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), g[0].get_mpz_t(), static_cast<unsigned long>(m));
        return r;
    }
    const size_t sz = static_cast<size_t>(m + n);
    std::vector<std::vector<mpz_class>> syl(sz, std::vector<mpz_class>(sz, mpz_class(0)));
    for (int row = 0; row < n; ++row)
        for (int j = 0; j <= m; ++j)
            syl[static_cast<size_t>(row)][static_cast<size_t>(row + j)] = f[static_cast<size_t>(m - j)];
    for (int row = 0; row < m; ++row)
        for (int j = 0; j <= n; ++j)
            syl[static_cast<size_t>(n + row)][static_cast<size_t>(row + j)] = g[static_cast<size_t>(n - j)];
    return bareiss_det(std::move(syl));
}

mpz_class ip_discriminant(const IntPoly& f0) {
    IntPoly f = ip_normalize(f0);
    const int n = ip_degree(f);
    if (n < 1) throw Error("discriminant: polynomial must be nonconstant");
    if (n == 1) return 1;
    mpz_class res = ip_resultant(f, ip_derivative(f));
    mpz_class d = res / f.back();
    const long sw = static_cast<long>(n) * (n - 1) / 2;
    return (sw % 2 == 0) ? d : -d;
}

// --- Sturm chains over the rationals ---

using QPoly = std::vector<mpq_class>;

static QPoly qp_normalize(QPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

static QPoly qp_rem(QPoly a, const QPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class c = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
        a = qp_normalize(std::move(a));
    }
    return a;
}

static QPoly qp_from_ip(const IntPoly& f) {
    QPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = mpq_class(f[i]);
    return r;
}

static QPoly qp_derivative(const QPoly& f) {
    if (f.size() <= 1) return {};
    QPoly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * static_cast<long>(i);
    return r;
}

static QPoly qp_squarefree_part(QPoly f) {
    QPoly a = f, b = qp_derivative(f);
    // Euclidean gcd
    while (!b.empty()) {
        QPoly r = qp_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.size() <= 1) return f;
    // f / gcd
    QPoly q;
    QPoly rem = f;
    q.assign(f.size() - a.size() + 1, mpq_class(0));
    while (rem.size() >= a.size() && !rem.empty()) {
        mpq_class c = rem.back() / a.back();
        size_t off = rem.size() - a.size();
        q[off] = c;
        for (size_t i = 0; i < a.size(); ++i) rem[off + i] -= c * a[i];
        rem = qp_normalize(std::move(rem));
    }
    return qp_normalize(std::move(q));
}

static std::vector<QPoly> sturm_chain(const IntPoly& f) {
    QPoly p0 = qp_squarefree_part(qp_from_ip(ip_normalize(f)));
    std::vector<QPoly> chain;
    if (p0.size() <= 1) return chain;
    chain.push_back(p0);
    chain.push_back(qp_derivative(p0));
    while (!chain.back().empty()) {
        QPoly r = qp_rem(chain[chain.size() - 2], chain.back());
        for (auto& c : r) c = -c;
        if (r.empty()) break;
        chain.push_back(std::move(r));
    }
    return chain;
}

static int sign_at(const QPoly& f, const mpq_class& x) {
    mpq_class r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
    return sgn(r);
}

static int sign_at_inf(const QPoly& f, bool positive) {
    if (f.empty()) return 0;
    int s = sgn(f.back());
    if (!positive && (f.size() - 1) % 2 == 1) s = -s;
    return s;
}

static int count_sign_changes(const std::vector<int>& signs) {
    int n = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++n;
        prev = s;
    }
    return n;
}

int ip_count_real_roots(const IntPoly& f) {
    auto chain = sturm_chain(f);
    if (chain.empty()) return 0;
    std::vector<int> lo, hi;
    for (const auto& p : chain) {
        lo.push_back(sign_at_inf(p, false));
        hi.push_back(sign_at_inf(p, true));
    }
    return count_sign_changes(lo) - count_sign_changes(hi);
}

int ip_count_real_roots_between(const IntPoly& f, const mpq_class& a, const mpq_class& b) {
    auto chain = sturm_chain(f);
    if (chain.empty()) return 0;
    std::vector<int> lo, hi;
    for (const auto& p : chain) {
        lo.push_back(sign_at(p, a));
        hi.push_back(sign_at(p, b));
    }
    return count_sign_changes(lo) - count_sign_changes(hi);
}

bool is_perfect_square(const mpz_class& n, mpz_class* root) {
    if (n < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    if (root) mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
    return true;
}

// --- F_q[x] ---

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t q) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % q);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t q) {
    uint64_t r = 1 % q;
    a %= q;
    while (e) {
        if (e & 1) r = mulmod(r, a, q);
        a = mulmod(a, a, q);
        e >>= 1;
    }
    return r;
}

uint64_t invmod(uint64_t a, uint64_t q) { return powmod(a % q, q - 2, q); }

ModPoly mp_normalize(ModPoly f) {
    while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
    return f;
}

ModPoly mp_sub(const ModPoly& a, const ModPoly& b) {
    ModPoly r{a.q, {}};
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + a.q - b.c[i]) % a.q;
    return mp_normalize(std::move(r));
}

ModPoly mp_x(uint64_t q) { return ModPoly{q, {0, 1}}; }

ModPoly mp_powmod_big(const ModPoly& base, const mpz_class& e, const ModPoly& mod);

} // namespace

ModPoly mp_from_int_poly(const IntPoly& f, uint64_t q) {
    ModPoly r{q, {}};
    r.c.reserve(f.size());
    for (const auto& c : f) {
        mpz_class m = c % mpz_class(static_cast<unsigned long>(q));
        if (m < 0) m += static_cast<unsigned long>(q);
        r.c.push_back(m.get_ui());
    }
    return mp_normalize(std::move(r));
}

int mp_degree(const ModPoly& f) { return static_cast<int>(f.c.size()) - 1; }

ModPoly mp_mul(const ModPoly& a, const ModPoly& b) {
    if (a.c.empty() || b.c.empty()) return ModPoly{a.q, {}};
    ModPoly r{a.q, std::vector<uint64_t>(a.c.size() + b.c.size() - 1, 0)};
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = (r.c[i + j] + mulmod(a.c[i], b.c[j], a.q)) % a.q;
    }
    return mp_normalize(std::move(r));
}

ModPoly mp_rem(ModPoly a, const ModPoly& b) {
    const uint64_t q = b.q;
    const uint64_t inv_lc = invmod(b.c.back(), q);
    while (a.c.size() >= b.c.size() && !a.c.empty()) {
        uint64_t coef = mulmod(a.c.back(), inv_lc, q);
        size_t off = a.c.size() - b.c.size();
        for (size_t i = 0; i < b.c.size(); ++i) {
            uint64_t t = mulmod(coef, b.c[i], q);
            a.c[off + i] = (a.c[off + i] + q - t) % q;
        }
        a = mp_normalize(std::move(a));
    }
    return a;
}

static ModPoly mp_divexact(ModPoly a, const ModPoly& b) {
    const uint64_t q = b.q;
    const uint64_t inv_lc = invmod(b.c.back(), q);
    ModPoly quot{q, std::vector<uint64_t>(a.c.size() >= b.c.size() ? a.c.size() - b.c.size() + 1 : 0, 0)};
    while (a.c.size() >= b.c.size() && !a.c.empty()) {
        uint64_t coef = mulmod(a.c.back(), inv_lc, q);
        size_t off = a.c.size() - b.c.size();
        quot.c[off] = coef;
        for (size_t i = 0; i < b.c.size(); ++i) {
            uint64_t t = mulmod(coef, b.c[i], q);
            a.c[off + i] = (a.c[off + i] + q - t) % q;
        }
        a = mp_normalize(std::move(a));
    }
    return mp_normalize(std::move(quot));
}

ModPoly mp_monic(ModPoly f) {
    if (f.c.empty() || f.c.back() == 1) return f;
    uint64_t inv = invmod(f.c.back(), f.q);
    for (auto& c : f.c) c = mulmod(c, inv, f.q);
    return f;
}

ModPoly mp_gcd(ModPoly a, ModPoly b) {
    while (!b.c.empty()) {
        ModPoly r = mp_rem(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return mp_monic(std::move(a));
}

namespace {

ModPoly mp_derivative(const ModPoly& f) {
    ModPoly r{f.q, {}};
    if (f.c.size() <= 1) return r;
    r.c.resize(f.c.size() - 1);
    for (size_t i = 1; i < f.c.size(); ++i)
        r.c[i - 1] = mulmod(f.c[i], i % f.q, f.q);
    return mp_normalize(std::move(r));
}

// f(x) = g(x^q) with g recovered coefficientwise (Frobenius fixes F_q).
ModPoly mp_qth_root(const ModPoly& f) {
    ModPoly r{f.q, {}};
    for (size_t i = 0; i < f.c.size(); i += f.q) r.c.push_back(f.c[i]);
    return mp_normalize(std::move(r));
}

ModPoly mp_powmod_big(const ModPoly& base, const mpz_class& e, const ModPoly& mod) {
    ModPoly r{base.q, {1}};
    ModPoly b = mp_rem(base, mod);
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = mp_rem(mp_mul(r, b), mod);
        b = mp_rem(mp_mul(b, b), mod);
        k >>= 1;
    }
    return r;
}

std::mt19937_64 edf_rng(0x5eeded);

ModPoly random_poly(uint64_t q, int max_deg) {
    std::uniform_int_distribution<uint64_t> dist(0, q - 1);
    ModPoly r{q, {}};
    r.c.resize(static_cast<size_t>(max_deg) + 1);
    for (auto& c : r.c) c = dist(edf_rng);
    return mp_normalize(std::move(r));
}

// Cantor-Zassenhaus equal-degree splitting: g squarefree, all factors deg d.
void edf(const ModPoly& g, int d, std::vector<ModPoly>& out) {
    if (mp_degree(g) == d) {
        out.push_back(mp_monic(g));
        return;
    }
    const uint64_t q = g.q;
    for (;;) {
        ModPoly r = random_poly(q, mp_degree(g) - 1);
        if (mp_degree(r) < 1 && (r.c.empty() || r.c[0] == 0)) continue;
        ModPoly h;
        if (q == 2) {
            // trace map r + r^2 + ... + r^{2^{d-1}}
            h = ModPoly{q, {}};
            ModPoly t = mp_rem(r, g);
            for (int i = 0; i < d; ++i) {
                h = mp_normalize(mp_sub(h, ModPoly{q, {}}));
                h.c.resize(std::max(h.c.size(), t.c.size()), 0);
                for (size_t j = 0; j < t.c.size(); ++j) h.c[j] ^= t.c[j];
                h = mp_normalize(std::move(h));
                t = mp_rem(mp_mul(t, t), g);
            }
        } else {
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            h = mp_powmod_big(r, e, g);
            if (h.c.empty()) continue;
            h.c[0] = (h.c[0] + q - 1) % q; // h - 1
            h = mp_normalize(std::move(h));
        }
        ModPoly f1 = mp_gcd(h, g);
        int d1 = mp_degree(f1);
        if (d1 <= 0 || d1 == mp_degree(g)) continue;
        edf(f1, d, out);
        edf(mp_divexact(g, f1), d, out);
        return;
    }
}

// Distinct-degree then equal-degree factorization of squarefree monic g.
void factor_squarefree(ModPoly g, std::vector<ModPoly>& out) {
    const uint64_t q = g.q;
    ModPoly h = mp_rem(mp_x(q), g);
    int d = 0;
    while (mp_degree(g) > 0 && 2 * (d + 1) <= mp_degree(g)) {
        ++d;
        h = mp_powmod_big(h, mpz_class(static_cast<unsigned long>(q)), g);
        ModPoly hx = mp_sub(h, mp_rem(mp_x(q), g));
        ModPoly gd = mp_gcd(hx, g);
        if (mp_degree(gd) > 0) {
            edf(gd, d, out);
            g = mp_divexact(g, gd);
            h = mp_rem(h, g);
        }
    }
    if (mp_degree(g) > 0) out.push_back(mp_monic(g));
}

} // namespace

std::vector<ModFactor> mp_factor(const ModPoly& f0) {
    ModPoly f = mp_monic(mp_normalize(f0));
    if (f.c.empty()) throw Error("mp_factor: zero polynomial");
    std::vector<ModFactor> result;
    // squarefree decomposition, handling q-th powers
    long e = 1;
    while (mp_degree(f) > 0) {
        ModPoly fp = mp_derivative(f);
        if (fp.c.empty()) {
            f = mp_qth_root(f);
            e *= static_cast<long>(f.q);
            continue;
        }
        ModPoly c = mp_gcd(f, fp);
        ModPoly w = mp_divexact(f, c);
        long i = 1;
        while (mp_degree(w) > 0) {
            ModPoly y = mp_gcd(w, c);
            ModPoly z = mp_divexact(w, y);
            if (mp_degree(z) > 0) {
                std::vector<ModPoly> irr;
                factor_squarefree(z, irr);
                for (auto& g : irr)
                    result.push_back(ModFactor{std::move(g), static_cast<int>(i * e)});
            }
            w = std::move(y);
            c = mp_divexact(c, w);
            ++i;
        }
        f = std::move(c); // remaining part is a q-th power
    }
    std::sort(result.begin(), result.end(), [](const ModFactor& a, const ModFactor& b) {
        if (a.factor.c.size() != b.factor.c.size()) return a.factor.c.size() < b.factor.c.size();
        return a.factor.c < b.factor.c;
    });
    return result;
}

bool mp_is_irreducible(const ModPoly& f) {
    if (mp_degree(f) < 1) return false;
    auto fac = mp_factor(f);
    return fac.size() == 1 && fac[0].multiplicity == 1;
}

bool dedekind_q_maximal(const IntPoly& f, uint64_t q) {
    auto fac = mp_factor(mp_from_int_poly(f, q));
    // radical g and cofactor h of f mod q
    ModPoly g{q, {1}}, h{q, {1}};
    for (const auto& [p, m] : fac) {
        g = mp_mul(g, p);
        for (int i = 1; i < m; ++i) h = mp_mul(h, p);
    }
    // lift g, h to Z[x] with coefficients in [0, q)
    auto lift = [](const ModPoly& m) {
        IntPoly r(m.c.size());
        for (size_t i = 0; i < m.c.size(); ++i) r[i] = mpz_class(static_cast<unsigned long>(m.c[i]));
        return r;
    };
    IntPoly gh = ip_mul(lift(g), lift(h));
    IntPoly t = ip_sub(gh, f);
    for (auto& c : t) c /= static_cast<unsigned long>(q);
    ModPoly tbar = mp_from_int_poly(t, q);
    ModPoly d = mp_gcd(mp_gcd(tbar, g), h);
    return mp_degree(d) == 0;
}

} // namespace siegel
