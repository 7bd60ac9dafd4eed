#include "siegel/numfield.hpp"
#include "siegel/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace siegel {

mpz_class poly_discriminant(const IntPoly& f) { return ip_discriminant(f); }

namespace {

bool is_monic(const IntPoly& f) { return !f.empty() && f.back() == 1; }

// Trial-division factorization; throws if a composite cofactor that is
// neither prime nor a prime square survives the small-prime bound.
std::map<mpz_class, int> factor_desk_scale(mpz_class n, const char* what) {
    std::map<mpz_class, int> fac;
    if (n < 0) n = -n;
    if (n <= 1) return fac;
    for (mpz_class p = 2; p * p <= n && p < 1000000; p == 2 ? p = 3 : p += 2) {
        while (n % p == 0) {
            ++fac[p];
            n /= p;
        }
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
            ++fac[n];
        } else {
            mpz_class r;
            if (is_perfect_square(n, &r) && mpz_probab_prime_p(r.get_mpz_t(), 40)) {
                fac[r] += 2;
            } else {
                throw UncertifiableDiscriminant(std::string(what) +
                                                ": cannot factor a large composite cofactor");
            }
        }
    }
    return fac;
}

// exact division over Z; throws if b does not divide a
IntPoly ip_divexact_poly(const IntPoly& a, const IntPoly& b) {
    IntPoly r = a;
    const int da = ip_degree(a), db = ip_degree(b);
    IntPoly q(static_cast<size_t>(da - db + 1), mpz_class(0));
    for (int i = da - db; i >= 0; --i) {
        mpz_class c = r[static_cast<size_t>(i + db)];
        if (c == 0) continue;
        if (c % b.back() != 0) throw InternalInconsistency("inexact polynomial division");
        c /= b.back();
        q[static_cast<size_t>(i)] = c;
        for (int j = 0; j <= db; ++j) r[static_cast<size_t>(i + j)] -= c * b[static_cast<size_t>(j)];
    }
    for (const auto& c : r)
        if (c != 0) throw InternalInconsistency("inexact polynomial division");
    return ip_normalize(std::move(q));
}

// gcd over Z via the primitive pseudo-remainder sequence; result primitive
// with positive leading coefficient
IntPoly ip_gcd_z(IntPoly a, IntPoly b) {
    a = ip_primitive_part(a);
    b = ip_primitive_part(b);
    if (ip_degree(a) < ip_degree(b)) std::swap(a, b);
    while (ip_degree(b) >= 0) {
        const int db = ip_degree(b);
        const mpz_class lb = b.back();
        IntPoly r = a;
        while (ip_degree(r) >= db) {
            const int dr = ip_degree(r);
            const mpz_class c = r.back();
            for (auto& x : r) x *= lb;
            for (int j = 0; j <= db; ++j) r[static_cast<size_t>(dr - db + j)] -= c * b[static_cast<size_t>(j)];
            r = ip_normalize(std::move(r));
        }
        a = std::move(b);
        b = ip_primitive_part(r);
    }
    if (!a.empty() && a.back() < 0)
        for (auto& c : a) c = -c;
    return a;
}

std::vector<uint64_t> reduce_mod_u(const IntPoly& f, uint64_t q) {
    std::vector<uint64_t> r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = mpz_fdiv_ui(f[i].get_mpz_t(), q);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

uint64_t eval_mod_u(const std::vector<uint64_t>& f, uint64_t x, uint64_t q) {
    unsigned __int128 acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (acc * x + *it) % q;
    return static_cast<uint64_t>(acc);
}

uint64_t inv_mod_u(uint64_t a, uint64_t q) { // q prime
    uint64_t r = 1, e = q - 2;
    unsigned __int128 base = a % q;
    while (e) {
        if (e & 1) r = static_cast<uint64_t>(base * r % q);
        base = base * base % q;
        e >>= 1;
    }
    return r;
}

std::vector<uint64_t> gcd_mod_u(std::vector<uint64_t> a, std::vector<uint64_t> b, uint64_t q) {
    while (!b.empty()) {
        const uint64_t li = inv_mod_u(b.back(), q);
        while (a.size() >= b.size()) {
            const unsigned __int128 c = static_cast<unsigned __int128>(a.back()) * li % q;
            const size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) {
                const uint64_t s = static_cast<uint64_t>(c * b[j] % q);
                a[off + j] = (a[off + j] + q - s) % q;
            }
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        std::swap(a, b);
    }
    return a;
}

mpz_class eval_mod_z(const IntPoly& f, const mpz_class& x, const mpz_class& m) {
    mpz_class acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (acc * x + *it) % m;
    if (acc < 0) acc += m;
    return acc;
}

} // namespace

void certify_irreducible(const IntPoly& f) {
    const int n = ip_degree(f);
    if (n < 1) throw ReduciblePolynomial("constant polynomial");
    if (n == 1) return;
    if (!ip_rational_roots(f).empty())
        throw ReduciblePolynomial("polynomial has a rational root");
    if (n <= 3) return; // no linear factor settles degrees 2 and 3
    mpz_class disc = ip_discriminant(f);
    if (disc == 0) throw ReduciblePolynomial("polynomial is not squarefree");
    mpz_class bad = disc * f.back();
    int tried = 0;
    for (mpz_class q = 2; tried < 25; q = (q == 2) ? mpz_class(3) : mpz_class(q + 2)) {
        if (!mpz_probab_prime_p(q.get_mpz_t(), 40)) continue;
        if (bad % q == 0) continue;
        ++tried;
        if (mp_is_irreducible(mp_from_int_poly(f, q.get_ui()))) return;
    }
    throw IrreducibilityUndetermined(
        "could not certify irreducibility over small primes; polynomial is likely reducible");
}

std::vector<mpz_class> ip_integer_roots(const IntPoly& f0) {
    IntPoly f = ip_normalize(f0);
    std::vector<mpz_class> roots;
    if (ip_degree(f) < 1) return roots;
    f = ip_primitive_part(f);
    size_t sh = 0;
    while (sh < f.size() && f[sh] == 0) ++sh;
    if (sh > 0) {
        roots.emplace_back(0);
        f.erase(f.begin(), f.begin() + static_cast<long>(sh));
    }
    if (ip_degree(f) < 1) return roots;
    // Cauchy bound on root magnitude
    mpz_class maxc = 0;
    for (const auto& c : f) maxc = std::max(maxc, mpz_class(abs(c)));
    mpz_class bound = maxc / mpz_class(abs(f.back())) + 2;
    // squarefree part, so every integer root is simple and Hensel-liftable
    IntPoly g = ip_gcd_z(f, ip_derivative(f));
    IntPoly fs = (ip_degree(g) > 0) ? ip_primitive_part(ip_divexact_poly(f, g)) : f;
    IntPoly dfs = ip_derivative(fs);
    // a prime where fs keeps full degree and stays squarefree
    uint64_t q = 0;
    std::vector<uint64_t> fsq;
    mpz_class qz = 2;
    for (int tries = 0; tries < 2000 && q == 0; ++tries) {
        mpz_nextprime(qz.get_mpz_t(), qz.get_mpz_t());
        const uint64_t cq = qz.get_ui();
        if (mpz_fdiv_ui(fs.back().get_mpz_t(), cq) == 0) continue;
        auto a = reduce_mod_u(fs, cq);
        auto d = reduce_mod_u(dfs, cq);
        if (gcd_mod_u(a, d, cq).size() == 1) {
            q = cq;
            fsq = std::move(a);
        }
    }
    if (q == 0) throw InternalInconsistency("no squarefree reduction prime for root isolation");
    // lift each residue root quadratically past 2*bound; the symmetric
    // representative is the only integer candidate in its class
    const mpz_class target = 2 * bound + 1;
    for (uint64_t r0 = 0; r0 < q; ++r0) {
        if (eval_mod_u(fsq, r0, q) != 0) continue;
        mpz_class m(static_cast<unsigned long>(q)), r(static_cast<unsigned long>(r0));
        while (m < target) {
            m *= m;
            mpz_class fp = eval_mod_z(dfs, r, m);
            mpz_class u;
            if (mpz_invert(u.get_mpz_t(), fp.get_mpz_t(), m.get_mpz_t()) == 0)
                throw InternalInconsistency("Hensel lift lost invertibility");
            r = (r - eval_mod_z(fs, r, m) * u) % m;
            if (r < 0) r += m;
        }
        mpz_class z = (2 * r > m) ? mpz_class(r - m) : r;
        if (ip_eval_z(fs, z) == 0) roots.push_back(z);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<mpq_class> ip_rational_roots(const IntPoly& f0) {
    IntPoly f = ip_primitive_part(f0);
    std::vector<mpq_class> roots;
    if (ip_degree(f) < 1) return roots;
    const mpz_class L = f.back();
    if (L == 1) {
        for (const auto& r : ip_integer_roots(f)) roots.emplace_back(r);
        return roots;
    }
    // z = L*y satisfies the monic polynomial with coefficients a_k L^{n-1-k}
    const int n = ip_degree(f);
    IntPoly h(f.size());
    mpz_class Lp = 1;
    for (int k = n; k >= 0; --k) {
        h[static_cast<size_t>(k)] = f[static_cast<size_t>(k)] * Lp;
        if (k > 0) Lp *= L;
    }
    for (const auto& z : ip_integer_roots(h)) {
        mpq_class y(z, L);
        y.canonicalize();
        roots.push_back(y);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::pair<mpz_class, bool> field_discriminant(const IntPoly& f,
                                              const std::optional<mpz_class>& claimed_D) {
    mpz_class pd = ip_discriminant(f);
    if (claimed_D) {
        const mpz_class& D = *claimed_D;
        if (D == 0 || pd % D != 0)
            throw InconsistentDiscriminant("claimed discriminant does not divide disc(minpoly)");
        mpz_class quot = pd / D;
        if (quot <= 0 || !is_perfect_square(quot))
            throw InconsistentDiscriminant("disc(minpoly)/claimed is not a positive perfect square");
        return {D, false};
    }
    auto fac = factor_desk_scale(pd, "field_discriminant");
    for (const auto& [q, e] : fac) {
        if (e < 2) continue;
        if (!mpz_fits_ulong_p(q.get_mpz_t()))
            throw UncertifiableDiscriminant("square prime divisor too large for Dedekind check");
        if (!dedekind_q_maximal(f, q.get_ui()))
            throw UncertifiableDiscriminant("Dedekind criterion fails at " + q.get_str() +
                                            "; supply the field discriminant explicitly");
    }
    return {pd, true};
}

NumberField make_number_field(const IntPoly& f0, const std::optional<mpz_class>& claimed_D) {
    IntPoly f = ip_normalize(f0);
    if (ip_degree(f) < 1) throw Error("number field: minimal polynomial must be nonconstant");
    if (!is_monic(f)) throw Error("number field: minimal polynomial must be monic");
    certify_irreducible(f);
    auto [D, certified] = field_discriminant(f, claimed_D);
    NumberField k;
    k.minpoly = std::move(f);
    k.degree = ip_degree(k.minpoly);
    k.disc = D;
    k.disc_certified = certified;
    return k;
}

std::vector<FinitePlace> split_prime(const NumberField& field, const mpz_class& q) {
    if (!mpz_probab_prime_p(q.get_mpz_t(), 40)) throw Error("split_prime: not a prime");
    if (!mpz_fits_ulong_p(q.get_mpz_t())) throw Error("split_prime: prime too large");
    if (field.degree == 1) return {FinitePlace{q, 1, 1}};
    mpz_class pd = ip_discriminant(field.minpoly);
    if (pd % (q * q) == 0 && !dedekind_q_maximal(field.minpoly, q.get_ui()))
        throw IndexDivisorPrime("prime " + q.get_str() + " divides the index [O_K : Z[theta]]");
    auto fac = mp_factor(mp_from_int_poly(field.minpoly, q.get_ui()));
    std::vector<FinitePlace> places;
    int efsum = 0;
    for (const auto& [g, e] : fac) {
        FinitePlace pl{q, mp_degree(g), e};
        efsum += pl.residue_degree * pl.ramification_index;
        places.push_back(std::move(pl));
    }
    if (efsum != field.degree) throw Error("split_prime: sum e_i f_i != degree");
    return places;
}

std::pair<int, int> infinite_places(const NumberField& field) {
    int r1 = ip_count_real_roots(field.minpoly);
    return {r1, (field.degree - r1) / 2};
}

PlaceSet build_place_set(const NumberField& field, const std::vector<mpz_class>& rational_primes) {
    std::vector<mpz_class> primes = rational_primes;
    std::sort(primes.begin(), primes.end());
    if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
        throw Error("build_place_set: primes must be distinct");
    PlaceSet ps;
    ps.field = field;
    auto [r1, r2] = infinite_places(field);
    ps.infinite_count = r1 + r2;
    ps.ell = 1;
    for (const auto& q : primes) {
        auto pls = split_prime(field, q);
        ps.finite_places.insert(ps.finite_places.end(), pls.begin(), pls.end());
        ps.ell = std::max(ps.ell, q);
    }
    ps.s = ps.infinite_count + static_cast<int>(ps.finite_places.size());
    return ps;
}

mpz_class euler_phi(const mpz_class& N) {
    if (N < 1) throw Error("euler_phi: argument must be positive");
    if (N == 1) return 1;
    auto fac = factor_desk_scale(N, "euler_phi");
    mpz_class phi = 1;
    for (const auto& [p, e] : fac) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e - 1));
        phi *= pe * (p - 1);
    }
    return phi;
}

} // namespace siegel
