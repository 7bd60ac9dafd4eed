#include "siegel/modgroup.hpp"
#include "siegel/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace siegel {

namespace {

int64_t mod(int64_t x, int64_t N) {
    int64_t r = x % N;
    return r < 0 ? r + N : r;
}

int64_t gcd_i64(int64_t a, int64_t b) { return std::gcd(a, b); }

int64_t powmod_i64(int64_t a, int64_t e, int64_t N) {
    int64_t r = 1 % N;
    a = mod(a, N);
    while (e) {
        if (e & 1) r = (__int128)r * a % N;
        a = (__int128)a * a % N;
        e >>= 1;
    }
    return r;
}

int64_t invmod_i64(int64_t a, int64_t N) {
    // extended Euclid
    int64_t t = 0, newt = 1, r = N, newr = mod(a, N);
    while (newr != 0) {
        int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    return mod(t, N);
}

constexpr size_t kSmallSubgroupLimit = 300000;

} // namespace

bool is_prime_i64(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

MatModN mat_mul(const MatModN& x, const MatModN& y) {
    const int64_t N = x.level;
    return MatModN{mod(x.a * y.a + x.b * y.c, N), mod(x.a * y.b + x.b * y.d, N),
                   mod(x.c * y.a + x.d * y.c, N), mod(x.c * y.b + x.d * y.d, N), N};
}

MatModN mat_inv(const MatModN& x) {
    const int64_t N = x.level;
    return MatModN{x.d, mod(-x.b, N), mod(-x.c, N), x.a, N};
}

MatModN mat_identity(int64_t N) { return MatModN{1 % N, 0, 0, 1 % N, N}; }

MatModN mat_neg(const MatModN& x) {
    const int64_t N = x.level;
    return MatModN{mod(-x.a, N), mod(-x.b, N), mod(-x.c, N), mod(-x.d, N), N};
}

MatModN mat_S(int64_t N) { return MatModN{0, mod(-1, N), 1 % N, 0, N}; }
MatModN mat_T(int64_t N) { return MatModN{1 % N, 1 % N, 0, 1 % N, N}; }

uint64_t mat_key(const MatModN& x) {
    const uint64_t N = static_cast<uint64_t>(x.level);
    return ((static_cast<uint64_t>(x.a) * N + static_cast<uint64_t>(x.b)) * N +
            static_cast<uint64_t>(x.c)) * N + static_cast<uint64_t>(x.d);
}

CongruenceSubgroup make_subgroup(GroupKind kind, int64_t N) {
    if (N < 1) throw InvalidLevel("level must be >= 1");
    CongruenceSubgroup g;
    g.level = N;
    g.kind = kind;
    switch (kind) {
        case GroupKind::GammaFull:
            g.member = [](const MatModN&) { return true; };
            g.name = "sl2";
            break;
        case GroupKind::Gamma0:
            g.member = [](const MatModN& m) { return m.c == 0; };
            g.name = "gamma0";
            break;
        case GroupKind::Gamma1:
            g.member = [N](const MatModN& m) {
                return m.c == 0 && m.a == 1 % N && m.d == 1 % N;
            };
            g.name = "gamma1";
            break;
        case GroupKind::GammaTilde: {
            if (!is_prime_i64(N)) throw InvalidLevel("gamma-tilde requires a prime level");
            std::vector<char> inA(static_cast<size_t>(N), 0);
            for (int64_t a = 1; a < N; ++a)
                if (powmod_i64(a, 12, N) == 1) inA[static_cast<size_t>(a)] = 1;
            g.member = [inA = std::move(inA)](const MatModN& m) {
                return m.c == 0 && inA[static_cast<size_t>(m.a)];
            };
            g.name = "gamma-tilde";
            break;
        }
        case GroupKind::Custom:
            throw InvalidLevel("use make_custom_subgroup for custom predicates");
    }
    g.contains_minus_id = g.member(mat_neg(mat_identity(N)));
    return g;
}

CongruenceSubgroup make_custom_subgroup(int64_t N, std::function<bool(const MatModN&)> pred,
                                        const std::string& name) {
    if (N < 1) throw InvalidLevel("level must be >= 1");
    CongruenceSubgroup g;
    g.level = N;
    g.kind = GroupKind::Custom;
    g.member = std::move(pred);
    g.name = name;
    g.contains_minus_id = g.member(mat_neg(mat_identity(N)));
    return g;
}

namespace {

// Enumerate the subgroup's image in SL2(Z/N). Stops (returning empty)
// once the limit is exceeded; callers then fall back to representative
// scanning.
std::vector<MatModN> enumerate_members(const CongruenceSubgroup& G, size_t limit) {
    const int64_t N = G.level;
    std::vector<MatModN> members;
    for (int64_t c = 0; c < N; ++c) {
        const int64_t g = gcd_i64(c, N);
        const int64_t Ng = N / g;
        const int64_t ic = (Ng == 1) ? 0 : invmod_i64(c / g, Ng);
        for (int64_t d = 0; d < N; ++d) {
            for (int64_t a = 0; a < N; ++a) {
                int64_t t = mod(a * d - 1, N);
                if (t % g != 0) continue;
                int64_t b0 = (Ng == 1) ? 0 : mod((t / g) * ic, Ng);
                for (int64_t k = 0; k < g; ++k) {
                    MatModN m{a, b0 + k * Ng, c, d, N};
                    if (G.member(m)) {
                        members.push_back(m);
                        if (members.size() > limit) return {};
                    }
                }
            }
        }
    }
    return members;
}

} // namespace

int CosetTable::coset_of(const MatModN& x) const {
    if (small_mode) {
        uint64_t best = ~0ull;
        for (const auto& g : subgroup_elements)
            best = std::min(best, mat_key(mat_mul(g, x)));
        auto it = key_to_id.find(best);
        return it == key_to_id.end() ? -1 : it->second;
    }
    for (size_t i = 0; i < representatives.size(); ++i) {
        if (group->member(mat_mul(x, mat_inv(representatives[i]))))
            return static_cast<int>(i);
    }
    return -1;
}

CosetTable coset_enumeration(const CongruenceSubgroup& G, long index_cap) {
    const int64_t N = G.level;
    CosetTable t;
    t.level = N;
    t.group = &G;
    t.subgroup_elements = enumerate_members(G, kSmallSubgroupLimit);
    t.small_mode = !t.subgroup_elements.empty();

    const MatModN gens[2] = {mat_S(N), mat_T(N)};
    std::deque<MatModN> queue;

    auto canon_key = [&](const MatModN& x) {
        uint64_t best = ~0ull;
        for (const auto& g : t.subgroup_elements)
            best = std::min(best, mat_key(mat_mul(g, x)));
        return best;
    };

    auto try_insert = [&](const MatModN& x) {
        if (t.small_mode) {
            uint64_t key = canon_key(x);
            auto [it, fresh] = t.key_to_id.emplace(key, static_cast<int>(t.representatives.size()));
            if (!fresh) return;
        } else {
            for (const auto& r : t.representatives)
                if (G.member(mat_mul(x, mat_inv(r)))) return;
        }
        if (static_cast<long>(t.representatives.size()) >= index_cap)
            throw IndexCapExceeded("coset index exceeds configured cap");
        t.representatives.push_back(x);
        queue.push_back(x);
    };

    try_insert(mat_identity(N));
    while (!queue.empty()) {
        MatModN cur = queue.front();
        queue.pop_front();
        for (const auto& g : gens) try_insert(mat_mul(cur, g));
    }
    t.index = static_cast<long>(t.representatives.size());
    return t;
}

long covering_degree(const CongruenceSubgroup& inner, const CongruenceSubgroup& outer,
                     long index_cap) {
    if (inner.level != outer.level) throw NotASubgroup("levels differ");
    CosetTable ti = coset_enumeration(inner, index_cap);
    CosetTable to = coset_enumeration(outer, index_cap);
    // inclusion spot-check on sampled members of the inner image
    if (ti.small_mode) {
        size_t step = std::max<size_t>(1, ti.subgroup_elements.size() / 256);
        for (size_t i = 0; i < ti.subgroup_elements.size(); i += step)
            if (!outer.member(ti.subgroup_elements[i]))
                throw NotASubgroup("found an inner member outside the outer subgroup");
    }
    if (ti.index % to.index != 0)
        throw NonIntegralDegree("index(inner) is not a multiple of index(outer)");
    return ti.index / to.index;
}

CuspData cusps(const CongruenceSubgroup& G, const CosetTable& table) {
    if (!G.contains_minus_id)
        throw MinusIdentityRequired("cusp computation requires -I in the subgroup");
    const MatModN T = mat_T(G.level);
    const long n = table.index;
    std::vector<int> next(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) {
        int j = table.coset_of(mat_mul(table.representatives[static_cast<size_t>(i)], T));
        if (j < 0) throw Error("cusps: coset lookup failed");
        next[static_cast<size_t>(i)] = j;
    }
    CuspData cd;
    cd.coset_to_class.assign(static_cast<size_t>(n), -1);
    for (long i = 0; i < n; ++i) {
        if (cd.coset_to_class[static_cast<size_t>(i)] >= 0) continue;
        int cls = static_cast<int>(cd.classes.size());
        long width = 0;
        long j = i;
        while (cd.coset_to_class[static_cast<size_t>(j)] < 0) {
            cd.coset_to_class[static_cast<size_t>(j)] = cls;
            ++width;
            j = next[static_cast<size_t>(j)];
        }
        cd.classes.push_back(CuspClass{static_cast<int>(i), width});
    }
    cd.v_infinity = static_cast<int>(cd.classes.size());
    return cd;
}

CuspData cusps(const CongruenceSubgroup& G, long index_cap) {
    CosetTable t = coset_enumeration(G, index_cap);
    return cusps(G, t);
}

int num_cusps(const CongruenceSubgroup& G, long index_cap) {
    return cusps(G, index_cap).v_infinity;
}

EtaleReport etale_check(int64_t p, long index_cap) {
    if (!is_prime_i64(p)) throw InvalidLevel("etale_check requires a prime");
    CongruenceSubgroup gt = make_subgroup(GroupKind::GammaTilde, p);
    CongruenceSubgroup g0 = make_subgroup(GroupKind::Gamma0, p);
    CosetTable tt = coset_enumeration(gt, index_cap);
    CosetTable t0 = coset_enumeration(g0, index_cap);
    CuspData ct = cusps(gt, tt);
    CuspData c0 = cusps(g0, t0);
    EtaleReport rep;
    rep.pass = true;
    for (size_t i = 0; i < ct.classes.size(); ++i) {
        const MatModN& r = tt.representatives[static_cast<size_t>(ct.classes[i].rep_coset)];
        int down = t0.coset_of(r);
        if (down < 0) throw Error("etale_check: image coset lookup failed");
        long w_down = c0.classes[static_cast<size_t>(c0.coset_to_class[static_cast<size_t>(down)])].width;
        rep.widths.emplace_back(ct.classes[i].width, w_down);
        if (ct.classes[i].width != w_down && rep.witness_cusp < 0) {
            rep.pass = false;
            rep.witness_cusp = static_cast<int>(i);
        }
    }
    return rep;
}

} // namespace siegel
