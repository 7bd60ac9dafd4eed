#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace siegel {

// Element of SL2(Z/N), entries reduced to [0, N).
struct MatModN {
    int64_t a = 1, b = 0, c = 0, d = 1;
    int64_t level = 1;

    bool operator==(const MatModN& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d && level == o.level;
    }
};

MatModN mat_mul(const MatModN& x, const MatModN& y);
MatModN mat_inv(const MatModN& x);
MatModN mat_identity(int64_t N);
MatModN mat_neg(const MatModN& x);
MatModN mat_S(int64_t N); // [[0,-1],[1,0]]
MatModN mat_T(int64_t N); // [[1,1],[0,1]]
uint64_t mat_key(const MatModN& x);

enum class GroupKind { Gamma0, Gamma1, GammaFull, GammaTilde, Custom };

struct CongruenceSubgroup {
    int64_t level = 1;
    GroupKind kind = GroupKind::GammaFull;
    bool contains_minus_id = false;
    std::function<bool(const MatModN&)> member;
    std::string name;
};

CongruenceSubgroup make_subgroup(GroupKind kind, int64_t N);
CongruenceSubgroup make_custom_subgroup(int64_t N, std::function<bool(const MatModN&)> pred,
                                        const std::string& name = "custom");

// Right-coset table of the subgroup's image in SL2(Z/N), built by BFS
// under right multiplication by S and T. Coset identity uses a canonical
// key (minimum of g*x over the enumerated subgroup image) when the image
// is small, and a representative scan otherwise.
struct CosetTable {
    int64_t level = 1;
    long index = 0;
    std::vector<MatModN> representatives;
    bool small_mode = false;
    std::vector<MatModN> subgroup_elements;            // small mode only
    std::unordered_map<uint64_t, int> key_to_id;       // small mode only
    const CongruenceSubgroup* group = nullptr;

    int coset_of(const MatModN& x) const;
};

CosetTable coset_enumeration(const CongruenceSubgroup& G, long index_cap = 1000000);

// index(inner) / index(outer) with an inclusion spot-check on sampled
// members of inner.
long covering_degree(const CongruenceSubgroup& inner, const CongruenceSubgroup& outer,
                     long index_cap = 1000000);

struct CuspClass {
    int rep_coset = 0;
    long width = 0;
};

struct CuspData {
    std::vector<CuspClass> classes;
    int v_infinity = 0;
    std::vector<int> coset_to_class; // coset id -> cusp class id
};

CuspData cusps(const CongruenceSubgroup& G, const CosetTable& table);
CuspData cusps(const CongruenceSubgroup& G, long index_cap = 1000000);
int num_cusps(const CongruenceSubgroup& G, long index_cap = 1000000);

struct EtaleReport {
    bool pass = false;
    // per Gamma-tilde cusp: (width upstairs, width of image cusp downstairs)
    std::vector<std::pair<long, long>> widths;
    int witness_cusp = -1; // first cusp with ratio != 1, or -1
};

// Checks that the covering X_Gamma-tilde -> X_0(p) has ramification
// index 1 at every cusp.
EtaleReport etale_check(int64_t p, long index_cap = 1000000);

bool is_prime_i64(int64_t n);

} // namespace siegel
