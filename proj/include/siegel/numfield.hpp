#pragma once

#include "siegel/intpoly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace siegel {

struct NumberField {
    IntPoly minpoly;       // monic irreducible
    int degree = 0;
    mpz_class disc;        // absolute discriminant of the field
    bool disc_certified = false;
};

struct FinitePlace {
    mpz_class rational_prime;
    int residue_degree = 1;
    int ramification_index = 1;

    mpz_class norm() const {
        mpz_class n;
        mpz_pow_ui(n.get_mpz_t(), rational_prime.get_mpz_t(),
                   static_cast<unsigned long>(residue_degree));
        return n;
    }
};

struct PlaceSet {
    NumberField field;
    std::vector<FinitePlace> finite_places;
    int infinite_count = 0; // r1 + r2
    int s = 0;              // infinite_count + |finite_places|
    mpz_class ell;          // largest rational prime under S, or 1

    std::vector<mpz_class> finite_norms() const {
        std::vector<mpz_class> v;
        v.reserve(finite_places.size());
        for (const auto& p : finite_places) v.push_back(p.norm());
        return v;
    }
};

mpz_class poly_discriminant(const IntPoly& f);

// Returns (D, certified). With a claimed value, checks disc(f)/D is a
// positive perfect square and returns it uncertified. Without one, runs
// Dedekind's criterion at every prime whose square divides disc(f).
std::pair<mpz_class, bool> field_discriminant(const IntPoly& f,
                                              const std::optional<mpz_class>& claimed_D);

// Validates monic + irreducible, fills degree and discriminant.
NumberField make_number_field(const IntPoly& f,
                              const std::optional<mpz_class>& claimed_D = std::nullopt);

// Splitting type of q from the factorization of minpoly mod q. Refuses
// primes dividing the index [O_K : Z[theta]].
std::vector<FinitePlace> split_prime(const NumberField& field, const mpz_class& q);

std::pair<int, int> infinite_places(const NumberField& field);

PlaceSet build_place_set(const NumberField& field, const std::vector<mpz_class>& rational_primes);

mpz_class euler_phi(const mpz_class& N);

// All integer roots of a nonzero integer polynomial (Sturm bisection).
std::vector<mpz_class> ip_integer_roots(const IntPoly& f);

// All rational roots of an integer polynomial.
std::vector<mpq_class> ip_rational_roots(const IntPoly& f);

// Throws ReduciblePolynomial / IrreducibilityUndetermined; accepts only
// polynomials certified irreducible over Q (small-prime reduction, with
// rational-root exclusion deciding degrees <= 3).
void certify_irreducible(const IntPoly& f);

} // namespace siegel
