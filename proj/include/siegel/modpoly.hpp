#pragma once

#include "siegel/intpoly.hpp"
#include "siegel/series.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

// Classical modular polynomial Phi_p(X, Y), stored as a sparse symmetric
// coefficient map with i >= j.
struct ModularPolynomial {
    long p = 0;
    std::map<std::pair<int, int>, mpz_class> terms; // (i, j) with i >= j

    mpz_class coeff(int i, int j) const {
        if (i < j) std::swap(i, j);
        auto it = terms.find({i, j});
        return it == terms.end() ? mpz_class(0) : it->second;
    }
    int degree() const { return static_cast<int>(p) + 1; }
};

// Builds Phi_p from q-expansions (power sums of the p+1 conjugate
// expansions, Newton's identities, then expression of each symmetric
// function as a polynomial in j). Default cap keeps runtime desk-scale.
ModularPolynomial modular_polynomial(long p, long cap = 13);

// Phi_p(j0, Y) as an integer polynomial in Y (denominators of j0 cleared).
IntPoly modpoly_specialize(const ModularPolynomial& phi, const mpq_class& j0);

// All rational y with Phi_p(j0, y) = 0.
std::vector<mpq_class> rational_points_above_j(const ModularPolynomial& phi, const mpq_class& j0);

// Exact check of Phi_p(j(q), j(q^p)) = 0 through the given q-order.
bool modpoly_defining_identity_holds(const ModularPolynomial& phi, long order);

std::string modpoly_to_json(const ModularPolynomial& phi);
ModularPolynomial modpoly_from_json(const std::string& text);

} // namespace siegel
