#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siegel/errors.hpp"
#include "siegel/modpoly.hpp"
#include "siegel/series.hpp"

using namespace siegel;

TEST_CASE("j-invariant q-expansion") {
    auto c = j_expansion(5); // q*j(q)
    REQUIRE(c.size() == 5);
    CHECK(c[0] == 1);
    CHECK(c[1] == 744);
    CHECK(c[2] == 196884);
    CHECK(c[3] == 21493760);
    CHECK(c[4] == 864299970);
    Laurent j = j_expansion_laurent(3);
    CHECK(j.coeff(-1) == 1);
    CHECK(j.coeff(0) == 744);
    CHECK(j.coeff(1) == 196884);
    CHECK(j.coeff(2) == 21493760);
}

TEST_CASE("Laurent series arithmetic") {
    Laurent a{-1, 3, {mpz_class(1), mpz_class(2), mpz_class(3), mpz_class(4)}};
    Laurent b{0, 3, {mpz_class(1), mpz_class(6), mpz_class(7)}};
    Laurent s = ls_add(a, b);
    CHECK(s.coeff(-1) == 1);
    CHECK(s.coeff(0) == 3);
    CHECK(s.coeff(1) == 9);
    Laurent p = ls_mul(a, b);
    CHECK(p.coeff(-1) == 1);  // 1*1
    CHECK(p.coeff(0) == 8);   // 1*6 + 2*1
    Laurent inv = ls_inverse(b);
    Laurent one = ls_mul(b, inv);
    CHECK(one.coeff(0) == 1);
    CHECK(one.coeff(1) == 0);
    CHECK(one.coeff(2) == 0);
    Laurent st = ls_stretch(a, 3);
    CHECK(st.coeff(-3) == 1);
    CHECK(st.coeff(0) == 2);
    CHECK(st.coeff(-1) == 0);
    Laurent sq = ls_pow(b, 2);
    CHECK(sq.coeff(0) == 1);
    CHECK(sq.coeff(1) == 12);
}

TEST_CASE("level-2 modular polynomial, classical coefficients") {
    ModularPolynomial phi = modular_polynomial(2);
    CHECK(phi.degree() == 3);
    CHECK(phi.coeff(3, 0) == 1);
    CHECK(phi.coeff(3, 3) == 0);
    CHECK(phi.coeff(2, 2) == -1);
    CHECK(phi.coeff(2, 1) == 1488);
    CHECK(phi.coeff(2, 0) == -162000);
    CHECK(phi.coeff(1, 1) == 40773375);
    CHECK(phi.coeff(1, 0) == mpz_class("8748000000"));
    CHECK(phi.coeff(0, 0) == mpz_class("-157464000000000"));
}

TEST_CASE("symmetry and Kronecker congruence") {
    for (long p : {2, 3, 5, 7}) {
        ModularPolynomial phi = modular_polynomial(p);
        CHECK(phi.degree() == p + 1);
        CHECK(phi.coeff(p + 1, 0) == 1);
        CHECK(phi.coeff(0, p + 1) == 1);
        for (const auto& [ij, c] : phi.terms) {
            CHECK(ij.first >= ij.second);
            CHECK(phi.coeff(ij.second, ij.first) == c);
        }
        // Kronecker congruence: Phi_p = (X^p - Y)(X - Y^p) mod p,
        // checked on the dense coefficient grid
        std::vector<std::vector<mpz_class>> dense(
            static_cast<size_t>(p) + 2, std::vector<mpz_class>(static_cast<size_t>(p) + 2, 0));
        for (int i = 0; i <= p + 1; ++i)
            for (int j = 0; j <= p + 1; ++j) dense[size_t(i)][size_t(j)] = phi.coeff(i, j);
        // (X^p - Y)(X - Y^p) = X^{p+1} - X^p Y^p - XY + Y^{p+1}
        dense[size_t(p) + 1][0] -= 1;
        dense[0][size_t(p) + 1] -= 1;
        dense[size_t(p)][size_t(p)] += 1;
        dense[1][1] += 1;
        for (int i = 0; i <= p + 1; ++i)
            for (int j = 0; j <= p + 1; ++j)
                CHECK(dense[size_t(i)][size_t(j)] % p == 0);
    }
}

TEST_CASE("defining identity through a safe order") {
    for (long p : {2, 3, 5}) {
        ModularPolynomial phi = modular_polynomial(p);
        CHECK(modpoly_defining_identity_holds(phi, p * p + 2 * p + 8));
    }
}

TEST_CASE("specialization and fiber roots") {
    ModularPolynomial phi2 = modular_polynomial(2);
    // curves 2-isogenous to j = 0: Phi_2(0, Y) has the single rational root 54000
    auto above0 = rational_points_above_j(phi2, 0);
    REQUIRE(above0.size() == 1);
    CHECK(above0[0] == 54000);
    // j = 1728 is 2-isogenous to itself and to 66^3
    auto above1728 = rational_points_above_j(phi2, 1728);
    bool has_self = false, has_663 = false;
    for (const auto& r : above1728) {
        if (r == 1728) has_self = true;
        if (r == 287496) has_663 = true;
    }
    CHECK(has_self);
    CHECK(has_663);
    // denominators are cleared correctly
    IntPoly f = modpoly_specialize(phi2, mpq_class(1, 2));
    CHECK(ip_degree(f) == 3);
}

TEST_CASE("serialization round trip") {
    ModularPolynomial phi = modular_polynomial(3);
    std::string text = modpoly_to_json(phi);
    ModularPolynomial back = modpoly_from_json(text);
    CHECK(back.p == 3);
    CHECK(back.terms == phi.terms);
    CHECK_THROWS(modpoly_from_json("{\"p\": 3}"));
}

TEST_CASE("unsupported inputs") {
    CHECK_THROWS_AS(modular_polynomial(4), InvalidLevel);
    CHECK_THROWS_AS(modular_polynomial(17), CapExceeded);
}
