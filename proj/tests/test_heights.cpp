#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siegel/errors.hpp"
#include "siegel/heights.hpp"

#include "ln_oracle.hpp"

#include <algorithm>

using namespace siegel;
using lnoracle::QI;
using lnoracle::oracle_ln;

namespace {

IntPoly P(std::initializer_list<long> cs) {
    IntPoly f;
    for (long c : cs) f.emplace_back(c);
    return ip_normalize(f);
}

bool encloses(const LogMagnitude& x, const QI& truth) {
    return x.lo <= truth.lo && truth.hi <= x.hi;
}

const mpq_class kTol = mpq_class(1, mpz_class("1000000000000")); // 1e-12

} // namespace

TEST_CASE("rational heights") {
    LogMagnitude h0 = height_rational(mpq_class(0));
    CHECK(h0.lo == 0);
    CHECK(h0.hi == 0);
    LogMagnitude h1 = height_rational(mpq_class(1));
    CHECK(h1.lo == 0);
    CHECK(h1.hi == 0);
    LogMagnitude hm1 = height_rational(mpq_class(-1));
    CHECK(hm1.hi == 0);
    CHECK(encloses(height_rational(mpq_class(1728)), oracle_ln(1728)));
    CHECK(encloses(height_rational(mpq_class(2, 3)), oracle_ln(3)));
    CHECK_THROWS_AS(height_rational(mpz_class(1), mpz_class(0)), ZeroDenominator);
    CHECK_THROWS(height_rational(mpz_class(2), mpz_class(4))); // not in lowest terms
}

TEST_CASE("inversion invariance: h(a/b) = h(b/a) exactly") {
    for (auto [a, b] : {std::pair<long, long>{2, 3}, {7, 1}, {-5, 9}, {1728, 691}}) {
        LogMagnitude x = height_rational(mpz_class(a), mpz_class(b));
        LogMagnitude y = height_rational(mpz_class(b), mpz_class(a));
        CHECK(x.lo == y.lo);
        CHECK(x.hi == y.hi);
    }
}

TEST_CASE("power rule on rationals") {
    // h(x^n) = n h(x) for x = a/b in lowest terms; certified via the oracle
    for (long n = 1; n <= 5; ++n) {
        for (auto [a, b] : {std::pair<long, long>{2, 3}, {5, 2}, {-7, 4}}) {
            mpq_class x(a, b);
            x.canonicalize();
            mpq_class xn = 1;
            for (long i = 0; i < n; ++i) xn *= x;
            LogMagnitude hn = height_rational(xn);
            mpz_class m = std::max(mpz_class(abs(x.get_num())), mpz_class(x.get_den()));
            QI truth = lnoracle::qi_scale(oracle_ln(mpq_class(m)), mpq_class(n));
            CHECK(encloses(hn, truth));
        }
    }
}

TEST_CASE("algebraic numbers: construction guards") {
    CHECK_THROWS_AS(make_algebraic_number(P({-1, 0, 1})), ReduciblePolynomial);
    CHECK_THROWS(make_algebraic_number(P({5})));
    AlgebraicNumber a = make_algebraic_number(P({2, -4})); // 2 - 4x, root 1/2
    CHECK(a.minpoly == P({-1, 2})); // primitive, positive leading coefficient
}

TEST_CASE("heights of roots of unity vanish") {
    for (auto poly : {P({1, 1}), P({1, 0, 1}), P({1, 1, 1}), P({1, -1, 1})}) {
        AlgebraicNumber a = make_algebraic_number(poly);
        LogMagnitude h = height_algebraic(a, kTol);
        CHECK(h.lo == 0);
        CHECK(h.hi <= kTol);
    }
}

TEST_CASE("golden ratio height = ln(phi)/2") {
    AlgebraicNumber a = make_algebraic_number(P({-1, -1, 1}));
    LogMagnitude h = height_algebraic(a, mpq_class(1, mpz_class("100000000000000")));
    // tight rational enclosure of phi from an integer square root of 5*10^80
    mpz_class scale = 1;
    for (int i = 0; i < 40; ++i) scale *= 10;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), mpz_class(5 * scale * scale).get_mpz_t());
    mpq_class phi_lo = (mpq_class(r, scale) + 1) / 2;
    mpq_class phi_hi = (mpq_class(r + 1, scale) + 1) / 2;
    mpq_class half(1, 2);
    QI truth{lnoracle::qi_scale(oracle_ln(phi_lo), half).lo,
             lnoracle::qi_scale(oracle_ln(phi_hi), half).hi};
    // h certifiably contains ln(phi)/2, which lies inside truth; overlap
    // plus small width pins it within 1e-9 of the oracle value
    CHECK(h.lo <= truth.hi);
    CHECK(truth.lo <= h.hi);
    CHECK(h.width() <= mpq_class(1, 1000000000)); // within 1e-9
}

TEST_CASE("degree-1 and integer algebraic heights agree with rationals") {
    AlgebraicNumber a = make_algebraic_number(P({-1728, 1}));
    LogMagnitude h = height_algebraic(a, kTol);
    CHECK(encloses(h, oracle_ln(1728)));
    AlgebraicNumber b = make_algebraic_number(P({-1, 2}));
    CHECK(encloses(height_algebraic(b, kTol), oracle_ln(2)));
}

TEST_CASE("quadratic irrational: h(sqrt 2) = ln(2)/2") {
    AlgebraicNumber a = make_algebraic_number(P({-2, 0, 1}));
    LogMagnitude h = height_algebraic(a, kTol);
    CHECK(encloses(h, lnoracle::qi_scale(oracle_ln(2), mpq_class(1, 2))));
}

TEST_CASE("non-monic minimal polynomial: h of 2/3-like Mahler inputs") {
    // 3x^2 - 2: roots +-sqrt(2/3), M = 3, h = ln(3)/2... Mahler: |lc| * prod max(1,|root|)
    // roots have |.| < 1, so M = 3 and h = ln(3)/2
    AlgebraicNumber a = make_algebraic_number(P({-2, 0, 3}));
    LogMagnitude h = height_algebraic(a, kTol);
    CHECK(encloses(h, lnoracle::qi_scale(oracle_ln(3), mpq_class(1, 2))));
}

TEST_CASE("class-number-one CM j-invariants") {
    auto list = cm_j_invariants();
    REQUIRE(list.size() == 13);
    std::vector<long> discs;
    bool has0 = false, has1728 = false, has_163 = false, has_32768 = false;
    for (const auto& v : list) {
        discs.push_back(v.disc);
        if (v.j == 0) has0 = true;
        if (v.j == 1728) has1728 = true;
        if (v.j == mpz_class("-262537412640768000")) has_163 = true;
        if (v.j == -32768) has_32768 = true;
    }
    CHECK(has0);
    CHECK(has1728);
    CHECK(has_163);
    CHECK(has_32768);
    std::vector<long> expect = {-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163};
    std::sort(discs.begin(), discs.end(), std::greater<>());
    CHECK(discs == expect);
}

TEST_CASE("point bound verification") {
    NumberField q = make_number_field(IntPoly{mpz_class(0), mpz_class(1)});
    PlaceSet s_inf = build_place_set(q, {});
    PointBoundReport rep = verify_point_bound(11, mpq_class(-32768), s_inf);
    CHECK(rep.verdict == Tri::True);
    CHECK(rep.height.hi < rep.bound.lo);

    CHECK_THROWS_AS(verify_point_bound(11, mpq_class(1, 11), s_inf), NotAnSInteger);
    CHECK_THROWS_AS(verify_point_bound(13, mpq_class(0), s_inf), ExcludedPrime);

    PlaceSet s11 = build_place_set(q, {mpz_class(11)});
    CHECK_NOTHROW(verify_point_bound(11, mpq_class(1, 11), s11));
    CHECK_THROWS_AS(verify_point_bound(11, mpq_class(1, 7), s11), NotAnSInteger);
}
