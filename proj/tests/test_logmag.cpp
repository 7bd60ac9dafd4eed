#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siegel/errors.hpp"
#include "siegel/logmag.hpp"

#include "ln_oracle.hpp"

#include <random>

using namespace siegel;
using lnoracle::QI;
using lnoracle::oracle_ln;

namespace {

bool encloses(const LogMagnitude& x, const QI& truth) {
    return x.lo <= truth.lo && truth.hi <= x.hi;
}

mpq_class two_pow(long e) {
    mpz_class sh;
    mpz_mul_2exp(sh.get_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<mp_bitcnt_t>(e >= 0 ? e : -e));
    return e >= 0 ? mpq_class(sh) : mpq_class(1, sh);
}

} // namespace

TEST_CASE("exact singletons and algebra on them") {
    LogMagnitude z = lm_exact(0);
    CHECK(z.lo == 0);
    CHECK(z.hi == 0);
    LogMagnitude r = lm_exact(mpq_class(3, 7));
    LogMagnitude s = lm_scale(r, mpq_class(14));
    CHECK(s.lo == 6);
    CHECK(s.hi == 6);
    LogMagnitude t = lm_add(r, lm_exact(mpq_class(4, 7)));
    CHECK(t.lo == 1);
    CHECK(t.hi == 1);
    LogMagnitude neg = lm_scale(r, mpq_class(-2));
    CHECK(neg.lo == mpq_class(-6, 7));
    CHECK(neg.hi == mpq_class(-6, 7));
}

TEST_CASE("ln_interval basics") {
    CHECK_THROWS_AS(ln_interval(mpq_class(0), 64), NonPositiveArgument);
    CHECK_THROWS_AS(ln_interval(mpq_class(-3), 64), NonPositiveArgument);
    LogMagnitude one = ln_interval(mpq_class(1), 64);
    CHECK(one.lo <= 0);
    CHECK(one.hi >= 0);
    LogMagnitude e2 = ln_interval(mpq_class(2), 128);
    CHECK(encloses(e2, lnoracle::ln2_interval()));
}

TEST_CASE("enclosure soundness and width contract, 1000 randomized ops") {
    std::mt19937_64 rng(20260823);
    std::uniform_int_distribution<long> numd(1, 1000000), dend(1, 1000000);
    std::uniform_int_distribution<int> precd(4, 9); // 2^4 .. 2^9 bits
    std::uniform_int_distribution<int> opd(0, 2);

    int ops = 0;
    LogMagnitude acc = lm_exact(0);
    QI acc_truth{0, 0};
    while (ops < 1000) {
        mpq_class q(numd(rng), dend(rng));
        q.canonicalize();
        unsigned prec = 1u << precd(rng);
        LogMagnitude lv = ln_interval(q, prec);
        QI truth = oracle_ln(q);
        ++ops;
        REQUIRE(encloses(lv, truth));
        // width <= 2^{1-prec} * max(1, |ln q|)
        mpq_class mag = std::max(mpq_class(1), std::max(mpq_class(abs(truth.lo)), mpq_class(abs(truth.hi))));
        REQUIRE(lv.width() <= two_pow(1 - static_cast<long>(prec)) * mag * mpq_class(101, 100));

        switch (opd(rng)) {
        case 0:
            acc = lm_add(acc, lv);
            acc_truth = qi_add(acc_truth, truth);
            break;
        case 1: {
            mpq_class k(static_cast<long>(numd(rng) % 19) - 9);
            acc = lm_add(lm_scale(acc, k), lv);
            acc_truth = qi_add(lnoracle::qi_scale(acc_truth, k), truth);
            break;
        }
        case 2:
            if (acc_truth.lo > mpq_class(1, 100)) {
                LogMagnitude l2 = lm_ln_of(acc, prec);
                ++ops;
                // oracle ln of the truth endpoints brackets ln(ln x)
                QI lo_t = oracle_ln(acc_truth.lo);
                QI hi_t = oracle_ln(acc_truth.hi);
                REQUIRE(l2.lo <= lo_t.lo);
                REQUIRE(hi_t.hi <= l2.hi);
            }
            break;
        }
        ++ops;
        REQUIRE(acc.lo <= acc_truth.lo);
        REQUIRE(acc_truth.hi <= acc.hi);
    }
}

TEST_CASE("monotone refinement") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> numd(2, 1000000);
    for (int i = 0; i < 50; ++i) {
        mpq_class q(numd(rng), numd(rng));
        q.canonicalize();
        if (q == 1) continue;
        for (unsigned prec = 16; prec <= 512; prec *= 2) {
            LogMagnitude a = ln_interval(q, prec);
            LogMagnitude b = ln_interval(q, 2 * prec);
            CHECK(b.width() <= a.width());
        }
    }
}

TEST_CASE("lm_ln_of domain errors") {
    CHECK_THROWS_AS(lm_ln_of(lm_exact(mpq_class(-1)), 64), LogOfNonPositiveLog);
    CHECK_THROWS_AS(lm_ln_of(lm_exact(0), 64), LogOfNonPositiveLog);
    CHECK_THROWS_AS(lm_ln_of(LogMagnitude{mpq_class(-1), mpq_class(1)}, 64), IndeterminateSign);
}

TEST_CASE("certified comparison semantics") {
    LogMagnitude a{mpq_class(1), mpq_class(2)};
    LogMagnitude b{mpq_class(2), mpq_class(3)};
    LogMagnitude c{mpq_class(3, 2), mpq_class(5, 2)};
    LogMagnitude d{mpq_class(3), mpq_class(4)};
    CHECK(lm_leq_certified(a, b) == Tri::True);
    CHECK(lm_leq_certified(d, a) == Tri::False);
    CHECK(lm_leq_certified(b, a) == Tri::Unknown); // touching endpoints
    CHECK(lm_leq_certified(a, c) == Tri::Unknown);
    CHECK(lm_leq_certified(c, a) == Tri::Unknown);
}

TEST_CASE("decimal rendering") {
    CHECK(rational_to_decimal(mpq_class(1, 2)) == "0.5");
    CHECK(rational_to_decimal(mpq_class(0)) == "0");
    CHECK(rational_to_decimal(mpq_class(-7)) == "-7");
    // 1/3 to 15 significant digits
    CHECK(rational_to_decimal(mpq_class(1, 3)) == "0.333333333333333");
}
