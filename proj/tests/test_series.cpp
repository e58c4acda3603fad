#include "doctest.h"

#include "tnum/error.hpp"
#include "tnum/mahler.hpp"
#include "tnum/series.hpp"

#include <random>

using namespace tnum;

namespace {

Series terms(const FieldRef& F, std::vector<std::pair<long, std::uint32_t>> t) {
    TermMap m;
    for (auto [n, c] : t) {
        m.emplace(BigInt(n), Fq{c});
    }
    return Series::exact(F, m);
}

Series random_series(const FieldRef& F, std::mt19937_64& rng, long lo, long hi, long horizon) {
    std::uniform_int_distribution<std::uint32_t> el(0, F->q() - 1);
    std::bernoulli_distribution keep(0.3);
    TermMap m;
    for (long n = lo; n <= hi; ++n) {
        if (keep(rng)) {
            m.emplace(BigInt(n), Fq{el(rng)});
        }
    }
    return Series::truncated(F, m, BigInt(horizon));
}

} // namespace

TEST_CASE("series_from_rational examples") {
    auto f3 = Field::make(3);
    // 1/(T-1) = sum T^{-n}: geometric series
    const Series s = series_from_rational(TPoly::from_codes(f3, {1}), TPoly::from_codes(f3, {2, 1}), 5);
    REQUIRE(s.terms().size() == 5);
    for (long n = 1; n <= 5; ++n) {
        CHECK(s.coeff(n) == Fq{1});
    }
    const Series t = series_from_rational(TPoly::from_codes(f3, {0, 1}), TPoly::from_codes(f3, {1}), 5);
    REQUIRE(t.terms().size() == 1);
    CHECK(t.terms().begin()->first == -1);
    const Series u = series_from_rational(TPoly::from_codes(f3, {1}), TPoly::from_codes(f3, {0, 1}), 5);
    REQUIRE(u.terms().size() == 1);
    CHECK(u.terms().begin()->first == 1);
    // round trip: b * (a/b) - a vanishes below the horizon shifted by deg b
    const TPoly a = TPoly::from_codes(f3, {2, 1, 1});
    const TPoly b = TPoly::from_codes(f3, {1, 0, 2, 1});
    const Series e = series_from_rational(a, b, 40);
    const AbsValue r = (Series::from_tpoly(b) * e - Series::from_tpoly(a)).abs();
    CHECK(r.is_below());
    CHECK(r.exponent == 40 - 3 + 1);
    try {
        series_from_rational(a, TPoly::zero(f3), 5);
        FAIL("expected DivisionByZeroPoly");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::DivisionByZeroPoly);
    }
}

TEST_CASE("series_coeff examples") {
    auto f2 = Field::make(2);
    const Series alpha = mahler_alpha(f2, 2, 64);
    CHECK(alpha.coeff(4) == Fq{1});
    CHECK(alpha.coeff(3) == Fq{0});
    CHECK(alpha.coeff(BigInt(1) << 100) == Fq{1});  // generator past the horizon
    const Series finite = Series::truncated(f2, {{BigInt(1), Fq{1}}}, 10);
    try {
        finite.coeff(11);
        FAIL("expected BeyondHorizon");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BeyondHorizon);
    }
}

TEST_CASE("series_abs examples") {
    auto f2 = Field::make(2);
    CHECK(terms(f2, {{3, 1}, {5, 1}}).abs() == AbsValue::exact(3));
    CHECK(Series(f2).abs() == AbsValue::zero());
    // generator series with all-zero coefficients through K = 100
    const Series z = mahler_alpha(f2, 2, 100) - mahler_alpha(f2, 2, 100);
    CHECK(z.abs() == AbsValue::below(101));
    CHECK(z.generator() != nullptr);
}

TEST_CASE("series_arith examples") {
    auto f2 = Field::make(2);
    auto f3 = Field::make(3);
    const Series x = Series::truncated(f2, {{BigInt(1), Fq{1}}}, 50);
    const Series sum = x + x;
    CHECK(sum.terms().empty());
    CHECK(sum.abs() == AbsValue::below(51));
    CHECK((terms(f2, {{2, 1}}) * terms(f2, {{3, 1}})).terms() == terms(f2, {{5, 1}}).terms());
    const Series a3 = mahler_alpha(f3, 3, 500);
    const Series triple = a3 + a3 + a3;
    CHECK(triple.abs().is_below());
    CHECK(triple.abs().exponent == 501);
    try {
        (void)(x + Series(f3));
        FAIL("expected FieldMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::FieldMismatch);
    }
}

TEST_CASE("series_arith horizons") {
    auto f2 = Field::make(2);
    const Series x = Series::truncated(f2, {{BigInt(2), Fq{1}}}, 10);
    const Series y = Series::truncated(f2, {{BigInt(3), Fq{1}}}, 20);
    CHECK(*(x + y).horizon() == 10);
    // min(K_x + N_y, K_y + N_x) = min(13, 22)
    CHECK(*(x * y).horizon() == 13);
}

TEST_CASE("series_pow_frobenius examples") {
    auto f2 = Field::make(2);
    const Series s = terms(f2, {{2, 1}, {4, 1}});
    CHECK(s.frobenius_pow(2).terms() == terms(f2, {{4, 1}, {8, 1}}).terms());
    CHECK(s.frobenius_pow(1).terms() == s.terms());
    CHECK(frobenius_residual(f2, 2, 1000) == AbsValue::below(1001));
    try {
        s.frobenius_pow(3);
        FAIL("expected NotAPowerOfCharacteristic");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotAPowerOfCharacteristic);
    }
}

TEST_CASE("series_pth_root examples") {
    auto f2 = Field::make(2);
    CHECK(terms(f2, {{4, 1}, {8, 1}}).pth_root().terms() == terms(f2, {{2, 1}, {4, 1}}).terms());
    try {
        terms(f2, {{3, 1}}).pth_root();
        FAIL("expected NotAPthPower");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotAPthPower);
    }
    CHECK(Series(f2).pth_root().abs() == AbsValue::zero());
    const Series tr = Series::truncated(f2, {}, 9);
    CHECK(*tr.pth_root().horizon() == 4);
}

TEST_CASE("series_dist examples") {
    auto f2 = Field::make(2);
    const Series x = mahler_alpha(f2, 2, 300);
    CHECK(series_dist(x, x) == AbsValue::below(301));
    const Series fin = terms(f2, {{1, 1}});
    CHECK(series_dist(fin, fin) == AbsValue::zero());
    CHECK(series_dist(terms(f2, {{1, 1}}), terms(f2, {{2, 1}})) == AbsValue::exact(1));
    const MahlerSpec spec(f2, 1, {1}, 2);
    const Series xi_s = xi(spec, 200);
    const Series a01 = approximant(spec, {0, 1}, 200);
    CHECK(series_dist(xi_s, a01) == AbsValue::exact(64));
}

TEST_CASE("series invariants on random data") {
    std::mt19937_64 rng(11);
    for (auto F : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
        for (int trial = 0; trial < 200; ++trial) {
            const Series x = random_series(F, rng, -3, 30, 40);
            const Series y = random_series(F, rng, -2, 35, 45);
            const AbsValue ax = x.abs();
            const AbsValue ay = y.abs();
            if (ax.is_exact() && ay.is_exact()) {
                // ultrametric: valuation of the sum >= min, equal when they differ
                const AbsValue s = (x + y).abs();
                const BigInt lo = std::min(ax.exponent, ay.exponent);
                if (s.is_exact()) {
                    CHECK(s.exponent >= lo);
                }
                if (ax.exponent != ay.exponent) {
                    CHECK(s == AbsValue::exact(lo));
                }
                CHECK((x * y).abs() == AbsValue::exact(ax.exponent + ay.exponent));
            }
            // Frobenius agrees with repeated multiplication
            const BigInt p = F->p();
            Series prod = x;
            for (std::uint32_t i = 1; i < F->p(); ++i) {
                prod = prod * x;
            }
            const Series fr = x.frobenius_pow(p);
            const BigInt common = std::min(*fr.horizon(), *prod.horizon());
            CHECK(fr.truncated_to(common).terms() == prod.truncated_to(common).terms());
            // p-th root undoes Frobenius
            const Series back = fr.pth_root();
            CHECK(back.terms() == x.terms());
            CHECK(*back.horizon() == *x.horizon());
        }
    }
}

TEST_CASE("frobenius residual for several (q, r)") {
    for (auto [p, e, r] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{2, 1, 2}, {3, 1, 3}, {2, 2, 4}, {2, 1, 4}}) {
        auto F = Field::make(p, e);
        for (long h : {10L, 100L, 1000L}) {
            const AbsValue v = frobenius_residual(F, r, h);
            CHECK(v.is_below());
            CHECK(v.exponent == h + 1);
        }
    }
}

TEST_CASE("adaptive refinement reaches the exact value") {
    auto f2 = Field::make(2);
    const MahlerSpec spec(f2, 1, {1}, 2);
    const Series d = xi(spec, 10) - approximant(spec, {0, 1}, 10);
    CHECK(d.abs().is_below());
    CHECK(abs_refined(d) == AbsValue::exact(64));
}
