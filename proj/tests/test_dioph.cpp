#include "doctest.h"

#include "tnum/dioph.hpp"
#include "tnum/error.hpp"

#include <random>

using namespace tnum;

namespace {

MahlerSpec tail2() { return MahlerSpec(Field::make(2), 1, {1}, 2); }

TPoly tp(const FieldRef& F, std::vector<std::uint32_t> codes) { return TPoly::from_codes(F, codes); }

XPoly random_xpoly(const FieldRef& F, std::mt19937_64& rng, long max_deg_x, long max_deg_t) {
    std::uniform_int_distribution<std::uint32_t> code(0, F->q() - 1);
    std::uniform_int_distribution<long> dx(0, max_deg_x);
    std::uniform_int_distribution<long> dt(0, max_deg_t);
    for (;;) {
        std::vector<TPoly> cs;
        const long n = dx(rng);
        for (long i = 0; i <= n; ++i) {
            std::vector<Fq> c(static_cast<std::size_t>(dt(rng) + 1));
            for (auto& x : c) {
                x = Fq{code(rng)};
            }
            cs.emplace_back(F, c);
        }
        XPoly P(F, cs);
        if (!P.is_zero()) {
            return P;
        }
    }
}

} // namespace

TEST_CASE("xpoly_height examples") {
    auto F = Field::make(2);
    CHECK(xpoly_height(XPoly::from_codes(F, {{0, 1}, {0, 0, 1}})) == QPow::power(2));
    CHECK(xpoly_height(XPoly::from_codes(F, {{1}, {1}})) == QPow::power(0));
    CHECK_THROWS_AS(xpoly_height(XPoly(F)), Error);
}

TEST_CASE("height is multiplicative on random pairs") {
    std::mt19937_64 rng(7);
    for (auto F : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
        int bad = 0;
        for (int i = 0; i < 1000; ++i) {
            const XPoly P = random_xpoly(F, rng, 4, 6);
            const XPoly Q = random_xpoly(F, rng, 4, 6);
            bad += (xpoly_height(P * Q) == xpoly_height(P) * xpoly_height(Q)) ? 0 : 1;
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("xpoly_eval examples") {
    auto F = Field::make(2);
    const XPoly X = XPoly::from_codes(F, {{0}, {1}});
    CHECK(xpoly_eval(X, Series::monomial(F, Fq{1}, 3)).abs == AbsValue::exact(3));

    const XPoly lin = XPoly::from_codes(F, {{1}, {0, 1}});  // T X - 1 over F_2
    const auto inv_t = series_from_rational(tp(F, {1}), tp(F, {0, 1}), 40);
    CHECK(!xpoly_eval(lin, inv_t).abs.is_exact());
    CHECK(xpoly_eval(lin, series_from_rational(tp(F, {1}), tp(F, {1, 1}), 40)).abs == AbsValue::exact(1));

    const MahlerSpec s = tail2();
    for (long horizon : {64L, 256L, 1024L}) {
        const XPoly A = annihilator(s, {0, 1});
        const AbsValue v = xpoly_eval(A, approximant(s, {0, 1}, horizon)).abs;
        CHECK(v.is_below());
    }
}

TEST_CASE("liouville_check examples") {
    auto F = Field::make(2);
    // 1/T against 1/(T+1): |diff| = q^-2, bound q^-1 q^-1.
    const auto chk = liouville_check(tp(F, {1}), tp(F, {0, 1}), tp(F, {1}), tp(F, {1, 1}));
    CHECK(chk.measured == AbsValue::exact(2));
    CHECK(chk.bound == 2);
    CHECK(chk.pass);

    const auto a = rational_descriptor(tp(F, {1}), tp(F, {0, 1}), 32);
    const auto b = rational_descriptor(tp(F, {1}), tp(F, {1, 1}), 32);
    const auto via = liouville_check(a, b);
    CHECK(via.measured == AbsValue::exact(2));
    CHECK(via.pass);

    CHECK_THROWS_AS(liouville_check(a, a), Error);
    CHECK_THROWS_AS(liouville_check(tp(F, {1}), tp(F, {0, 1}), tp(F, {0, 1}), tp(F, {0, 0, 1})), Error);
}

TEST_CASE("rationals of height at most q^3") {
    // Reduced a/b with b monic: q^{2d+1} of them.
    CHECK(rationals_of_height(Field::make(2), 0).size() == 2);
    CHECK(rationals_of_height(Field::make(2), 1).size() == 8);
    CHECK(rationals_of_height(Field::make(2), 3).size() == 128);
    CHECK(rationals_of_height(Field::make(3), 1).size() == 27);
    CHECK(rationals_of_height(Field::make(3), 3).size() == 2187);
}

TEST_CASE("liouville over all rationals of height at most q^3") {
    for (auto F : {Field::make(2), Field::make(3)}) {
        const auto sum = liouville_rationals(F, 3, 97);
        const auto n = rationals_of_height(F, 3).size();
        CHECK(sum.pairs == n * (n - 1) / 2);
        CHECK(sum.failures == 0);
        CHECK(sum.series_checked > 0);
        CHECK(sum.series_mismatches == 0);
    }
}

TEST_CASE("liouville over approximant pairs") {
    const MahlerSpec s = tail2();
    const BigInt horizon = ipow(BigInt(4), 5) + 1;
    const auto a = approximant_descriptor(s, {0, 1}, horizon);
    const auto b = approximant_descriptor(s, {0, 5}, horizon);
    CHECK(a.degree_bound == 2);
    CHECK(a.height_bound == annihilator_height(s, {0, 1}));
    CHECK(xpoly_eval(a.defining, a.root).abs.is_below());
    const auto chk = liouville_check(a, b);
    CHECK(chk.pass);
    // alpha(0, 1) and alpha(0, 5) differ first at T^{-4^3}: b(0, 2) = 0, b(0, 3) = 1.
    CHECK(chk.measured == AbsValue::exact(ipow(BigInt(4), 3)));

    for (const MahlerSpec& spec : {tail2(), MahlerSpec(Field::make(3), 1, {1}, 2)}) {
        const auto all = liouville_approximants(spec, 2, 3);
        CHECK(all.failures == 0);
        CHECK(all.pairs.size() + all.coincident + all.skipped == 9);
        CHECK(!all.pairs.empty());
    }
}

TEST_CASE("dirichlet_witness") {
    const MahlerSpec s = tail2();
    const Series x = xi(s, 4096);
    {
        const auto w = dirichlet_witness(x, 1, 6);
        CHECK(w.value_valuation >= 6);
        CHECK(w.exponent_ratio >= Rational(4, 5));
        CHECK(w.guaranteed_valuation == 6);
        CHECK(w.construction_constant == 5);
        CHECK(w.poly.degree() <= 1);
        CHECK(w.poly.max_coeff_degree() < 6);
        CHECK(xpoly_eval(w.poly, x).abs == AbsValue::exact(w.value_valuation));
    }
    {
        const auto w = dirichlet_witness(x, 2, 5);
        CHECK(w.value_valuation >= 10);
        CHECK(w.exponent_ratio >= Rational(3, 2));
    }
    for (long n : {1L, 2L}) {
        const auto w = dirichlet_witness(x, n, 6);
        CHECK(w.exponent_ratio >= Rational(2 * n - 1, 2));
        CHECK(w.value_valuation >= (n + 1) * 6 - n - w.construction_constant);
    }

    // Polynomial part is removed and recorded.
    auto F = Field::make(3);
    const Series shifted = xi(MahlerSpec(F, 1, {1}, 2), 4096) + Series::from_tpoly(tp(F, {1, 2}));
    const auto w = dirichlet_witness(shifted, 1, 4);
    CHECK(w.shift == tp(F, {1, 2}));
    CHECK(w.value_valuation >= 4);

    const Series rational = series_from_rational(tp(F, {1}), tp(F, {2, 1}), 64);
    CHECK_THROWS_AS(dirichlet_witness(rational, 1, 3), Error);
    try {
        dirichlet_witness(rational, 1, 3);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ZeroValueWitness);
    }
    CHECK_THROWS_AS(dirichlet_witness(x, 0, 3), Error);
    CHECK_THROWS_AS(dirichlet_witness(x, 1, 1), Error);
    CHECK_THROWS_AS(dirichlet_witness(x, 100, 100), Error);
}

TEST_CASE("applio_consistency") {
    const MahlerSpec s = tail2();
    const auto rep = applio_consistency(s, 0, 3);
    CHECK(rep.all_pass);
    CHECK(rep.claimed_ratio == 8);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& row : rep.rows) {
        CHECK(row.distance_ratio == 8);
    }
    CHECK(rep.rows[0].k == 1);
    CHECK(rep.rows[1].k == 5);
    CHECK(rep.rows[2].k == 9);
    CHECK(*rep.rows[0].beta_ratio == 256);
    CHECK(*rep.rows[1].beta_ratio == 256);
    CHECK(!rep.rows[2].beta_ratio);
    CHECK(rep.theta == 256);
    CHECK(rep.d == 2);
    CHECK(rep.delta == 6);
    CHECK(rep.window_lower == 7);
    // r_0 r_1^2 r_2^2 / (r_1^2 - r_0^2) - 1 = 2 * 16 * 256 / 12 - 1.
    CHECK(rep.window_upper == Rational(2045, 3));

    const auto rep1 = applio_consistency(s, 1, 3);
    CHECK(rep1.all_pass);
    CHECK(rep1.claimed_ratio == 64);

    const auto rep3 = applio_consistency(MahlerSpec(Field::make(3), 1, {1}, 2), 0, 2);
    CHECK(rep3.all_pass);
    CHECK(rep3.claimed_ratio == 27);

    CHECK_THROWS_AS(applio_consistency(s, 0, 1), Error);
}

TEST_CASE("type_bounds") {
    const auto t2 = type_bounds(tail2(), 5);
    CHECK(t2.lower == 3);
    CHECK(t2.upper_tstar == 18);
    CHECK(t2.upper_t == 20);
    CHECK(!t2.refined_tstar);
    for (const auto& row : t2.rows) {
        CHECK(row.upper_t == 20);
    }

    const auto t3 = type_bounds(MahlerSpec(Field::make(2), 1, {1}, 3), 5);
    CHECK(t3.refined_tstar == BigInt(21));
    CHECK(t3.refined_t == BigInt(24));
    CHECK(t3.upper_t == 6 + 2 * 27);
    CHECK(t3.lower == 5);

    std::vector<std::uint64_t> growing{1};
    for (std::uint64_t j = 1; j <= 10; ++j) {
        growing.push_back(j + 2);
    }
    const auto tg = type_bounds(MahlerSpec(Field::make(2), 1, growing, 13), 10);
    for (std::size_t i = 1; i < tg.rows.size(); ++i) {
        CHECK(tg.rows[i].lower > tg.rows[i - 1].lower);
    }
    CHECK(tg.lower == 23);
    CHECK_THROWS_AS(type_bounds(tail2(), 0), Error);
}
