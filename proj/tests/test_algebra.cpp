#include "doctest.h"
#include "oracles.hpp"

#include "tnum/error.hpp"
#include "tnum/field.hpp"
#include "tnum/tpoly.hpp"

#include <random>

using namespace tnum;

namespace {

TPoly poly(const FieldRef& F, std::vector<std::uint32_t> codes) { return TPoly::from_codes(F, codes); }

TPoly random_poly(const FieldRef& F, std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(-1, max_deg);
    std::uniform_int_distribution<std::uint32_t> el(0, F->q() - 1);
    const int d = deg(rng);
    std::vector<Fq> c;
    for (int i = 0; i <= d; ++i) {
        c.push_back(Fq{el(rng)});
    }
    return TPoly(F, c);
}

} // namespace

TEST_CASE("field_make examples") {
    auto f2 = Field::make(2);
    CHECK(f2->q() == 2);
    auto f4 = Field::make(2, 2, std::vector<std::uint32_t>{1, 1, 1});
    CHECK(f4->q() == 4);
    auto f4d = Field::make(2, 2);
    CHECK(f4d->modulus() == std::vector<std::uint32_t>{1, 1, 1});
    try {
        Field::make(4);
        FAIL("expected NonPrimeCharacteristic");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonPrimeCharacteristic);
    }
    try {
        Field::make(2, 2, std::vector<std::uint32_t>{1, 0, 1});  // (T+1)^2
        FAIL("expected ReducibleModulus");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ReducibleModulus);
    }
    CHECK(Field::make(2, 3)->modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
    CHECK(Field::make(3, 2)->modulus() == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("field axioms exhaustively for small q") {
    for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}, {2, 4}}) {
        auto F = Field::make(p, e);
        const auto q = F->q();
        for (std::uint32_t a = 0; a < q; ++a) {
            const Fq x{a};
            if (a != 0) {
                CHECK(F->mul(x, F->inv(x)) == F->one());
            }
            CHECK(F->frobenius(F->pth_root(x)) == x);
            CHECK(F->pow(x, q) == x);
            for (std::uint32_t b = 0; b < q; ++b) {
                const Fq y{b};
                // Frobenius is additive
                CHECK(F->frobenius(F->add(x, y)) == F->add(F->frobenius(x), F->frobenius(y)));
                CHECK(F->frobenius(F->mul(x, y)) == F->mul(F->frobenius(x), F->frobenius(y)));
                CHECK(F->sub(F->add(x, y), y) == x);
            }
        }
    }
}

TEST_CASE("tpoly_arith examples") {
    auto f2 = Field::make(2);
    auto f3 = Field::make(3);
    CHECK(poly(f2, {1, 1}) * poly(f2, {1, 1}) == poly(f2, {1, 0, 1}));
    auto [q, r] = divrem(poly(f3, {0, 0, 1}), poly(f3, {1, 1}));
    CHECK(q == poly(f3, {2, 1}));
    CHECK(r == poly(f3, {1}));
    // independent schoolbook oracle
    auto [oq, orr] = oracle::divrem({0, 0, 1}, {1, 1}, 3);
    CHECK(oq == oracle::Poly{2, 1});
    CHECK(orr == oracle::Poly{1});
    CHECK(gcd(poly(f2, {1, 0, 1}), poly(f2, {1, 1})) == poly(f2, {1, 1}));
    try {
        divrem(poly(f3, {1}), TPoly::zero(f3));
        FAIL("expected DivisionByZeroPoly");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DivisionByZeroPoly);
    }
    try {
        (void)(poly(f2, {1}) + poly(f3, {1}));
        FAIL("expected FieldMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::FieldMismatch);
    }
}

TEST_CASE("tpoly_abs examples") {
    auto f2 = Field::make(2);
    CHECK(poly(f2, {1, 0, 1}).abs() == QPow::power(2));
    CHECK(TPoly::zero(f2).abs().zero);
    CHECK(poly(f2, {1}).abs() == QPow::power(0));
}

TEST_CASE("tpoly_content_primitive examples") {
    auto f2 = Field::make(2);
    auto cp = content_primitive({poly(f2, {0, 1, 1}), poly(f2, {0, 1})});
    CHECK(cp.content == poly(f2, {0, 1}));
    CHECK(cp.primitive[0] == poly(f2, {1, 1}));
    CHECK(cp.primitive[1] == poly(f2, {1}));
    auto cp2 = content_primitive({poly(f2, {1}), poly(f2, {0, 1})});
    CHECK(cp2.content == poly(f2, {1}));
    CHECK(cp2.primitive[1] == poly(f2, {0, 1}));
    try {
        content_primitive({TPoly::zero(f2), TPoly::zero(f2)});
        FAIL("expected AllZero");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::AllZero);
    }
}

TEST_CASE("tpoly properties on random pairs") {
    std::mt19937_64 rng(7);
    for (auto F : {Field::make(2), Field::make(3), Field::make(2, 2), Field::make(5)}) {
        for (int trial = 0; trial < 300; ++trial) {
            const TPoly a = random_poly(F, rng, 8);
            const TPoly b = random_poly(F, rng, 5);
            // |ab| = |a||b|
            CHECK((a * b).abs() == a.abs() * b.abs());
            if (!b.is_zero()) {
                auto [q, r] = divrem(a, b);
                CHECK(q * b + r == a);
                CHECK(r.degree() < b.degree());
            }
            if (F->e() == 1) {
                std::vector<std::int64_t> av;
                std::vector<std::int64_t> bv;
                for (auto c : a.coeffs()) {
                    av.push_back(c.code);
                }
                for (auto c : b.coeffs()) {
                    bv.push_back(c.code);
                }
                auto prod = oracle::mul(av, bv, F->p());
                std::vector<std::int64_t> got;
                const TPoly ab = a * b;
                for (auto c : ab.coeffs()) {
                    got.push_back(c.code);
                }
                CHECK(got == prod);
            }
            const TPoly g = gcd(a, b);
            if (!g.is_zero()) {
                CHECK(g.is_monic());
                CHECK(divrem(a, g).remainder.is_zero());
                CHECK(divrem(b, g).remainder.is_zero());
            }
        }
    }
}
