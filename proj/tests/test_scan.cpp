#include "doctest.h"

#include "tnum/error.hpp"
#include "tnum/mahler.hpp"
#include "tnum/roots.hpp"
#include "tnum/scan.hpp"

using namespace tnum;

namespace {

// All nonzero P with deg_X <= n and coefficient degrees < h, by plain counting.
std::vector<XPoly> all_polys(const FieldRef& F, long n, long h) {
    const std::uint64_t slots = static_cast<std::uint64_t>((n + 1) * h);
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < slots; ++i) {
        total *= F->q();
    }
    std::vector<XPoly> out;
    for (std::uint64_t N = 1; N < total; ++N) {
        std::vector<std::vector<Fq>> c(static_cast<std::size_t>(n + 1), std::vector<Fq>(static_cast<std::size_t>(h)));
        std::uint64_t x = N;
        for (long i = 0; i <= n; ++i) {
            for (long k = 0; k < h; ++k, x /= F->q()) {
                c[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = Fq{static_cast<std::uint32_t>(x % F->q())};
            }
        }
        std::vector<TPoly> t;
        for (auto& v : c) {
            t.emplace_back(F, v);
        }
        out.emplace_back(F, t);
    }
    return out;
}

// Best valuation of P(xi) over the cumulative shell, by sparse evaluation.
std::optional<BigInt> oracle_wn(const Series& xi, long n, long h) {
    std::optional<BigInt> best;
    for (const XPoly& P : all_polys(xi.field(), n, h)) {
        const AbsValue v = xpoly_eval(P, xi).abs;
        if (v.is_exact() && (!best || v.exponent > *best)) {
            best = v.exponent;
        }
    }
    return best;
}

std::string render(const RecordTable& t) {
    std::string s;
    for (const auto& r : t.rows) {
        s += std::to_string(r.h) + ":" + r.witness.to_string() + ":" + r.value_valuation.str() + ":" +
             (r.exponent_ratio ? to_string(*r.exponent_ratio) : "-") + "\n";
    }
    s += "best " + (t.best_exponent ? to_string(*t.best_exponent) : std::string("-"));
    s += " excluded " + std::to_string(t.excluded);
    return s;
}

} // namespace

TEST_CASE("wn_scan agrees with the sparse brute force") {
    auto f2 = Field::make(2);
    auto f3 = Field::make(3);
    const std::vector<std::pair<Series, long>> cases = {
        {mahler_alpha(f2, 2, 600), 1},
        {mahler_alpha(f3, 3, 600), 1},
        {xi(MahlerSpec(f2, 1, {1}, 2), 600), 2},
        {mahler_alpha(Field::make(2, 2), 4, 600), 1},
    };
    for (const auto& [x, n] : cases) {
        const long h_max = x.field()->q() == 2 ? 4 : 2;
        ScanOptions opt;
        opt.window = 300;
        const RecordTable t = wn_scan(x, n, h_max, opt);
        REQUIRE(t.rows.size() == static_cast<std::size_t>(h_max));
        for (const auto& row : t.rows) {
            CAPTURE(row.h);
            CHECK(oracle_wn(x, n, row.h) == row.value_valuation);
            CHECK(xpoly_eval(row.witness, x).abs == AbsValue::exact(row.value_valuation));
            CHECK(row.witness.max_coeff_degree() < row.h);
        }
    }
}

TEST_CASE("wn_scan examples") {
    auto f3 = Field::make(3);
    auto f2 = Field::make(2);
    const RecordTable a3 = wn_scan(mahler_alpha(f3, 3, 600), 1, 6);
    REQUIRE(a3.best_exponent);
    CHECK(*a3.best_exponent >= Rational(17, 10));
    CHECK(*a3.best_exponent <= 3);
    CHECK(*a3.best_exponent == 2);
    const RecordTable a2 = wn_scan(mahler_alpha(f2, 2, 600), 1, 6);
    REQUIRE(a2.best_exponent);
    CHECK(*a2.best_exponent >= Rational(7, 10));
    CHECK(*a2.best_exponent <= 2);
    // rational xi = 1/(T - 1): every P(xi) has valuation <= 1
    const Series rat = series_from_rational(TPoly::from_codes(f3, {1}), TPoly::from_codes(f3, {2, 1}), 600);
    const RecordTable r = wn_scan(rat, 1, 4);
    REQUIRE(r.best_exponent);
    CHECK(*r.best_exponent <= Rational(1, 2));
    CHECK(r.excluded > 0);  // the multiples of (T - 1) X - 1
    CHECK(r.rows.front().exponent_ratio == std::nullopt);
    for (std::size_t i = 1; i < a3.rows.size(); ++i) {
        CHECK(a3.rows[i].value_valuation >= a3.rows[i - 1].value_valuation);
    }
}

TEST_CASE("wn_scan degree monotonicity") {
    auto f2 = Field::make(2);
    const Series x = xi(MahlerSpec(f2, 1, {1}, 2), 600);
    const RecordTable one = wn_scan(x, 1, 4);
    const RecordTable two = wn_scan(x, 2, 4);
    for (std::size_t i = 0; i < one.rows.size(); ++i) {
        CHECK(two.rows[i].value_valuation >= one.rows[i].value_valuation);
    }
}

TEST_CASE("scan is independent of threads and kernels") {
    auto f3 = Field::make(3);
    const Series a = mahler_alpha(f3, 3, 600);
    ScanOptions base;
    base.threads = 1;
    base.kernels = &simd::scalar_kernels();
    const std::string ref = render(wn_scan(a, 1, 5, base));
    const std::string ref_star = render(wstar_scan(a, 1, 5, base));
    for (unsigned th : {2U, 4U, 8U}) {
        ScanOptions o;
        o.threads = th;
        CHECK(render(wn_scan(a, 1, 5, o)) == ref);
        CHECK(render(wstar_scan(a, 1, 5, o)) == ref_star);
    }
}

TEST_CASE("wstar_scan") {
    auto f3 = Field::make(3);
    auto f2 = Field::make(2);
    const Series a3 = mahler_alpha(f3, 3, 600);
    const RecordTable s = wstar_scan(a3, 1, 6);
    REQUIRE(s.best_exponent);
    CHECK(*s.best_exponent >= Rational(17, 10));
    CHECK(*s.best_exponent <= 3);
    const RecordTable w = wn_scan(a3, 1, 6);
    CHECK(*s.best_exponent <= *w.best_exponent + Rational(1, 2));
    for (const auto& row : s.rows) {
        REQUIRE(row.root);
        CHECK(series_dist(a3, *row.root) == AbsValue::exact(row.value_valuation));
        CHECK(row.witness.lead().is_monic());
        CHECK(row.witness.is_primitive());
    }
    // the linear shortcut and the root finder give the same table
    ScanOptions g;
    g.generic_roots = true;
    CHECK(render(wstar_scan(a3, 1, 4, g)) == render(wstar_scan(a3, 1, 4)));
    const Series a2 = mahler_alpha(f2, 2, 600);
    CHECK(render(wstar_scan(a2, 1, 5, g)) == render(wstar_scan(a2, 1, 5)));
    // rational xi
    const Series rat = series_from_rational(TPoly::from_codes(f3, {1}), TPoly::from_codes(f3, {2, 1}), 600);
    const RecordTable r = wstar_scan(rat, 1, 4);
    REQUIRE(r.best_exponent);
    CHECK(*r.best_exponent <= Rational(1, 2));
}

TEST_CASE("wstar_scan degree two records cover alpha itself") {
    auto f2 = Field::make(2);
    const Series a = mahler_alpha(f2, 2, 600);
    ScanOptions o;
    o.window = 200;
    const RecordTable t = wstar_scan(a, 2, 3, o);
    // T^2 X^2 + T^2 X + 1 has alpha as a root: its distance vanishes and is excluded
    CHECK(t.excluded > 0);
    for (const auto& row : t.rows) {
        REQUIRE(row.root);
        CHECK(series_dist(a, *row.root).is_exact());
    }
}

TEST_CASE("scan budget and argument errors") {
    auto f3 = Field::make(3);
    const Series a = mahler_alpha(f3, 3, 100);
    ScanOptions o;
    o.enumeration_budget = 1000;
    try {
        wn_scan(a, 1, 6, o);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BudgetExceeded);
    }
    CHECK_THROWS_AS(wn_scan(a, 0, 3), Error);
}
