#include "tnum/dioph.hpp"

#include "tnum/error.hpp"

#include <algorithm>

namespace tnum {

namespace {

long max_degree(const TPoly& a, const TPoly& b) { return std::max(a.degree(), b.degree()); }

BigInt liouville_bound(const QPow& ha, long da, const QPow& hb, long db) {
    return ha.exponent * db + hb.exponent * da;
}

// All monic polynomials of degree exactly `deg`, or all polynomials of degree
// <= `deg` (zero included) when `monic` is false.
std::vector<TPoly> enumerate_tpolys(const FieldRef& field, long deg, bool monic) {
    const std::uint32_t q = field->q();
    const long free_coeffs = monic ? deg : deg + 1;
    std::uint64_t total = 1;
    for (long i = 0; i < free_coeffs; ++i) {
        total *= q;
    }
    std::vector<TPoly> out;
    out.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<Fq> c(static_cast<std::size_t>(deg + 1));
        std::uint64_t rest = idx;
        for (long i = 0; i < free_coeffs; ++i) {
            c[static_cast<std::size_t>(i)] = Fq{static_cast<std::uint32_t>(rest % q)};
            rest /= q;
        }
        if (monic) {
            c.back() = Fq{1};
        }
        out.emplace_back(field, std::move(c));
    }
    return out;
}

std::string fraction_string(const TPoly& a, const TPoly& b) {
    return "(" + a.to_string() + ")/(" + b.to_string() + ")";
}

} // namespace

LiouvilleCheck liouville_check(const RootDescriptor& a, const RootDescriptor& b, const RefinePolicy& policy) {
    if (a.height_bound.zero || b.height_bound.zero) {
        raise(Errc::InvalidArgument, "root descriptor without a height bound");
    }
    LiouvilleCheck out;
    out.bound = liouville_bound(a.height_bound, a.degree_bound, b.height_bound, b.degree_bound);
    out.measured = series_dist(a.root, b.root);
    if (!out.measured.is_exact() && a.root.is_extendable() && b.root.is_extendable()) {
        out.measured = abs_refined(a.root - b.root, policy);
    }
    if (!out.measured.is_exact()) {
        raise(Errc::IndistinguishableAtHorizon, "roots agree through " + out.measured.to_string());
    }
    out.pass = out.measured.exponent <= out.bound;
    return out;
}

LiouvilleCheck liouville_check(const TPoly& a, const TPoly& b, const TPoly& c, const TPoly& d) {
    if (b.is_zero() || d.is_zero()) {
        raise(Errc::DivisionByZeroPoly, "rational with zero denominator");
    }
    const TPoly num = a * d - b * c;
    if (num.is_zero()) {
        raise(Errc::IndistinguishableAtHorizon, "equal rationals");
    }
    LiouvilleCheck out;
    out.bound = liouville_bound(QPow::power(max_degree(a, b)), 1, QPow::power(max_degree(c, d)), 1);
    out.measured = AbsValue::exact(BigInt(b.degree() + d.degree() - num.degree()));
    out.pass = out.measured.exponent <= out.bound;
    return out;
}

RootDescriptor rational_descriptor(const TPoly& a, const TPoly& b, const BigInt& horizon) {
    RootDescriptor out;
    out.defining = XPoly(a.field(), {-a, b});
    out.root = series_from_rational(a, b, horizon);
    out.height_bound = QPow::power(max_degree(a, b));
    out.degree_bound = 1;
    return out;
}

std::vector<std::pair<TPoly, TPoly>> rationals_of_height(const FieldRef& field, long max_degree) {
    std::vector<TPoly> numerators = enumerate_tpolys(field, max_degree, false);
    std::vector<std::pair<TPoly, TPoly>> out;
    for (long db = 0; db <= max_degree; ++db) {
        for (const TPoly& b : enumerate_tpolys(field, db, true)) {
            for (const TPoly& a : numerators) {
                if (a.is_zero() ? db == 0 : gcd(a, b).degree() == 0) {
                    out.emplace_back(a, b);
                }
            }
        }
    }
    return out;
}

LiouvilleSummary liouville_rationals(const FieldRef& field, long max_degree, std::uint64_t series_stride) {
    const auto all = rationals_of_height(field, max_degree);
    LiouvilleSummary out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t k = i + 1; k < all.size(); ++k) {
            const auto& [a, b] = all[i];
            const auto& [c, d] = all[k];
            const LiouvilleCheck chk = liouville_check(a, b, c, d);
            ++out.pairs;
            if (!chk.pass) {
                ++out.failures;
                if (out.failure_examples.size() < 16) {
                    out.failure_examples.push_back(fraction_string(a, b) + " vs " + fraction_string(c, d));
                }
            }
            if (series_stride != 0 && out.pairs % series_stride == 0) {
                const BigInt horizon = 4 * max_degree + 8;
                const LiouvilleCheck via_series =
                    liouville_check(rational_descriptor(a, b, horizon), rational_descriptor(c, d, horizon));
                ++out.series_checked;
                if (!(via_series.measured == chk.measured) || via_series.bound != chk.bound) {
                    ++out.series_mismatches;
                }
            }
        }
    }
    return out;
}

RootDescriptor approximant_descriptor(const MahlerSpec& spec, ApproximantId id, const BigInt& horizon,
                                      const ExponentBudget& budget) {
    RootDescriptor out;
    out.root = approximant(spec, id, horizon);
    out.height_bound = annihilator_height(spec, id);
    out.degree_bound = static_cast<long>(r_j(spec, id.j));
    if (out.height_bound.exponent <= budget.dense) {
        out.defining = annihilator(spec, id, budget);
    } else {
        out.defining = XPoly(spec.field());
    }
    return out;
}

ApproximantLiouville liouville_approximants(const MahlerSpec& spec, std::uint64_t j_max, std::uint64_t k_max,
                                            const ExponentBudget& budget) {
    ApproximantLiouville out;
    // No annihilators are built here, only heights.
    ExponentBudget light = budget;
    light.dense = -1;
    for (std::uint64_t j = 0; j <= j_max; ++j) {
        for (std::uint64_t k = 1; k <= k_max; ++k) {
            for (std::uint64_t k2 = k + 1; k2 <= k_max; ++k2) {
                BigInt horizon;
                try {
                    horizon = ipow(r_j(spec, j + 1), k2) + 1;
                } catch (const Error& e) {
                    if (e.code() != Errc::ExponentBudgetExceeded) {
                        throw;
                    }
                    ++out.skipped;
                    continue;
                }
                if (horizon > budget.sparse) {
                    ++out.skipped;
                    continue;
                }
                const RootDescriptor a = approximant_descriptor(spec, {j, k}, horizon, light);
                const RootDescriptor b = approximant_descriptor(spec, {j, k2}, horizon, light);
                const AbsValue d = series_dist(a.root, b.root);
                if (!d.is_exact()) {
                    ++out.coincident;
                    continue;
                }
                ApproximantPair row{j, k, k2, liouville_check(a, b)};
                if (!row.check.pass) {
                    ++out.failures;
                }
                out.pairs.push_back(std::move(row));
            }
        }
    }
    return out;
}

namespace {

// Reduced row echelon form in place; returns the pivot column of each row.
std::vector<std::size_t> row_reduce(const Field& F, std::vector<std::vector<Fq>>& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col].is_zero()) {
            ++sel;
        }
        if (sel == m.size()) {
            continue;
        }
        std::swap(m[row], m[sel]);
        const Fq inv = F.inv(m[row][col]);
        for (auto& x : m[row]) {
            x = F.mul(x, inv);
        }
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) {
                continue;
            }
            const Fq f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) {
                m[r][c] = F.sub(m[r][c], F.mul(f, m[row][c]));
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

DirichletWitness dirichlet_witness(const Series& xi_in, long n, long h, const DirichletOptions& options) {
    if (n < 1 || h < 2) {
        raise(Errc::InvalidArgument, "dirichlet witness needs n >= 1 and h >= 2");
    }
    const auto unknowns = static_cast<std::size_t>((n + 1) * h);
    if (unknowns > options.max_unknowns) {
        raise(Errc::BudgetExceeded, std::to_string(unknowns) + " unknowns");
    }
    const FieldRef& field = xi_in.field();
    const Field& F = *field;

    DirichletWitness out;
    std::vector<Fq> poly_part;
    for (const auto& [e, c] : xi_in.terms()) {
        if (e > 0) {
            break;
        }
        const auto deg = static_cast<std::size_t>(-e);
        if (poly_part.size() <= deg) {
            poly_part.resize(deg + 1);
        }
        poly_part[deg] = c;
    }
    out.shift = TPoly(field, poly_part);
    const Series x = xi_in - Series::from_tpoly(out.shift);

    // Coefficient of T^{-m} in T^d x^i is coefficient m + d of x^i, for
    // m in [-(h-1), nh - 1] and d < h.
    const BigInt reach = BigInt(n * h + h - 2);
    std::vector<Series> powers;
    powers.push_back(Series::monomial(field, F.one(), 0));
    const Series xr = x.is_extendable() ? x.advanced(reach) : x;
    for (long i = 1; i <= n; ++i) {
        powers.push_back((powers.back() * xr).truncated_to(reach));
    }
    const long eqs = (n + 1) * h - 1;
    std::vector<std::vector<Fq>> m(static_cast<std::size_t>(eqs), std::vector<Fq>(unknowns));
    for (long row = 0; row < eqs; ++row) {
        const long mm = row - (h - 1);
        for (long i = 0; i <= n; ++i) {
            for (long d = 0; d < h; ++d) {
                m[static_cast<std::size_t>(row)][static_cast<std::size_t>(i * h + d)] =
                    powers[static_cast<std::size_t>(i)].coeff(BigInt(mm + d));
            }
        }
    }
    const auto pivots = row_reduce(F, m, unknowns);
    std::vector<bool> is_pivot(unknowns, false);
    for (auto c : pivots) {
        is_pivot[c] = true;
    }

    const RefinePolicy policy{options.refine_cap};
    std::optional<BigInt> best;
    for (std::size_t free = 0; free < unknowns; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        ++out.kernel_dimension;
        std::vector<Fq> v(unknowns);
        v[free] = F.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = F.neg(m[r][free]);
        }
        std::vector<TPoly> coeffs;
        for (long i = 0; i <= n; ++i) {
            coeffs.emplace_back(field, std::vector<Fq>(v.begin() + i * h, v.begin() + (i + 1) * h));
        }
        XPoly poly(field, std::move(coeffs));
        EvalResult ev;
        try {
            ev = xpoly_eval_refined(poly, x, policy);
        } catch (const Error& e) {
            if (e.code() != Errc::PrecisionExhausted) {
                throw;
            }
            raise(Errc::ZeroValueWitness, poly.to_string() + " vanishes through the refinement cap");
        }
        if (ev.abs.is_zero()) {
            raise(Errc::ZeroValueWitness, poly.to_string() + " vanishes at xi");
        }
        if (!best || ev.abs.exponent > *best) {
            best = ev.abs.exponent;
            out.poly = std::move(poly);
        }
    }
    out.value_valuation = *best;
    out.exponent_ratio = Rational(out.value_valuation, h - 1);
    out.guaranteed_valuation = BigInt(n * h);
    out.construction_constant = h - n;
    return out;
}

ApplioReport applio_consistency(const MahlerSpec& spec, std::uint64_t j, std::size_t count,
                                const ExponentBudget& budget) {
    if (count < 2) {
        raise(Errc::InvalidArgument, "applio consistency needs count >= 2");
    }
    const auto p = spec.field()->p();
    const BigInt rj = r_j(spec, j);
    const BigInt rj1 = r_j(spec, j + 1);
    const BigInt rjp = r_j(spec, j + p);

    ApplioReport out;
    out.j = j;
    out.claimed_ratio = Rational(rj1 * rj1, rj);
    out.d = Rational(rj);
    out.delta = out.claimed_ratio - out.d;
    out.rho = out.delta;
    out.theta = rjp * rjp;
    out.window_lower = out.d + out.delta - 1;
    out.window_upper = (out.d + out.rho) * out.d * Rational(out.theta) / out.delta - 1;

    const auto ks = k_set(spec, j, count);
    out.all_pass = true;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        ApplioRow row;
        row.k = ks[i];
        const ApproximantId id{j, ks[i]};
        const AbsValue dist = approximant_distance(spec, id, budget);
        row.distance_valuation = dist.exponent;
        row.log_beta = ipow(rj1, ks[i]) * rj;
        row.distance_ratio = Rational(row.distance_valuation, row.log_beta);
        row.ratio_ok = row.distance_ratio == out.claimed_ratio;
        row.height_exponent = annihilator_height(spec, id).exponent;
        row.height_ratio = Rational(row.height_exponent, row.log_beta);
        row.height_ok = row.height_ratio <= 1;
        if (i + 1 < ks.size()) {
            row.beta_ratio = ipow(rj1, ks[i + 1] - ks[i]);
            row.beta_ok = *row.beta_ratio <= out.theta;
        }
        out.all_pass = out.all_pass && row.ratio_ok && row.height_ok && row.beta_ok;
        out.rows.push_back(std::move(row));
    }
    return out;
}

TypeBounds type_bounds(const MahlerSpec& spec, std::uint64_t truncation) {
    if (truncation < 1) {
        raise(Errc::InvalidArgument, "type bounds need J >= 1");
    }
    const auto p = static_cast<std::int64_t>(spec.field()->p());
    TypeBounds out;
    out.truncation = truncation;
    const bool refined = spec.m_tail() >= 3;
    for (std::uint64_t j = 1; j <= truncation; ++j) {
        const auto jj = static_cast<std::int64_t>(j);
        const BigInt mj = spec.m(j);
        const BigInt block = big_m(spec, jj, jj + p);
        const BigInt pair = mj * spec.m(j + 1);
        TypeRow row{j, 2 * mj - 1, mj + 2 * block, 2 * mj + 2 * block, mj + 2 * pair, 2 * mj + 2 * pair};
        if (out.rows.empty()) {
            out.lower = row.lower;
            out.upper_tstar = row.upper_tstar;
            out.upper_t = row.upper_t;
            if (refined) {
                out.refined_tstar = row.refined_tstar;
                out.refined_t = row.refined_t;
            }
        } else {
            out.lower = std::max(out.lower, row.lower);
            out.upper_tstar = std::max(out.upper_tstar, row.upper_tstar);
            out.upper_t = std::max(out.upper_t, row.upper_t);
            if (refined) {
                out.refined_tstar = std::max(*out.refined_tstar, row.refined_tstar);
                out.refined_t = std::max(*out.refined_t, row.refined_t);
            }
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace tnum
