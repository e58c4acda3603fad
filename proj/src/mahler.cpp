#include "tnum/mahler.hpp"

#include "tnum/error.hpp"

#include <numeric>

using boost::multiprecision::msb;

namespace tnum {

namespace {

// Bit size above which r_j is refused.
constexpr std::uint64_t kMaxRjBits = 1ULL << 22U;

// sum_{n >= 1} T^{-base^n}
class PowerSupportGenerator final : public Generator {
public:
    explicit PowerSupportGenerator(BigInt base) : base_(std::move(base)) {}

    Fq coeff(const BigInt& n) const override { return Fq{exact_log(n, base_) >= 1 ? 1U : 0U}; }
    TermMap terms_through(const BigInt& horizon) const override {
        TermMap out;
        for (BigInt x = base_; x <= horizon; x *= base_) {
            out.emplace_hint(out.end(), x, Fq{1});
        }
        return out;
    }

private:
    BigInt base_;
};

// Closed form: the coefficient at r^e counts active j with M(0, j) | e.
class XiGenerator final : public Generator {
public:
    explicit XiGenerator(MahlerSpec spec) : spec_(std::move(spec)) {}

    Fq coeff(const BigInt& n) const override {
        const std::int64_t e = exact_log(n, spec_.r());
        if (e < 1) {
            return Fq{};
        }
        return count(BigInt(e));
    }
    TermMap terms_through(const BigInt& horizon) const override {
        TermMap out;
        BigInt x = spec_.r();
        for (BigInt e = 1; x <= horizon; ++e, x *= spec_.r()) {
            const Fq c = count(e);
            if (!c.is_zero()) {
                out.emplace_hint(out.end(), x, c);
            }
        }
        return out;
    }

private:
    Fq count(const BigInt& e) const {
        std::uint64_t hits = 0;
        BigInt prod = 1;
        for (std::uint64_t j = 0; prod <= e; ++j) {
            if (j > 0) {
                prod *= spec_.m(j);
                if (prod > e) {
                    break;
                }
            }
            if (spec_.active(j) && e % prod == 0) {
                ++hits;
            }
        }
        return spec_.field()->from_int(static_cast<std::int64_t>(hits % spec_.field()->p()));
    }

    MahlerSpec spec_;
};

void require_unmasked(const MahlerSpec& spec) {
    if (spec.mask()) {
        raise(Errc::InvalidArgument, "approximants are defined for the unmasked construction");
    }
}

Series finite_terms(const FieldRef& field, TermMap terms) { return Series::exact(field, std::move(terms)); }

} // namespace

bool Mask::at(std::uint64_t j) const {
    if (j < prefix.size()) {
        return prefix[j] != 0;
    }
    return tail[(j - prefix.size()) % tail.size()] != 0;
}

std::optional<std::uint64_t> Mask::first_difference(const Mask& a, const Mask& b) {
    const std::uint64_t span = std::max(a.prefix.size(), b.prefix.size()) + std::lcm(a.tail.size(), b.tail.size());
    for (std::uint64_t j = 0; j < span; ++j) {
        if (a.at(j) != b.at(j)) {
            return j;
        }
    }
    return std::nullopt;
}

MahlerSpec::MahlerSpec(FieldRef field, unsigned r_exponent, std::vector<std::uint64_t> m_prefix,
                       std::uint64_t m_tail, std::optional<Mask> mask)
    : field_(std::move(field)), r_exponent_(r_exponent), m_prefix_(std::move(m_prefix)), m_tail_(m_tail),
      mask_(std::move(mask)) {
    if (r_exponent_ < 1) {
        raise(Errc::InvalidArgument, "r must be p^s with s >= 1");
    }
    r_ = ipow(BigInt(field_->p()), static_cast<std::uint64_t>(r_exponent_));
    if (m_prefix_.empty()) {
        m_prefix_.push_back(1);
    }
    if (m_prefix_[0] != 1) {
        raise(Errc::InvalidArgument, "m_0 must be 1");
    }
    for (std::size_t j = 1; j < m_prefix_.size(); ++j) {
        if (m_prefix_[j] < 2) {
            raise(Errc::InvalidArgument, "m_j must be >= 2 for j >= 1");
        }
    }
    if (m_tail_ < 2) {
        raise(Errc::InvalidArgument, "m tail must be >= 2");
    }
    if (mask_) {
        bool any = false;
        for (int v : mask_->tail) {
            any = any || v != 0;
        }
        if (mask_->tail.empty() || !any) {
            raise(Errc::InvalidArgument, "mask tail must contain a 1");
        }
        for (int v : mask_->prefix) {
            if (v != 0 && v != 1) {
                raise(Errc::InvalidArgument, "mask entries must be 0 or 1");
            }
        }
        for (int v : mask_->tail) {
            if (v != 0 && v != 1) {
                raise(Errc::InvalidArgument, "mask entries must be 0 or 1");
            }
        }
    }
}

std::uint64_t MahlerSpec::m(std::uint64_t j) const noexcept {
    return j < m_prefix_.size() ? m_prefix_[j] : m_tail_;
}

MahlerSpec MahlerSpec::with_mask(std::optional<Mask> mask) const {
    return MahlerSpec(field_, r_exponent_, m_prefix_, m_tail_, std::move(mask));
}

BigInt big_m(const MahlerSpec& spec, std::int64_t i, std::int64_t j) {
    if (i < 0) {
        raise(Errc::InvalidArgument, "M(i, j) needs i >= 0");
    }
    BigInt prod = 1;
    for (std::int64_t t = i; t <= j; ++t) {
        prod *= spec.m(static_cast<std::uint64_t>(t));
    }
    return prod;
}

BigInt r_j(const MahlerSpec& spec, std::uint64_t j) {
    const BigInt exponent = big_m(spec, 0, static_cast<std::int64_t>(j));
    const std::uint64_t bits_per_factor = spec.r_exponent() * static_cast<std::uint64_t>(msb(BigInt(spec.field()->p())) + 1);
    if (exponent * bits_per_factor > BigInt(kMaxRjBits)) {
        raise(Errc::ExponentBudgetExceeded, "r_" + std::to_string(j) + " is too large");
    }
    return ipow(spec.r(), exponent);
}

Series mahler_alpha(const FieldRef& field, const BigInt& r, const BigInt& horizon) {
    if (exact_log(r, BigInt(field->p())) < 1) {
        raise(Errc::NotAPowerOfCharacteristic, "r = " + r.str());
    }
    return Series::from_generator(field, std::make_shared<PowerSupportGenerator>(r), horizon);
}

Series alpha_block(const MahlerSpec& spec, std::uint64_t j, const BigInt& horizon) {
    return Series::from_generator(spec.field(), std::make_shared<PowerSupportGenerator>(r_j(spec, j)), horizon);
}

Series xi(const MahlerSpec& spec, const BigInt& horizon) {
    return Series::from_generator(spec.field(), std::make_shared<XiGenerator>(spec), horizon);
}

std::uint64_t blocks_through(const MahlerSpec& spec, const BigInt& horizon) {
    std::uint64_t j = 0;
    while (r_j(spec, j) <= horizon) {
        ++j;
    }
    return j;
}

Series direct_sum_blocks(const MahlerSpec& spec, std::uint64_t blocks, const BigInt& horizon) {
    Series sum = Series::truncated(spec.field(), {}, horizon);
    for (std::uint64_t j = 0; j < blocks; ++j) {
        if (spec.active(j)) {
            sum = sum + alpha_block(spec, j, horizon);
        }
    }
    return sum;
}

Fq a_coeff(const MahlerSpec& spec, std::uint64_t j, const BigInt& n) {
    std::uint64_t hits = 0;
    BigInt prod = 1;
    for (std::uint64_t t = 0; t <= j; ++t) {
        if (t > 0) {
            prod *= spec.m(t);
        }
        if (n % prod == 0) {
            ++hits;
        }
    }
    return spec.field()->from_int(static_cast<std::int64_t>(hits % spec.field()->p()));
}

std::uint64_t b_level(const MahlerSpec& spec, std::uint64_t j, const BigInt& n) {
    if (n < 1) {
        raise(Errc::InvalidArgument, "b(j, n) needs n >= 1");
    }
    // M(j+2, j+l) | n holds for l = 1 (empty product); grow l while M(j+2, j+l+1) | n
    std::uint64_t level = 1;
    BigInt prod = 1;
    while (true) {
        prod *= spec.m(j + level + 1);
        if (n % prod != 0) {
            return level;
        }
        ++level;
    }
}

Fq b_coeff(const MahlerSpec& spec, std::uint64_t j, const BigInt& n) {
    return spec.field()->from_int(static_cast<std::int64_t>(b_level(spec, j, n) % spec.field()->p()));
}

Series approximant(const MahlerSpec& spec, ApproximantId id, const BigInt& horizon) {
    require_unmasked(spec);
    if (id.k < 1) {
        raise(Errc::InvalidArgument, "alpha(j, k) needs k >= 1");
    }
    TermMap tail;
    const BigInt base = r_j(spec, id.j + 1);
    BigInt x = base;
    for (std::uint64_t n = 1; n <= id.k; ++n, x *= base) {
        const Fq b = b_coeff(spec, id.j, BigInt(n));
        if (!b.is_zero()) {
            tail.emplace(x, b);
        }
    }
    Series sum = finite_terms(spec.field(), std::move(tail)).truncated_to(horizon);
    for (std::uint64_t t = 0; t <= id.j; ++t) {
        sum = sum + alpha_block(spec, t, horizon);
    }
    return sum;
}

namespace {

std::uint64_t last_nonzero_b(const MahlerSpec& spec, ApproximantId id) {
    for (std::uint64_t n = id.k; n >= 1; --n) {
        if (!b_coeff(spec, id.j, BigInt(n)).is_zero()) {
            return n;
        }
    }
    raise(Errc::InvalidArgument, "b(j, 1) vanished");
}

} // namespace

BigInt annihilator_denominator(const MahlerSpec& spec, ApproximantId id) {
    require_unmasked(spec);
    if (id.k < 1) {
        raise(Errc::InvalidArgument, "alpha(j, k) needs k >= 1");
    }
    return ipow(r_j(spec, id.j + 1), last_nonzero_b(spec, id)) * r_j(spec, id.j);
}

QPow annihilator_height(const MahlerSpec& spec, ApproximantId id) {
    return QPow::power(annihilator_denominator(spec, id));
}

QPow approximant_height_bound(const MahlerSpec& spec, ApproximantId id) {
    return QPow::power(ipow(r_j(spec, id.j + 1), id.k) * r_j(spec, id.j));
}

XPoly annihilator(const MahlerSpec& spec, ApproximantId id, const ExponentBudget& budget) {
    require_unmasked(spec);
    const auto& field = spec.field();
    const auto& F = *field;
    const BigInt rj = r_j(spec, id.j);
    const BigInt rj1 = r_j(spec, id.j + 1);
    // constant part as exponent -> coefficient of T^{-exponent}
    TermMap constant;
    auto add = [&](const BigInt& n, Fq c) {
        if (c.is_zero()) {
            return;
        }
        auto [it, fresh] = constant.try_emplace(n, c);
        if (!fresh) {
            it->second = F.add(it->second, c);
            if (it->second.is_zero()) {
                constant.erase(it);
            }
        }
    };
    const BigInt a_terms = big_m(spec, 1, static_cast<std::int64_t>(id.j));
    BigInt rn = spec.r();
    for (BigInt n = 1; n <= a_terms; ++n, rn *= spec.r()) {
        add(rn, a_coeff(spec, id.j, n));
    }
    BigInt bn = rj1;
    for (std::uint64_t n = 1; n <= id.k; ++n, bn *= rj1) {
        const Fq b = b_coeff(spec, id.j, BigInt(n));
        add(bn, b);
        add(bn * rj, F.neg(b));
    }
    const BigInt D = constant.rbegin()->first;
    if (D != annihilator_denominator(spec, id)) {
        raise(Errc::InvalidArgument, "unexpected annihilator denominator");
    }
    if (D > budget.dense || rj > budget.dense) {
        raise(Errc::ExponentBudgetExceeded,
              "annihilator of alpha(" + std::to_string(id.j) + "," + std::to_string(id.k) + ") needs T-degree " +
                  D.str());
    }
    const auto d = D.convert_to<std::size_t>();
    const auto deg_x = rj.convert_to<std::size_t>();
    std::vector<Fq> c0(d + 1);
    for (const auto& [n, c] : constant) {
        c0[d - n.convert_to<std::size_t>()] = c;
    }
    std::vector<TPoly> coeffs(deg_x + 1, TPoly(field));
    coeffs[0] = TPoly(field, std::move(c0));
    coeffs[1] = TPoly::monomial(field, F.neg(F.one()), d);
    coeffs[deg_x] = TPoly::monomial(field, F.one(), d);
    return XPoly(field, std::move(coeffs));
}

AbsValue annihilator_residual(const MahlerSpec& spec, ApproximantId id, const BigInt& horizon,
                              const ExponentBudget& budget) {
    const XPoly P = annihilator(spec, id, budget);
    const Series s = approximant(spec, id, horizon + BigInt(P.max_coeff_degree()));
    return xpoly_eval(P, s).abs;
}

std::vector<std::uint64_t> k_set(const MahlerSpec& spec, std::uint64_t j, std::size_t count) {
    const auto p = static_cast<std::int64_t>(spec.field()->p());
    const auto jj = static_cast<std::int64_t>(j);
    const BigInt inner = big_m(spec, jj + 2, jj + p);
    const BigInt outer = big_m(spec, jj + 2, jj + p + 1);
    std::vector<std::uint64_t> out;
    for (std::uint64_t k = 1; out.size() < count; ++k) {
        const BigInt k1 = k + 1;
        if (k1 % inner == 0 && k1 % outer != 0) {
            out.push_back(k);
        }
    }
    return out;
}

AbsValue approximant_distance(const MahlerSpec& spec, ApproximantId id, const ExponentBudget& budget) {
    const BigInt base = r_j(spec, id.j + 1);
    const BigInt start = ipow(base, id.k + 1);
    if (start > budget.sparse) {
        raise(Errc::ExponentBudgetExceeded, "distance horizon " + start.str());
    }
    const Series diff = xi(spec, start) - approximant(spec, id, start);
    const AbsValue v = abs_refined(diff, RefinePolicy{budget.sparse});
    if (v.is_below()) {
        raise(Errc::PrecisionExhausted, "xi - alpha(j, k) vanishes through the sparse budget");
    }
    return v;
}

DistanceCheck distance_identity_check(const MahlerSpec& spec, std::uint64_t j, std::size_t index,
                                      const ExponentBudget& budget) {
    if (index < 1) {
        raise(Errc::InvalidArgument, "K_j index is 1-based");
    }
    const std::uint64_t k = k_set(spec, j, index).back();
    DistanceCheck out;
    out.id = {j, k};
    out.claimed = ipow(r_j(spec, j + 1), k + 2);
    if (out.claimed > budget.sparse) {
        raise(Errc::ExponentBudgetExceeded, "claimed valuation " + out.claimed.str());
    }
    out.measured = approximant_distance(spec, out.id, budget);
    out.pass = out.measured.is_exact() && out.measured.exponent == out.claimed;
    return out;
}

SandwichCheck distance_sandwich(const MahlerSpec& spec, ApproximantId id, const ExponentBudget& budget) {
    SandwichCheck out;
    out.id = id;
    const BigInt base = r_j(spec, id.j + 1);
    out.lower = ipow(base, id.k + 1);
    out.upper = out.lower * base;
    if (out.upper > budget.sparse) {
        raise(Errc::ExponentBudgetExceeded, "sandwich upper valuation " + out.upper.str());
    }
    out.measured = approximant_distance(spec, id, budget);
    out.in_window = out.measured.is_exact() && out.measured.exponent >= out.lower && out.measured.exponent <= out.upper;
    out.at_upper = out.measured.is_exact() && out.measured.exponent == out.upper;
    return out;
}

AbsValue frobenius_residual(const FieldRef& field, const BigInt& r, const BigInt& horizon) {
    const Series alpha = mahler_alpha(field, r, horizon);
    const Series lhs = alpha.frobenius_pow(r) + Series::monomial(field, field->one(), r);
    return (lhs - alpha).abs();
}

AbsValue telescope_residual(const MahlerSpec& spec, std::uint64_t t, std::uint64_t j, const BigInt& horizon) {
    if (t > j) {
        raise(Errc::InvalidArgument, "telescoping needs t <= j");
    }
    const auto& F = *spec.field();
    const Series block = alpha_block(spec, t, horizon);
    TermMap correction;
    const BigInt rt = r_j(spec, t);
    const BigInt count = big_m(spec, static_cast<std::int64_t>(t) + 1, static_cast<std::int64_t>(j));
    BigInt x = rt;
    for (BigInt i = 1; i <= count; ++i, x *= rt) {
        correction.emplace(x, F.one());
    }
    const Series lhs = block.frobenius_pow(r_j(spec, j)) + Series::exact(spec.field(), std::move(correction));
    return (lhs - block).abs();
}

} // namespace tnum
