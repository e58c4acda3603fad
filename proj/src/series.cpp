#include "tnum/series.hpp"

#include "tnum/error.hpp"

#include <sstream>

namespace tnum {

std::string AbsValue::to_string() const {
    switch (kind) {
    case Kind::zero: return "0";
    case Kind::exact: return "q^-" + exponent.str();
    case Kind::below: return "<=q^-" + exponent.str();
    }
    return "?";
}

namespace {

void accumulate(const Field& F, TermMap& into, const BigInt& n, Fq c) {
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = into.try_emplace(n, c);
    if (!inserted) {
        it->second = F.add(it->second, c);
        if (it->second.is_zero()) {
            into.erase(it);
        }
    }
}

class FiniteGenerator final : public Generator {
public:
    explicit FiniteGenerator(TermMap terms) : terms_(std::move(terms)) {}
    Fq coeff(const BigInt& n) const override {
        auto it = terms_.find(n);
        return it == terms_.end() ? Fq{} : it->second;
    }
    TermMap terms_through(const BigInt& horizon) const override {
        return TermMap(terms_.begin(), terms_.upper_bound(horizon));
    }

private:
    TermMap terms_;
};

// sum_i scale_i * T^{-shift_i} * g_i
class LinearGenerator final : public Generator {
public:
    struct Part {
        GeneratorRef gen;
        Fq scale;
        BigInt shift;
    };

    LinearGenerator(FieldRef field, std::vector<Part> parts) : field_(std::move(field)), parts_(std::move(parts)) {}

    Fq coeff(const BigInt& n) const override {
        Fq acc{};
        for (const auto& part : parts_) {
            acc = field_->add(acc, field_->mul(part.scale, part.gen->coeff(n - part.shift)));
        }
        return acc;
    }
    TermMap terms_through(const BigInt& horizon) const override {
        TermMap out;
        for (const auto& part : parts_) {
            for (const auto& [n, c] : part.gen->terms_through(horizon - part.shift)) {
                accumulate(*field_, out, n + part.shift, field_->mul(part.scale, c));
            }
        }
        return out;
    }

private:
    FieldRef field_;
    std::vector<Part> parts_;
};

class FrobeniusGenerator final : public Generator {
public:
    FrobeniusGenerator(FieldRef field, GeneratorRef gen, BigInt t)
        : field_(std::move(field)), gen_(std::move(gen)), t_(std::move(t)) {}

    Fq coeff(const BigInt& n) const override {
        if (n % t_ != 0) {
            return Fq{};
        }
        return field_->pow(gen_->coeff(n / t_), t_);
    }
    TermMap terms_through(const BigInt& horizon) const override {
        TermMap out;
        for (const auto& [n, c] : gen_->terms_through(floor_div(horizon, t_))) {
            out.emplace_hint(out.end(), n * t_, field_->pow(c, t_));
        }
        return out;
    }

private:
    FieldRef field_;
    GeneratorRef gen_;
    BigInt t_;
};

class PthRootGenerator final : public Generator {
public:
    PthRootGenerator(FieldRef field, GeneratorRef gen) : field_(std::move(field)), gen_(std::move(gen)) {}

    Fq coeff(const BigInt& n) const override { return field_->pth_root(gen_->coeff(n * field_->p())); }
    TermMap terms_through(const BigInt& horizon) const override {
        TermMap out;
        const BigInt p = field_->p();
        for (const auto& [n, c] : gen_->terms_through(horizon * p)) {
            if (n % p != 0) {
                raise(Errc::NotAPthPower, "exponent " + n.str() + " not divisible by p");
            }
            out.emplace_hint(out.end(), n / p, field_->pth_root(c));
        }
        return out;
    }

private:
    FieldRef field_;
    GeneratorRef gen_;
};

// Expansion of a/b in powers of T^{-1}.
class RationalGenerator final : public Generator {
public:
    RationalGenerator(TPoly a, TPoly b) : a_(std::move(a)), b_(std::move(b)) {}

    Fq coeff(const BigInt& n) const override {
        const TermMap t = terms_through(n);
        auto it = t.find(n);
        return it == t.end() ? Fq{} : it->second;
    }

    TermMap terms_through(const BigInt& horizon) const override {
        TermMap out;
        if (a_.is_zero()) {
            return out;
        }
        const auto& F = *a_.field();
        const long da = a_.degree();
        const long db = b_.degree();
        const BigInt first = BigInt(db - da);
        if (horizon < first) {
            return out;
        }
        const BigInt count_big = horizon - first + 1;
        if (count_big > BigInt(kDenseTermLimit)) {
            raise(Errc::ExponentBudgetExceeded, "rational expansion through " + horizon.str());
        }
        const auto count = count_big.convert_to<std::size_t>();
        // u = T^{-1}: a/b = T^{da-db} * ra(u) / rb(u) with reversed coefficients
        std::vector<Fq> num(count);
        for (std::size_t i = 0; i < count && static_cast<long>(i) <= da; ++i) {
            num[i] = a_.coeff(static_cast<std::size_t>(da - static_cast<long>(i)));
        }
        const Fq inv_lead = F.inv(b_.lead());
        for (std::size_t i = 0; i < count; ++i) {
            const Fq c = F.mul(num[i], inv_lead);
            if (c.is_zero()) {
                continue;
            }
            out.emplace_hint(out.end(), first + i, c);
            for (long j = 1; j <= db && i + static_cast<std::size_t>(j) < count; ++j) {
                const Fq bj = b_.coeff(static_cast<std::size_t>(db - j));
                if (!bj.is_zero()) {
                    num[i + static_cast<std::size_t>(j)] = F.sub(num[i + static_cast<std::size_t>(j)], F.mul(c, bj));
                }
            }
        }
        return out;
    }

private:
    TPoly a_;
    TPoly b_;
};

BigInt empty_valuation(const Series& s) {
    // all known coefficients vanish
    return *s.horizon() + 1;
}

std::optional<BigInt> min_horizon(const std::optional<BigInt>& a, const std::optional<BigInt>& b) {
    if (!a) {
        return b;
    }
    if (!b) {
        return a;
    }
    return std::min(*a, *b);
}

} // namespace

Series::Series(FieldRef field) : field_(std::move(field)) {}

Series Series::exact(FieldRef field, TermMap terms) {
    Series s(std::move(field));
    for (auto it = terms.begin(); it != terms.end();) {
        it = it->second.is_zero() ? terms.erase(it) : std::next(it);
    }
    s.terms_ = std::move(terms);
    return s;
}

Series Series::truncated(FieldRef field, TermMap terms, BigInt horizon) {
    Series s = exact(std::move(field), std::move(terms));
    s.terms_.erase(s.terms_.upper_bound(horizon), s.terms_.end());
    s.horizon_ = std::move(horizon);
    return s;
}

Series Series::from_generator(FieldRef field, GeneratorRef gen, const BigInt& horizon) {
    Series s = truncated(field, gen->terms_through(horizon), horizon);
    s.gen_ = std::move(gen);
    return s;
}

Series Series::monomial(FieldRef field, Fq c, const BigInt& n) {
    TermMap t;
    if (!c.is_zero()) {
        t.emplace(n, c);
    }
    return exact(std::move(field), std::move(t));
}

Series Series::from_tpoly(const TPoly& p) {
    TermMap t;
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        if (!c[i].is_zero()) {
            t.emplace_hint(t.end(), -BigInt(i), c[i]);
        }
    }
    return exact(p.field(), std::move(t));
}

Fq Series::coeff(const BigInt& n) const {
    if (!horizon_ || n <= *horizon_) {
        auto it = terms_.find(n);
        return it == terms_.end() ? Fq{} : it->second;
    }
    if (gen_) {
        return gen_->coeff(n);
    }
    raise(Errc::BeyondHorizon, "coefficient " + n.str() + " beyond horizon " + horizon_->str());
}

AbsValue Series::abs() const {
    if (!terms_.empty()) {
        return AbsValue::exact(terms_.begin()->first);
    }
    if (!horizon_) {
        return AbsValue::zero();
    }
    return AbsValue::below(*horizon_ + 1);
}

std::optional<BigInt> Series::valuation() const {
    if (terms_.empty()) {
        return std::nullopt;
    }
    return terms_.begin()->first;
}

Series Series::advanced(const BigInt& horizon) const {
    if (!horizon_) {
        return *this;
    }
    if (horizon <= *horizon_) {
        return truncated_to(horizon);
    }
    if (!gen_) {
        raise(Errc::BeyondHorizon, "cannot extend a series without a generator past " + horizon_->str());
    }
    return from_generator(field_, gen_, horizon);
}

Series Series::truncated_to(const BigInt& horizon) const {
    Series s = *this;
    if (s.horizon_ && *s.horizon_ <= horizon) {
        return s;
    }
    s.terms_.erase(s.terms_.upper_bound(horizon), s.terms_.end());
    s.horizon_ = horizon;
    if (!horizon_) {
        s.gen_ = as_generator();
    }
    return s;
}

GeneratorRef Series::as_generator() const {
    if (gen_) {
        return gen_;
    }
    if (!horizon_) {
        return std::make_shared<FiniteGenerator>(terms_);
    }
    return nullptr;
}

Series Series::scaled(Fq c) const {
    if (c.is_zero()) {
        return Series(field_);
    }
    Series s = *this;
    for (auto& [n, v] : s.terms_) {
        v = field_->mul(v, c);
    }
    if (gen_) {
        s.gen_ = std::make_shared<LinearGenerator>(field_, std::vector<LinearGenerator::Part>{{gen_, c, 0}});
    }
    return s;
}

Series Series::operator-() const { return scaled(field_->neg(field_->one())); }

Series Series::times_t_power(const BigInt& k) const {
    Series s(field_);
    for (const auto& [n, v] : terms_) {
        s.terms_.emplace_hint(s.terms_.end(), n - k, v);
    }
    if (horizon_) {
        s.horizon_ = *horizon_ - k;
    }
    if (gen_) {
        s.gen_ = std::make_shared<LinearGenerator>(field_, std::vector<LinearGenerator::Part>{{gen_, field_->one(), -k}});
    }
    return s;
}

Series operator+(const Series& a, const Series& b) {
    require_same_field(*a.field_, *b.field_);
    const auto& F = *a.field_;
    Series s(a.field_);
    s.horizon_ = min_horizon(a.horizon_, b.horizon_);
    s.terms_ = a.terms_;
    for (const auto& [n, c] : b.terms_) {
        accumulate(F, s.terms_, n, c);
    }
    if (s.horizon_) {
        s.terms_.erase(s.terms_.upper_bound(*s.horizon_), s.terms_.end());
        if (a.is_extendable() && b.is_extendable()) {
            s.gen_ = std::make_shared<LinearGenerator>(
                a.field_, std::vector<LinearGenerator::Part>{{a.as_generator(), F.one(), 0}, {b.as_generator(), F.one(), 0}});
        }
    }
    return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    require_same_field(*a.field_, *b.field_);
    const auto& F = *a.field_;
    if ((a.is_exact() && a.terms_.empty()) || (b.is_exact() && b.terms_.empty())) {
        return Series(a.field_);
    }
    const BigInt na = a.terms_.empty() ? empty_valuation(a) : a.terms_.begin()->first;
    const BigInt nb = b.terms_.empty() ? empty_valuation(b) : b.terms_.begin()->first;
    std::optional<BigInt> horizon;
    if (a.horizon_) {
        horizon = *a.horizon_ + nb;
    }
    if (b.horizon_) {
        horizon = min_horizon(horizon, *b.horizon_ + na);
    }
    Series s(a.field_);
    s.horizon_ = horizon;
    for (const auto& [ea, ca] : a.terms_) {
        if (horizon && !b.terms_.empty() && ea + b.terms_.begin()->first > *horizon) {
            break;
        }
        for (const auto& [eb, cb] : b.terms_) {
            BigInt n = ea + eb;
            if (horizon && n > *horizon) {
                break;
            }
            accumulate(F, s.terms_, n, F.mul(ca, cb));
        }
    }
    return s;
}

Series Series::frobenius_pow(const BigInt& t) const {
    if (exact_log(t, BigInt(field_->p())) < 0) {
        raise(Errc::NotAPowerOfCharacteristic, t.str() + " is not a power of " + std::to_string(field_->p()));
    }
    Series s(field_);
    for (const auto& [n, c] : terms_) {
        s.terms_.emplace_hint(s.terms_.end(), n * t, field_->pow(c, t));
    }
    if (horizon_) {
        s.horizon_ = *horizon_ * t;
    }
    if (gen_) {
        s.gen_ = std::make_shared<FrobeniusGenerator>(field_, gen_, t);
    }
    return s;
}

Series Series::pth_root() const {
    const BigInt p = field_->p();
    Series s(field_);
    for (const auto& [n, c] : terms_) {
        if (n % p != 0) {
            raise(Errc::NotAPthPower, "exponent " + n.str() + " not divisible by " + p.str());
        }
        s.terms_.emplace_hint(s.terms_.end(), n / p, field_->pth_root(c));
    }
    if (horizon_) {
        s.horizon_ = floor_div(*horizon_, p);
    }
    if (gen_) {
        s.gen_ = std::make_shared<PthRootGenerator>(field_, gen_);
    }
    return s;
}

std::string Series::to_string(std::size_t max_terms) const {
    std::ostringstream out;
    std::size_t shown = 0;
    for (const auto& [n, c] : terms_) {
        if (shown == max_terms) {
            out << " + ...";
            break;
        }
        if (shown > 0) {
            out << " + ";
        }
        const std::string cs = field_->to_string(c);
        if (n == 0) {
            out << cs;
        } else {
            if (c.code != 1) {
                out << (cs.find('+') != std::string::npos ? "(" + cs + ")" : cs) << '*';
            }
            out << "T^" << BigInt(-n).str();
        }
        ++shown;
    }
    if (shown == 0) {
        out << '0';
    }
    if (horizon_) {
        out << " + O(T^-" << BigInt(*horizon_ + 1).str() << ')';
    }
    return out.str();
}

Series series_from_rational(const TPoly& a, const TPoly& b, const BigInt& horizon) {
    if (b.is_zero()) {
        raise(Errc::DivisionByZeroPoly, "rational with zero denominator");
    }
    require_same_field(*a.field(), *b.field());
    if (a.is_zero()) {
        return Series(a.field());
    }
    return Series::from_generator(a.field(), std::make_shared<RationalGenerator>(a, b), horizon);
}

AbsValue series_dist(const Series& x, const Series& y) { return (x - y).abs(); }

BigInt next_horizon(const BigInt& current, const BigInt& cap) {
    BigInt next = std::max(BigInt(current * 2), BigInt(current + 64));
    return std::min(next, cap);
}

AbsValue abs_refined(const Series& s, const RefinePolicy& policy) {
    Series cur = s;
    AbsValue v = cur.abs();
    while (v.is_below() && cur.generator() && *cur.horizon() < policy.max_horizon) {
        cur = cur.advanced(next_horizon(*cur.horizon(), policy.max_horizon));
        v = cur.abs();
    }
    return v;
}

} // namespace tnum
