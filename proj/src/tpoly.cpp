#include "tnum/tpoly.hpp"

#include "tnum/error.hpp"

#include <sstream>

namespace tnum {

std::string QPow::to_string() const {
    if (zero) {
        return "0";
    }
    return "q^" + exponent.str();
}

TPoly::TPoly(FieldRef field) : field_(std::move(field)) {}

TPoly::TPoly(FieldRef field, std::vector<Fq> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    trim();
}

TPoly TPoly::constant(FieldRef field, Fq c) { return TPoly(std::move(field), {c}); }

TPoly TPoly::monomial(FieldRef field, Fq c, std::size_t degree) {
    std::vector<Fq> v(degree + 1);
    v[degree] = c;
    return TPoly(std::move(field), std::move(v));
}

TPoly TPoly::from_codes(FieldRef field, const std::vector<std::uint32_t>& codes) {
    std::vector<Fq> v;
    v.reserve(codes.size());
    for (auto c : codes) {
        v.push_back(field->element(c));
    }
    return TPoly(std::move(field), std::move(v));
}

void TPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        coeffs_.pop_back();
    }
}

QPow TPoly::abs() const {
    if (is_zero()) {
        return QPow::of_zero();
    }
    return QPow::power(BigInt(degree()));
}

TPoly TPoly::operator-() const {
    std::vector<Fq> v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = field_->neg(coeffs_[i]);
    }
    return TPoly(field_, std::move(v));
}

TPoly operator+(const TPoly& a, const TPoly& b) {
    require_same_field(*a.field_, *b.field_);
    const auto& F = *a.field_;
    std::vector<Fq> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = F.add(a.coeff(i), b.coeff(i));
    }
    return TPoly(a.field_, std::move(v));
}

TPoly operator-(const TPoly& a, const TPoly& b) { return a + (-b); }

TPoly operator*(const TPoly& a, const TPoly& b) {
    require_same_field(*a.field_, *b.field_);
    if (a.is_zero() || b.is_zero()) {
        return TPoly(a.field_);
    }
    const auto& F = *a.field_;
    std::vector<Fq> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            v[i + j] = F.add(v[i + j], F.mul(a.coeffs_[i], b.coeffs_[j]));
        }
    }
    return TPoly(a.field_, std::move(v));
}

TPoly TPoly::scaled(Fq c) const {
    std::vector<Fq> v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = field_->mul(coeffs_[i], c);
    }
    return TPoly(field_, std::move(v));
}

TPoly TPoly::shifted(std::size_t k) const {
    if (is_zero()) {
        return *this;
    }
    std::vector<Fq> v(k, Fq{});
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return TPoly(field_, std::move(v));
}

TPoly TPoly::monic() const {
    if (is_zero()) {
        return *this;
    }
    return scaled(field_->inv(lead()));
}

Fq TPoly::eval(Fq x) const {
    Fq acc{};
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        acc = field_->add(field_->mul(acc, x), coeffs_[i]);
    }
    return acc;
}

std::string TPoly::to_string(char var) const {
    if (is_zero()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const Fq c = coeffs_[i];
        if (c.is_zero()) {
            continue;
        }
        if (!first) {
            out << '+';
        }
        first = false;
        const std::string cs = field_->to_string(c);
        const bool compound = cs.find('+') != std::string::npos;
        if (i == 0) {
            out << cs;
            continue;
        }
        if (c.code != 1) {
            out << (compound ? "(" + cs + ")" : cs) << '*';
        }
        out << var;
        if (i > 1) {
            out << '^' << i;
        }
    }
    return out.str();
}

DivRem divrem(const TPoly& a, const TPoly& b) {
    require_same_field(*a.field(), *b.field());
    if (b.is_zero()) {
        raise(Errc::DivisionByZeroPoly, "divrem by the zero polynomial");
    }
    const auto& F = *a.field();
    if (a.degree() < b.degree()) {
        return {TPoly(a.field()), a};
    }
    std::vector<Fq> rem = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    const Fq inv_lead = F.inv(bc.back());
    std::vector<Fq> quo(rem.size() - db);
    for (std::size_t k = quo.size(); k-- > 0;) {
        const Fq t = F.mul(rem[k + db], inv_lead);
        quo[k] = t;
        if (t.is_zero()) {
            continue;
        }
        for (std::size_t i = 0; i <= db; ++i) {
            rem[k + i] = F.sub(rem[k + i], F.mul(t, bc[i]));
        }
    }
    rem.resize(db);
    return {TPoly(a.field(), std::move(quo)), TPoly(a.field(), std::move(rem))};
}

TPoly gcd(const TPoly& a, const TPoly& b) {
    TPoly x = a;
    TPoly y = b;
    while (!y.is_zero()) {
        TPoly r = divrem(x, y).remainder;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

ContentPrimitive content_primitive(const std::vector<TPoly>& entries) {
    TPoly g;
    bool any = false;
    for (const auto& e : entries) {
        if (e.is_zero()) {
            continue;
        }
        g = any ? gcd(g, e) : e.monic();
        any = true;
    }
    if (!any) {
        raise(Errc::AllZero, "content of an all-zero vector");
    }
    ContentPrimitive out{g, {}};
    out.primitive.reserve(entries.size());
    for (const auto& e : entries) {
        out.primitive.push_back(divrem(e, g).quotient);
    }
    return out;
}

} // namespace tnum
