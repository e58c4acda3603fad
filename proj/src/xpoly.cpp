#include "tnum/xpoly.hpp"

#include "tnum/error.hpp"

#include <map>
#include <sstream>

namespace tnum {

XPoly::XPoly(FieldRef field) : field_(std::move(field)) {}

XPoly::XPoly(FieldRef field, std::vector<TPoly> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) {
        if (!c.field()) {
            c = TPoly(field_);
        }
    }
    trim();
}

XPoly XPoly::from_codes(FieldRef field, const std::vector<std::vector<std::uint32_t>>& codes) {
    std::vector<TPoly> c;
    c.reserve(codes.size());
    for (const auto& v : codes) {
        c.push_back(TPoly::from_codes(field, v));
    }
    return XPoly(std::move(field), std::move(c));
}

void XPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        coeffs_.pop_back();
    }
}

QPow XPoly::height() const {
    QPow h = QPow::of_zero();
    for (const auto& c : coeffs_) {
        const QPow a = c.abs();
        if (h < a) {
            h = a;
        }
    }
    return h;
}

long XPoly::max_coeff_degree() const noexcept {
    long d = TPoly::kZeroDegree;
    for (const auto& c : coeffs_) {
        d = std::max(d, c.degree());
    }
    return d;
}

bool XPoly::is_primitive() const {
    if (is_zero()) {
        return false;
    }
    return content_primitive(coeffs_).content.degree() == 0;
}

XPoly XPoly::derivative() const {
    std::vector<TPoly> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        d.push_back(coeffs_[i].scaled(field_->from_int(static_cast<std::int64_t>(i))));
    }
    return XPoly(field_, std::move(d));
}

XPoly operator+(const XPoly& a, const XPoly& b) {
    require_same_field(*a.field_, *b.field_);
    std::vector<TPoly> c(std::max(a.coeffs_.size(), b.coeffs_.size()), TPoly(a.field_));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < a.coeffs_.size()) {
            c[i] = c[i] + a.coeffs_[i];
        }
        if (i < b.coeffs_.size()) {
            c[i] = c[i] + b.coeffs_[i];
        }
    }
    return XPoly(a.field_, std::move(c));
}

XPoly operator*(const XPoly& a, const XPoly& b) {
    require_same_field(*a.field_, *b.field_);
    if (a.is_zero() || b.is_zero()) {
        return XPoly(a.field_);
    }
    std::vector<TPoly> c(a.coeffs_.size() + b.coeffs_.size() - 1, TPoly(a.field_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            c[i + j] = c[i + j] + a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return XPoly(a.field_, std::move(c));
}

std::string XPoly::to_string() const {
    if (is_zero()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const TPoly& c = coeffs_[i];
        if (c.is_zero()) {
            continue;
        }
        if (!first) {
            out << " + ";
        }
        first = false;
        const std::string cs = c.to_string();
        if (i == 0) {
            out << cs;
            continue;
        }
        if (!(c.degree() == 0 && c.lead().code == 1)) {
            out << (c.coeffs().size() > 1 && cs.find('+') != std::string::npos ? "(" + cs + ")" : cs) << '*';
        }
        out << 'X';
        if (i > 1) {
            out << '^' << i;
        }
    }
    return out.str();
}

namespace {

XPoly scaled_by(const XPoly& a, const TPoly& c, std::size_t x_shift) {
    std::vector<TPoly> out(a.coeffs().size() + x_shift, TPoly(a.field()));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        out[i + x_shift] = a.coeffs()[i] * c;
    }
    return XPoly(a.field(), std::move(out));
}

XPoly negated(const XPoly& a) {
    std::vector<TPoly> out;
    for (const auto& c : a.coeffs()) {
        out.push_back(-c);
    }
    return XPoly(a.field(), std::move(out));
}

// Pseudo-division; returns (quotient, remainder) of lc(b)^k a by b.
std::pair<XPoly, XPoly> pseudo_divide(const XPoly& a, const XPoly& b) {
    if (b.is_zero()) {
        raise(Errc::DivisionByZeroPoly, "pseudo-division by the zero polynomial");
    }
    XPoly r = a;
    XPoly q(a.field());
    const TPoly& lb = b.lead();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const auto shift = static_cast<std::size_t>(r.degree() - b.degree());
        const TPoly lr = r.lead();
        std::vector<TPoly> mono(shift + 1, TPoly(a.field()));
        mono[shift] = lr;
        q = scaled_by(q, lb, 0) + XPoly(a.field(), mono);
        r = scaled_by(r, lb, 0) + negated(scaled_by(b, lr, shift));
    }
    return {q, r};
}

} // namespace

XPoly primitive_part(const XPoly& p) {
    if (p.is_zero()) {
        return p;
    }
    return XPoly(p.field(), content_primitive(p.coeffs()).primitive);
}

XPoly pseudo_rem(const XPoly& a, const XPoly& b) { return pseudo_divide(a, b).second; }

XPoly xpoly_gcd(const XPoly& a, const XPoly& b) {
    XPoly x = primitive_part(a);
    XPoly y = primitive_part(b);
    if (x.degree() < y.degree()) {
        std::swap(x, y);
    }
    while (!y.is_zero()) {
        XPoly r = primitive_part(pseudo_rem(x, y));
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero()) {
        return x;
    }
    const Fq l = x.lead().lead();
    const TPoly unit = TPoly::constant(x.field(), x.field()->inv(l));
    return scaled_by(x, unit, 0);
}

XPoly xpoly_exact_quotient(const XPoly& a, const XPoly& b) {
    auto [q, r] = pseudo_divide(a, b);
    if (!r.is_zero()) {
        raise(Errc::InvalidArgument, "exact quotient with nonzero remainder");
    }
    return primitive_part(q);
}

QPow xpoly_height(const XPoly& p) {
    if (p.is_zero()) {
        raise(Errc::ZeroPolynomial, "height of the zero polynomial");
    }
    return p.height();
}

EvalResult xpoly_eval(const XPoly& p, const Series& s) {
    require_same_field(*p.field(), *s.field());
    const auto& F = *s.field();
    const std::uint64_t prime = F.p();
    // Frobenius images s^{p^k}, built on demand
    std::vector<Series> frob{s};
    std::map<std::size_t, Series> powers;
    auto power = [&](std::size_t i) -> Series {
        if (auto it = powers.find(i); it != powers.end()) {
            return it->second;
        }
        Series acc = Series::monomial(s.field(), F.one(), 0);
        std::size_t rest = i;
        for (std::size_t k = 0; rest != 0; ++k, rest /= prime) {
            while (frob.size() <= k) {
                frob.push_back(frob.back().frobenius_pow(BigInt(prime)));
            }
            for (std::size_t d = 0; d < rest % prime; ++d) {
                acc = acc * frob[k];
            }
        }
        powers.emplace(i, acc);
        return acc;
    };
    Series value(s.field());
    bool first = true;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        const TPoly& c = p.coeffs()[i];
        if (c.is_zero()) {
            continue;
        }
        Series term = Series::from_tpoly(c) * power(i);
        value = first ? term : value + term;
        first = false;
    }
    AbsValue a = value.abs();
    return {std::move(value), std::move(a)};
}

EvalResult xpoly_eval_refined(const XPoly& p, const Series& s, const RefinePolicy& policy) {
    Series cur = s;
    EvalResult r = xpoly_eval(p, cur);
    while (r.abs.is_below()) {
        if (!cur.generator() || *cur.horizon() >= policy.max_horizon) {
            raise(Errc::PrecisionExhausted,
                  "P(s) vanishes through the refinement cap for P = " + p.to_string());
        }
        cur = cur.advanced(next_horizon(*cur.horizon(), policy.max_horizon));
        r = xpoly_eval(p, cur);
    }
    return r;
}

} // namespace tnum
