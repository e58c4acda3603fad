#include "tnum/roots.hpp"

#include "tnum/error.hpp"

#include <algorithm>
#include <climits>
#include <optional>

namespace tnum {

namespace {

// Finite Laurent polynomial in t = T^{-1}: sum c[i] t^{lo + i}.
struct Lau {
    long lo = 0;
    std::vector<Fq> c;

    bool is_zero() const noexcept { return c.empty(); }
    long ord() const noexcept { return lo; }
    long hi() const noexcept { return lo + static_cast<long>(c.size()) - 1; }
    Fq lc() const noexcept { return c.front(); }

    friend bool operator==(const Lau& a, const Lau& b) { return a.lo == b.lo && a.c == b.c; }
};

void normalize(Lau& a) {
    std::size_t first = 0;
    while (first < a.c.size() && a.c[first].is_zero()) {
        ++first;
    }
    if (first == a.c.size()) {
        a = Lau{};
        return;
    }
    while (a.c.back().is_zero()) {
        a.c.pop_back();
    }
    a.c.erase(a.c.begin(), a.c.begin() + static_cast<long>(first));
    a.lo += static_cast<long>(first);
}

Lau from_tpoly(const TPoly& p) {
    Lau out;
    if (p.is_zero()) {
        return out;
    }
    out.lo = -p.degree();
    out.c.assign(p.coeffs().rbegin(), p.coeffs().rend());
    normalize(out);
    return out;
}

Lau add(const Field& F, const Lau& a, const Lau& b) {
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    Lau out;
    out.lo = std::min(a.lo, b.lo);
    out.c.assign(static_cast<std::size_t>(std::max(a.hi(), b.hi()) - out.lo + 1), Fq{});
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        auto& d = out.c[static_cast<std::size_t>(a.lo - out.lo) + i];
        d = F.add(d, a.c[i]);
    }
    for (std::size_t i = 0; i < b.c.size(); ++i) {
        auto& d = out.c[static_cast<std::size_t>(b.lo - out.lo) + i];
        d = F.add(d, b.c[i]);
    }
    normalize(out);
    return out;
}

// Product keeping exponents <= cap.
Lau mul(const Field& F, const Lau& a, const Lau& b, long cap = LONG_MAX) {
    if (a.is_zero() || b.is_zero() || a.lo + b.lo > cap) {
        return {};
    }
    Lau out;
    out.lo = a.lo + b.lo;
    const long top = std::min(a.hi() + b.hi(), cap);
    out.c.assign(static_cast<std::size_t>(top - out.lo + 1), Fq{});
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) {
            continue;
        }
        const std::size_t room = out.c.size() - i;
        const std::size_t n = std::min(b.c.size(), room);
        for (std::size_t j = 0; j < n; ++j) {
            out.c[i + j] = F.add(out.c[i + j], F.mul(a.c[i], b.c[j]));
        }
        if (room == 0) {
            break;
        }
    }
    normalize(out);
    return out;
}

Lau scaled_shift(const Field& F, const Lau& a, Fq s, long k) {
    Lau out = a;
    out.lo += k;
    for (auto& x : out.c) {
        x = F.mul(x, s);
    }
    normalize(out);
    return out;
}

Lau truncated(Lau a, long cap) {
    if (a.is_zero() || a.lo > cap) {
        return {};
    }
    if (a.hi() > cap) {
        a.c.resize(static_cast<std::size_t>(cap - a.lo + 1));
    }
    normalize(a);
    return a;
}

TermMap to_terms(const Lau& a) {
    TermMap out;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i].is_zero()) {
            out.emplace_hint(out.end(), BigInt(a.lo + static_cast<long>(i)), a.c[i]);
        }
    }
    return out;
}

Lau horner(const Field& F, const std::vector<Lau>& q, const Lau& x) {
    Lau acc;
    for (std::size_t i = q.size(); i-- > 0;) {
        acc = add(F, mul(F, acc, x), q[i]);
    }
    return acc;
}

// Binomial coefficient mod p by Lucas.
std::uint32_t binom_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
    std::uint64_t result = 1;
    while (n != 0 || k != 0) {
        const std::uint64_t a = n % p;
        const std::uint64_t b = k % p;
        if (b > a) {
            return 0;
        }
        std::uint64_t c = 1;
        for (std::uint64_t i = 0; i < b; ++i) {
            c = c * (a - i) / (i + 1);
        }
        result = result * (c % p) % p;
        n /= p;
        k /= p;
    }
    return static_cast<std::uint32_t>(result);
}

// Dense power series mod t^len.
using Dense = std::vector<Fq>;

Dense ps_mul(const Field& F, const Dense& a, const Dense& b, std::size_t len) {
    Dense out(len);
    for (std::size_t i = 0; i < std::min(a.size(), len); ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
            out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
        }
    }
    return out;
}

Dense ps_inv(const Field& F, const Dense& a, std::size_t len) {
    Dense out(len);
    const Fq inv0 = F.inv(a.at(0));
    for (std::size_t n = 0; n < len; ++n) {
        Fq acc = n == 0 ? F.one() : Fq{};
        for (std::size_t i = 1; i <= n && i < a.size(); ++i) {
            acc = F.sub(acc, F.mul(a[i], out[n - i]));
        }
        out[n] = F.mul(acc, inv0);
    }
    return out;
}

Dense ps_eval(const Field& F, const std::vector<Dense>& q, const Dense& y, std::size_t len) {
    Dense acc(len);
    for (std::size_t i = q.size(); i-- > 0;) {
        acc = ps_mul(F, acc, y, len);
        for (std::size_t j = 0; j < len && j < q[i].size(); ++j) {
            acc[j] = F.add(acc[j], q[i][j]);
        }
    }
    return acc;
}

class Solver {
public:
    Solver(FieldRef field, long horizon, const RootOptions& options)
        : field_(std::move(field)), F_(*field_), horizon_(horizon), options_(options) {}

    // Roots of q with t-order > bound, known through the horizon.
    std::vector<Lau> solve(std::vector<Lau> q, std::optional<long> bound, unsigned depth) const {
        while (!q.empty() && q.back().is_zero()) {
            q.pop_back();
        }
        std::vector<Lau> roots;
        if (q.size() <= 1) {
            return roots;
        }
        std::size_t i0 = 0;
        while (q[i0].is_zero()) {
            ++i0;
        }
        if (i0 > 0) {
            roots.emplace_back();
        }
        // lower convex hull of (i, ord q_i)
        std::vector<std::size_t> hull;
        for (std::size_t i = i0; i < q.size(); ++i) {
            if (q[i].is_zero()) {
                continue;
            }
            while (hull.size() >= 2) {
                const auto a = hull[hull.size() - 2];
                const auto b = hull.back();
                const long lhs = (q[b].ord() - q[a].ord()) * static_cast<long>(i - b);
                const long rhs = (q[i].ord() - q[b].ord()) * static_cast<long>(b - a);
                if (lhs < rhs) {
                    break;
                }
                hull.pop_back();
            }
            hull.push_back(i);
        }
        for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
            const std::size_t a = hull[s];
            const std::size_t b = hull[s + 1];
            const long num = q[a].ord() - q[b].ord();
            const auto den = static_cast<long>(b - a);
            if (num % den != 0) {
                continue;  // ramified
            }
            const long mu = num / den;
            if (bound && mu <= *bound) {
                continue;
            }
            const long v = q[a].ord() + static_cast<long>(a) * mu;
            std::vector<Fq> residue(b - a + 1);
            for (std::size_t l = a; l <= b; ++l) {
                if (!q[l].is_zero() && q[l].ord() + static_cast<long>(l) * mu == v) {
                    residue[l - a] = q[l].lc();
                }
            }
            TPoly r(field_, residue);
            for (std::uint32_t code = 1; code < F_.q(); ++code) {
                const Fq c{code};
                unsigned mult = 0;
                TPoly rest = r;
                const TPoly lin = TPoly::from_codes(field_, {F_.neg(c).code, 1});
                while (rest.degree() > 0 && rest.eval(c).is_zero()) {
                    rest = divrem(rest, lin).quotient;
                    ++mult;
                }
                if (mult == 0) {
                    continue;
                }
                if (mu > horizon_) {
                    raise(Errc::HorizonTooSmall, "a root has order " + std::to_string(mu) +
                                                     " beyond horizon " + std::to_string(horizon_));
                }
                if (mult == 1) {
                    roots.push_back(lift(q, mu, v, c));
                    continue;
                }
                if (depth + 1 > options_.max_depth) {
                    raise(Errc::RecursionCapExceeded, "roots not separated after " +
                                                          std::to_string(options_.max_depth) + " shifts");
                }
                for (const Lau& sub : solve(shift(q, c, mu), mu, depth + 1)) {
                    roots.push_back(truncated(add(F_, sub, Lau{mu, {c}}), horizon_));
                }
            }
        }
        return roots;
    }

private:
    // q(c t^mu + X) by Taylor expansion; powers of the shift are monomials.
    std::vector<Lau> shift(const std::vector<Lau>& q, Fq c, long mu) const {
        std::vector<Lau> out(q.size());
        for (std::size_t k = 0; k < q.size(); ++k) {
            for (std::size_t i = k; i < q.size(); ++i) {
                if (q[i].is_zero()) {
                    continue;
                }
                const std::uint32_t b = binom_mod(i, k, F_.p());
                if (b == 0) {
                    continue;
                }
                const Fq coef = F_.mul(F_.from_int(b), F_.pow(c, static_cast<std::uint64_t>(i - k)));
                out[k] = add(F_, out[k], scaled_shift(F_, q[i], coef, static_cast<long>(i - k) * mu));
            }
        }
        return out;
    }

    // Hensel lift of a simple residue root c on the segment of order mu.
    Lau lift(const std::vector<Lau>& q, long mu, long v, Fq c) const {
        const auto len = static_cast<std::size_t>(horizon_ - mu + 1);
        std::vector<Dense> qt(q.size());
        std::vector<Dense> dq(q.size() > 1 ? q.size() - 1 : 0);
        for (std::size_t l = 0; l < q.size(); ++l) {
            if (q[l].is_zero()) {
                continue;
            }
            const long off = q[l].lo + static_cast<long>(l) * mu - v;
            if (off < 0) {
                raise(Errc::InvalidArgument, "Newton polygon segment is not a lower edge");
            }
            Dense d(len);
            for (std::size_t j = 0; j < q[l].c.size(); ++j) {
                const auto pos = static_cast<std::size_t>(off) + j;
                if (pos < len) {
                    d[pos] = q[l].c[j];
                }
            }
            qt[l] = d;
        }
        for (std::size_t l = 1; l < qt.size(); ++l) {
            Dense d = qt[l];
            const Fq f = F_.from_int(static_cast<std::int64_t>(l));
            for (auto& x : d) {
                x = F_.mul(x, f);
            }
            dq[l - 1] = std::move(d);
        }
        Dense y(len);
        y[0] = c;
        std::size_t prec = 1;
        while (prec < len) {
            prec = std::min(prec * 2, len);
            const Dense f = ps_eval(F_, qt, y, prec);
            const Dense fp = ps_eval(F_, dq, y, prec);
            const Dense delta = ps_mul(F_, f, ps_inv(F_, fp, prec), prec);
            for (std::size_t j = 0; j < prec; ++j) {
                y[j] = F_.sub(y[j], delta[j]);
            }
        }
        Lau out{mu, std::move(y)};
        normalize(out);
        return out;
    }

    FieldRef field_;
    const Field& F_;
    long horizon_;
    RootOptions options_;
};

std::vector<Lau> to_lau(const XPoly& p) {
    std::vector<Lau> out;
    for (const auto& c : p.coeffs()) {
        out.push_back(from_tpoly(c));
    }
    return out;
}

std::vector<Lau> distinct_roots(const XPoly& p, long horizon, const RootOptions& options) {
    if (p.degree() <= 0) {
        return {};
    }
    const FieldRef& field = p.field();
    const Field& F = *field;
    const XPoly dp = p.derivative();
    if (dp.is_zero()) {
        // P(X) = Q(X^p): roots are p-th roots of the roots of Q
        const std::uint32_t prime = F.p();
        std::vector<TPoly> qc;
        for (std::size_t i = 0; i < p.coeffs().size(); i += prime) {
            qc.push_back(p.coeffs()[i]);
        }
        std::vector<Lau> out;
        for (const Lau& z : distinct_roots(XPoly(field, qc), horizon * static_cast<long>(prime), options)) {
            Lau w;
            bool ok = true;
            if (!z.is_zero()) {
                if (z.lo % static_cast<long>(prime) != 0) {
                    ok = false;
                }
                w.lo = z.lo / static_cast<long>(prime);
                for (std::size_t i = 0; i < z.c.size() && ok; ++i) {
                    if (i % prime == 0) {
                        w.c.push_back(F.pth_root(z.c[i]));
                    } else if (!z.c[i].is_zero()) {
                        ok = false;
                    }
                }
            }
            if (ok) {
                normalize(w);
                out.push_back(truncated(std::move(w), horizon));
            }
        }
        return out;
    }
    const XPoly g = xpoly_gcd(p, dp);
    if (g.degree() <= 0) {
        return Solver(field, horizon, options).solve(to_lau(p), std::nullopt, 0);
    }
    // roots of multiplicity prime to p live on the separable part w; the
    // others on the part of g coprime to w, which is a polynomial in X^p
    const XPoly w = xpoly_exact_quotient(p, g);
    std::vector<Lau> out = Solver(field, horizon, options).solve(to_lau(w), std::nullopt, 0);
    XPoly rest = g;
    for (;;) {
        const XPoly common = xpoly_gcd(rest, w);
        if (common.degree() <= 0) {
            break;
        }
        rest = xpoly_exact_quotient(rest, common);
    }
    for (Lau& r : distinct_roots(rest, horizon, options)) {
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

XPoly hasse_derivative(const XPoly& p, std::size_t k) {
    const Field& F = *p.field();
    std::vector<TPoly> out;
    for (std::size_t i = k; i < p.coeffs().size(); ++i) {
        out.push_back(p.coeffs()[i].scaled(F.from_int(binom_mod(i, k, F.p()))));
    }
    return XPoly(p.field(), std::move(out));
}

std::vector<RootDescriptor> roots_in_field(const XPoly& p, long horizon, const RootOptions& options) {
    if (p.is_zero()) {
        raise(Errc::ZeroPolynomial, "roots of the zero polynomial");
    }
    const FieldRef& field = p.field();
    const Field& F = *field;
    std::vector<Lau> found = distinct_roots(primitive_part(p), horizon, options);
    std::sort(found.begin(), found.end(), [](const Lau& a, const Lau& b) {
        return std::tie(a.lo, a.c) < std::tie(b.lo, b.c);
    });
    found.erase(std::unique(found.begin(), found.end()), found.end());

    const std::vector<Lau> coeffs = to_lau(p);
    std::vector<RootDescriptor> out;
    long total = 0;
    for (const Lau& r : found) {
        const bool exact = horner(F, coeffs, r).is_zero();
        const long m = r.is_zero() ? horizon + 1 : std::min(r.ord(), horizon + 1);
        unsigned mult = 0;
        for (std::size_t k = 0; k <= static_cast<std::size_t>(p.degree()); ++k) {
            const std::vector<Lau> dk = to_lau(hasse_derivative(p, k));
            const Lau value = horner(F, dk, r);
            if (value.is_zero()) {
                continue;
            }
            if (!exact) {
                long limit = LONG_MAX;
                for (std::size_t i = 1; i < dk.size(); ++i) {
                    if (!dk[i].is_zero()) {
                        limit = std::min(limit, dk[i].ord() + static_cast<long>(i - 1) * m + horizon + 1);
                    }
                }
                if (value.ord() >= limit) {
                    continue;
                }
            }
            mult = static_cast<unsigned>(k);
            break;
        }
        if (mult == 0) {
            raise(Errc::HorizonTooSmall, "candidate root is not a root at horizon " + std::to_string(horizon));
        }
        total += mult;
        RootDescriptor d;
        d.defining = p;
        d.root = exact ? Series::exact(field, to_terms(r)) : Series::truncated(field, to_terms(r), BigInt(horizon));
        d.multiplicity = mult;
        d.height_bound = p.height();
        d.degree_bound = p.degree();
        out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end(), [](const RootDescriptor& a, const RootDescriptor& b) {
        return a.root.terms() < b.root.terms();
    });
    if (total > p.degree()) {
        raise(Errc::HorizonTooSmall, "multiplicities exceed the degree at horizon " + std::to_string(horizon));
    }
    return out;
}

} // namespace tnum
