#include "tnum/field.hpp"

#include "tnum/error.hpp"

#include <sstream>

namespace tnum {

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

namespace {

using Coeffs = std::vector<std::uint32_t>;

// Remainder of a modulo monic b over F_p, both ascending.
Coeffs poly_rem_mod_p(Coeffs a, const Coeffs& b, std::uint32_t p) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::uint32_t lead = a.back();
        if (lead != 0) {
            const std::size_t shift = a.size() - 1 - db;
            for (std::size_t i = 0; i <= db; ++i) {
                a[shift + i] = static_cast<std::uint32_t>(
                    (a[shift + i] + static_cast<std::uint64_t>(p - lead) * b[i]) % p);
            }
        }
        a.pop_back();
    }
    return a;
}

bool all_zero(const Coeffs& c) {
    for (auto v : c) {
        if (v != 0) {
            return false;
        }
    }
    return true;
}

} // namespace

bool is_irreducible_mod_p(const Coeffs& monic, std::uint32_t p) {
    if (monic.size() < 2 || monic.back() != 1) {
        return false;
    }
    const std::size_t deg = monic.size() - 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        // every monic divisor candidate of degree d
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) {
            count *= p;
        }
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Coeffs div(d + 1, 0);
            std::uint64_t v = idx;
            for (std::size_t i = 0; i < d; ++i) {
                div[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            div[d] = 1;
            if (all_zero(poly_rem_mod_p(monic, div, p))) {
                return false;
            }
        }
    }
    return true;
}

void require_same_field(const Field& a, const Field& b) {
    if (!(a == b)) {
        raise(Errc::FieldMismatch, a.describe() + " vs " + b.describe());
    }
}

FieldRef Field::make(std::uint32_t p, unsigned e, std::optional<Coeffs> modulus) {
    if (!is_prime(p)) {
        raise(Errc::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
    }
    if (e < 1 || e > kMaxExtension) {
        raise(Errc::InvalidArgument, "extension degree must lie in [1, 4]");
    }
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= p;
    }
    if (q > kMaxOrder) {
        raise(Errc::InvalidArgument, "field order exceeds 2^20");
    }
    Coeffs mod;
    if (e > 1) {
        if (modulus) {
            mod = *modulus;
            if (mod.size() != e + 1 || mod.back() != 1) {
                raise(Errc::ReducibleModulus, "modulus must be monic of degree e");
            }
            for (auto c : mod) {
                if (c >= p) {
                    raise(Errc::InvalidArgument, "modulus coefficient out of range");
                }
            }
            if (!is_irreducible_mod_p(mod, p)) {
                raise(Errc::ReducibleModulus, "modulus is reducible over F_p");
            }
        } else {
            // lexicographically smallest by the code sum c_i p^i of the lower part
            const std::uint64_t count = q;
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                Coeffs cand(e + 1, 0);
                std::uint64_t v = idx;
                for (unsigned i = 0; i < e; ++i) {
                    cand[i] = static_cast<std::uint32_t>(v % p);
                    v /= p;
                }
                cand[e] = 1;
                if (is_irreducible_mod_p(cand, p)) {
                    mod = std::move(cand);
                    break;
                }
            }
        }
    } else if (modulus && !(modulus->size() == 2 && (*modulus)[1] == 1)) {
        raise(Errc::InvalidArgument, "prime field takes no modulus");
    }
    return FieldRef(new Field(p, e, std::move(mod)));
}

Field::Field(std::uint32_t p, unsigned e, Coeffs modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
    pow_p_.push_back(1);
    for (unsigned i = 0; i < e_; ++i) {
        q_ *= p_;
        pow_p_.push_back(q_);
    }
    log_.assign(q_, 0);
    exp_.assign(q_ - 1, 0);
    // search for a generator of the multiplicative group
    for (std::uint32_t g = (q_ == 2 ? 1U : 2U); g < q_; ++g) {
        std::uint32_t x = 1;
        bool ok = true;
        for (std::uint32_t i = 0; i < q_ - 1; ++i) {
            if (i > 0 && x == 1) {
                ok = false;
                break;
            }
            exp_[i] = x;
            x = slow_mul(Fq{x}, Fq{g}).code;
        }
        if (ok && x == 1) {
            break;
        }
    }
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
        log_[exp_[i]] = i;
    }
}

Fq Field::slow_mul(Fq a, Fq b) const {
    const Coeffs ca = coords(a);
    const Coeffs cb = coords(b);
    Coeffs prod(2 * e_ - 1, 0);
    for (unsigned i = 0; i < e_; ++i) {
        for (unsigned j = 0; j < e_; ++j) {
            prod[i + j] = static_cast<std::uint32_t>(
                (prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
        }
    }
    if (e_ > 1) {
        prod = poly_rem_mod_p(std::move(prod), modulus_, p_);
    }
    prod.resize(e_, 0);
    return from_coords(prod);
}

Fq Field::element(std::uint32_t code) const {
    if (code >= q_) {
        raise(Errc::InvalidArgument, "element code out of range");
    }
    return Fq{code};
}

Fq Field::from_int(std::int64_t v) const noexcept {
    const auto pp = static_cast<std::int64_t>(p_);
    return Fq{static_cast<std::uint32_t>(((v % pp) + pp) % pp)};
}

Fq Field::from_int(const BigInt& v) const {
    BigInt r = v % p_;
    if (r < 0) {
        r += p_;
    }
    return Fq{r.convert_to<std::uint32_t>()};
}

Fq Field::add(Fq a, Fq b) const noexcept {
    if (e_ == 1) {
        std::uint32_t s = a.code + b.code;
        return Fq{s >= p_ ? s - p_ : s};
    }
    std::uint32_t out = 0;
    std::uint32_t x = a.code;
    std::uint32_t y = b.code;
    for (unsigned i = 0; i < e_; ++i) {
        std::uint32_t s = x % p_ + y % p_;
        if (s >= p_) {
            s -= p_;
        }
        out += s * pow_p_[i];
        x /= p_;
        y /= p_;
    }
    return Fq{out};
}

Fq Field::neg(Fq a) const noexcept {
    std::uint32_t out = 0;
    std::uint32_t x = a.code;
    for (unsigned i = 0; i < e_; ++i) {
        const std::uint32_t c = x % p_;
        out += (c == 0 ? 0 : p_ - c) * pow_p_[i];
        x /= p_;
    }
    return Fq{out};
}

Fq Field::sub(Fq a, Fq b) const noexcept { return add(a, neg(b)); }

Fq Field::mul(Fq a, Fq b) const noexcept {
    if (a.is_zero() || b.is_zero()) {
        return Fq{0};
    }
    std::uint32_t s = log_[a.code] + log_[b.code];
    if (s >= q_ - 1) {
        s -= q_ - 1;
    }
    return Fq{exp_[s]};
}

Fq Field::inv(Fq a) const {
    if (a.is_zero()) {
        raise(Errc::InvalidArgument, "inverse of zero in F_q");
    }
    const std::uint32_t l = log_[a.code];
    return Fq{exp_[l == 0 ? 0 : q_ - 1 - l]};
}

Fq Field::pow(Fq a, std::uint64_t n) const noexcept {
    if (n == 0) {
        return one();
    }
    if (a.is_zero()) {
        return zero();
    }
    const std::uint64_t l = (static_cast<std::uint64_t>(log_[a.code]) * (n % (q_ - 1))) % (q_ - 1);
    return Fq{exp_[l]};
}

Fq Field::pow(Fq a, const BigInt& n) const {
    if (n < 0) {
        return pow(inv(a), BigInt(-n));
    }
    if (n == 0) {
        return one();
    }
    if (a.is_zero()) {
        return zero();
    }
    const BigInt reduced = n % (q_ - 1);
    return pow(a, reduced.convert_to<std::uint64_t>() + (reduced == 0 ? (q_ - 1) : 0));
}

std::vector<std::uint32_t> Field::coords(Fq a) const {
    Coeffs out(e_, 0);
    std::uint32_t x = a.code;
    for (unsigned i = 0; i < e_; ++i) {
        out[i] = x % p_;
        x /= p_;
    }
    return out;
}

Fq Field::from_coords(const Coeffs& c) const {
    std::uint32_t out = 0;
    for (unsigned i = 0; i < e_ && i < c.size(); ++i) {
        out += (c[i] % p_) * pow_p_[i];
    }
    return Fq{out};
}

std::string Field::to_string(Fq a) const {
    if (e_ == 1) {
        return std::to_string(a.code);
    }
    // power-basis rendering with generator name "g"
    const Coeffs c = coords(a);
    std::ostringstream out;
    bool first = true;
    for (unsigned i = e_; i-- > 0;) {
        if (c[i] == 0) {
            continue;
        }
        if (!first) {
            out << '+';
        }
        first = false;
        if (i == 0 || c[i] != 1) {
            out << c[i];
        }
        if (i > 0) {
            out << 'g';
            if (i > 1) {
                out << '^' << i;
            }
        }
    }
    if (first) {
        out << '0';
    }
    return out.str();
}

std::string Field::describe() const {
    std::ostringstream out;
    out << "F_" << q_;
    if (e_ > 1) {
        out << " (mod";
        for (auto c : modulus_) {
            out << ' ' << c;
        }
        out << ')';
    }
    return out.str();
}

} // namespace tnum
