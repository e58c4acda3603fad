#include "tnum/scan.hpp"

#include "tnum/error.hpp"
#include "tnum/roots.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace tnum {

namespace {

constexpr std::size_t kExampleCap = 16;

// Generator vectors theta^s T^k xi^i as F_p planes over the exponent window.
// Digit d = (k (n + 1) + i) e + s, so T-degree k is the slow axis and shell h
// is the range [p^{D (h - 1)}, p^{D h}) with D = (n + 1) e.
struct Layout {
    FieldRef field;
    std::uint32_t p = 2;
    unsigned e = 1;
    long n = 1;
    long h_max = 1;
    long lo = 0;
    long window = 0;
    std::size_t used = 0;   // meaningful bytes
    std::size_t bytes = 0;  // padded
    std::vector<std::vector<std::uint8_t>> gens;

    std::size_t digits_per_layer() const { return static_cast<std::size_t>(n + 1) * e; }
};

std::vector<Series> powers_through(const Series& xi, long n, const BigInt& need) {
    const FieldRef& field = xi.field();
    BigInt k = std::max(xi.horizon().value_or(need), need);
    for (int attempt = 0; attempt < 16; ++attempt) {
        const Series base = xi.is_exact() ? xi : (xi.generator() ? xi.advanced(k) : xi);
        std::vector<Series> pw{Series::monomial(field, field->one(), 0)};
        bool ok = true;
        for (long i = 1; i <= n; ++i) {
            pw.push_back(pw.back() * base);
            if (pw.back().horizon() && *pw.back().horizon() < need) {
                ok = false;
            }
        }
        if (ok) {
            return pw;
        }
        if (!xi.generator()) {
            break;
        }
        k *= 2;
    }
    raise(Errc::PrecisionExhausted, "xi is not known far enough to fill the scan window");
}

Layout make_layout(const Series& xi, long n, long h_max, long window) {
    Layout L;
    L.field = xi.field();
    const Field& F = *L.field;
    L.p = F.p();
    L.e = F.e();
    L.n = n;
    L.h_max = h_max;
    L.window = window;
    const BigInt need = BigInt(window) + h_max;
    const std::vector<Series> pw = powers_through(xi, n, need);
    long low = 0;
    for (const auto& s : pw) {
        if (!s.terms().empty() && s.terms().begin()->first < low) {
            low = s.terms().begin()->first.convert_to<long>();
        }
    }
    L.lo = low - (h_max - 1);
    L.used = static_cast<std::size_t>(window - L.lo + 1) * L.e;
    L.bytes = simd::padded(L.used);
    const std::size_t D = L.digits_per_layer();
    L.gens.assign(D * static_cast<std::size_t>(h_max), std::vector<std::uint8_t>(L.bytes, 0));
    std::uint32_t ps = 1;
    std::vector<Fq> theta;
    for (unsigned s = 0; s < L.e; ++s, ps *= L.p) {
        theta.push_back(Fq{ps});
    }
    for (long k = 0; k < h_max; ++k) {
        for (long i = 0; i <= n; ++i) {
            for (const auto& [x, c] : pw[static_cast<std::size_t>(i)].terms()) {
                const BigInt pos = x - k;
                if (pos < L.lo || pos > window) {
                    continue;
                }
                const auto base = static_cast<std::size_t>((pos.convert_to<long>() - L.lo)) * L.e;
                for (unsigned s = 0; s < L.e; ++s) {
                    const auto coords = F.coords(F.mul(c, theta[s]));
                    auto& g = L.gens[(static_cast<std::size_t>(k * (n + 1) + i)) * L.e + s];
                    for (unsigned t = 0; t < L.e; ++t) {
                        g[base + t] = static_cast<std::uint8_t>(coords[t]);
                    }
                }
            }
        }
    }
    return L;
}

XPoly decode(const Layout& L, const std::vector<std::uint8_t>& digits, long h) {
    std::vector<std::vector<Fq>> c(static_cast<std::size_t>(L.n + 1), std::vector<Fq>(static_cast<std::size_t>(h)));
    for (long k = 0; k < h; ++k) {
        for (long i = 0; i <= L.n; ++i) {
            std::uint32_t code = 0;
            std::uint32_t ps = 1;
            for (unsigned s = 0; s < L.e; ++s, ps *= L.p) {
                code += digits[static_cast<std::size_t>((k * (L.n + 1) + i)) * L.e + s] * ps;
            }
            c[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = Fq{code};
        }
    }
    std::vector<TPoly> coeffs;
    for (auto& v : c) {
        coeffs.emplace_back(L.field, std::move(v));
    }
    return XPoly(L.field, std::move(coeffs));
}

std::vector<std::uint8_t> digits_of(std::uint64_t N, std::uint32_t p, std::size_t count) {
    std::vector<std::uint8_t> d(count, 0);
    for (std::size_t i = 0; i < count && N != 0; ++i, N /= p) {
        d[i] = static_cast<std::uint8_t>(N % p);
    }
    return d;
}

struct Best {
    bool found = false;
    BigInt valuation;
    XPoly witness;
    std::optional<Series> root;
};

bool better(const BigInt& v, const XPoly& w, const Best& b) {
    if (!b.found || v > b.valuation) {
        return true;
    }
    return v == b.valuation && witness_less(w, b.witness);
}

struct ChunkResult {
    Best best;
    std::uint64_t excluded = 0;
    std::vector<std::string> examples;
};

class Scanner {
public:
    Scanner(const Series& xi, ScanKind kind, long n, long h_max, const ScanOptions& options)
        : xi_(xi), kind_(kind), n_(n), h_max_(h_max), options_(options),
          kernels_(options.kernels != nullptr ? *options.kernels : simd::active_kernels()) {
        if (n < 1 || h_max < 1) {
            raise(Errc::InvalidArgument, "scan needs n >= 1 and h_max >= 1");
        }
        if (options.window < 1) {
            raise(Errc::InvalidArgument, "scan window must be positive");
        }
        const Field& F = *xi.field();
        if (F.p() > 127) {
            raise(Errc::InvalidArgument, "dense scans need p <= 127");
        }
        const BigInt total = ipow(BigInt(F.q()), static_cast<std::uint64_t>((n + 1) * h_max));
        if (total > options.enumeration_budget) {
            raise(Errc::BudgetExceeded, "q^((n+1) h_max) = " + total.str() + " exceeds the enumeration budget " +
                                            std::to_string(options.enumeration_budget));
        }
        generic_ = kind == ScanKind::wstar && (n > 1 || options.generic_roots);
        layout_ = make_layout(xi, n, h_max, options.window);
    }

    RecordTable run() {
        RecordTable table;
        table.kind = kind_;
        table.n = n_;
        table.h_max = h_max_;
        table.window = options_.window;
        const std::uint64_t D = layout_.digits_per_layer();
        Best running;
        for (long h = 1; h <= h_max_; ++h) {
            const std::uint64_t start = h == 1 ? 1 : upow(layout_.p, D * static_cast<std::uint64_t>(h - 1));
            const std::uint64_t end = upow(layout_.p, D * static_cast<std::uint64_t>(h));
            const std::vector<ChunkResult> parts = run_shell(h, start, end);
            for (const auto& part : parts) {
                if (part.best.found && better(part.best.valuation, part.best.witness, running)) {
                    running = part.best;
                }
                table.excluded += part.excluded;
                for (const auto& ex : part.examples) {
                    if (table.excluded_examples.size() < kExampleCap) {
                        table.excluded_examples.push_back(ex);
                    }
                }
            }
            if (!running.found) {
                continue;
            }
            RecordRow row;
            row.h = h;
            row.witness = running.witness;
            row.root = running.root;
            row.value_valuation = running.valuation;
            if (h > 1) {
                Rational ratio(running.valuation, BigInt(h - 1));
                if (kind_ == ScanKind::wstar) {
                    ratio -= 1;
                }
                row.exponent_ratio = ratio;
            }
            table.rows.push_back(std::move(row));
        }
        const long threshold = h_max_ / 2;  // ceil((h_max - 1) / 2)
        for (const auto& row : table.rows) {
            if (row.h - 1 >= threshold && row.exponent_ratio &&
                (!table.best_exponent || *row.exponent_ratio > *table.best_exponent)) {
                table.best_exponent = row.exponent_ratio;
            }
        }
        return table;
    }

private:
    static std::uint64_t upow(std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e-- != 0) {
            r *= b;
        }
        return r;
    }

    std::vector<ChunkResult> run_shell(long h, std::uint64_t start, std::uint64_t end) const {
        const std::uint64_t span = end - start;
        const unsigned threads = std::max(1U, options_.threads);
        const std::uint64_t chunks = std::clamp<std::uint64_t>(span / 2048, 1, 16ULL * threads);
        std::vector<ChunkResult> out(chunks);
        std::atomic<std::uint64_t> next{0};
        auto worker = [&] {
            for (std::uint64_t c = next++; c < chunks; c = next++) {
                const std::uint64_t a = start + span * c / chunks;
                const std::uint64_t b = start + span * (c + 1) / chunks;
                out[c] = run_chunk(h, a, b);
            }
        };
        if (threads == 1 || chunks == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < std::min<std::uint64_t>(threads, chunks); ++t) {
                pool.emplace_back(worker);
            }
            for (auto& t : pool) {
                t.join();
            }
        }
        return out;
    }

    ChunkResult run_chunk(long h, std::uint64_t a, std::uint64_t b) const {
        const std::size_t nd = layout_.digits_per_layer() * static_cast<std::size_t>(h);
        const auto p = static_cast<std::uint8_t>(layout_.p);
        std::vector<std::uint8_t> digits = digits_of(a, layout_.p, nd);
        std::vector<std::uint8_t> v(layout_.bytes, 0);
        if (!generic_) {
            for (std::size_t d = 0; d < nd; ++d) {
                for (std::uint8_t t = 0; t < digits[d]; ++t) {
                    kernels_.add_mod_p(v.data(), layout_.gens[d].data(), layout_.bytes, p);
                }
            }
        }
        ChunkResult res;
        for (std::uint64_t N = a; N < b; ++N) {
            if (generic_) {
                visit_generic(h, digits, res);
            } else {
                visit_dense(h, digits, v, res);
            }
            if (N + 1 == b) {
                break;
            }
            std::size_t d = 0;
            while (digits[d] == p - 1) {
                digits[d] = 0;
                if (!generic_) {
                    kernels_.add_mod_p(v.data(), layout_.gens[d].data(), layout_.bytes, p);
                }
                ++d;
            }
            ++digits[d];
            if (!generic_) {
                kernels_.add_mod_p(v.data(), layout_.gens[d].data(), layout_.bytes, p);
            }
        }
        return res;
    }

    void exclude(ChunkResult& res, const XPoly& P) const {
        ++res.excluded;
        if (res.examples.size() < kExampleCap) {
            res.examples.push_back(P.to_string());
        }
    }

    // Valuation of P(xi) from the dense vector, refined sparsely past the window.
    std::optional<BigInt> value_valuation(const std::vector<std::uint8_t>& v, const XPoly& P, ChunkResult& res) const {
        const std::size_t idx = kernels_.first_nonzero(v.data(), layout_.used);
        if (idx < layout_.used) {
            return BigInt(static_cast<long>(idx / layout_.e) + layout_.lo);
        }
        try {
            const EvalResult r = xpoly_eval_refined(P, xi_window(), RefinePolicy{options_.refine_cap});
            if (r.abs.is_exact()) {
                return r.abs.exponent;
            }
        } catch (const Error& e) {
            if (e.code() != Errc::PrecisionExhausted) {
                throw;
            }
        }
        exclude(res, P);
        return std::nullopt;
    }

    void visit_dense(long h, const std::vector<std::uint8_t>& digits, const std::vector<std::uint8_t>& v,
                     ChunkResult& res) const {
        if (kind_ == ScanKind::wn) {
            const std::size_t idx = kernels_.first_nonzero(v.data(), layout_.used);
            if (idx < layout_.used) {
                const BigInt val = static_cast<long>(idx / layout_.e) + layout_.lo;
                // cheap reject before decoding
                if (res.best.found && val < res.best.valuation) {
                    return;
                }
                const XPoly P = decode(layout_, digits, h);
                if (better(val, P, res.best)) {
                    res.best = Best{true, val, P, std::nullopt};
                }
                return;
            }
            const XPoly P = decode(layout_, digits, h);
            if (auto val = value_valuation(v, P, res); val && better(*val, P, res.best)) {
                res.best = Best{true, *val, P, std::nullopt};
            }
            return;
        }
        // wstar, degree 1: |xi - (-c0/c1)| = |P(xi)| / |c1|
        const XPoly P = decode(layout_, digits, h);
        if (P.degree() != 1 || !P.lead().is_monic() || !P.is_primitive()) {
            return;
        }
        if (auto val = value_valuation(v, P, res)) {
            const BigInt dist = *val + P.lead().degree();
            if (better(dist, P, res.best)) {
                const TPoly num = -P.coeff(0);
                res.best = Best{true, dist, P,
                                series_from_rational(num, P.lead(), BigInt(options_.window))};
            }
        }
    }

    void visit_generic(long h, const std::vector<std::uint8_t>& digits, ChunkResult& res) const {
        const XPoly P = decode(layout_, digits, h);
        if (P.degree() < 1 || !P.lead().is_monic() || !P.is_primitive()) {
            return;
        }
        std::vector<RootDescriptor> roots;
        try {
            roots = roots_in_field(P, options_.window);
        } catch (const Error& e) {
            if (e.code() != Errc::HorizonTooSmall && e.code() != Errc::RecursionCapExceeded) {
                throw;
            }
            exclude(res, P);
            return;
        }
        for (const auto& r : roots) {
            const AbsValue d = series_dist(xi_window(), r.root);
            if (!d.is_exact()) {
                exclude(res, P);
                continue;
            }
            if (better(d.exponent, P, res.best)) {
                res.best = Best{true, d.exponent, P, r.root};
            }
        }
    }

    const Series& xi_window() const {
        std::call_once(xi_once_, [this] {
            xi_at_window_ = xi_.is_exact() || !xi_.generator() ? xi_ : xi_.advanced(BigInt(options_.window));
        });
        return xi_at_window_;
    }

    Series xi_;
    ScanKind kind_;
    long n_;
    long h_max_;
    ScanOptions options_;
    const simd::Kernels& kernels_;
    bool generic_ = false;
    Layout layout_;
    mutable std::once_flag xi_once_;
    mutable Series xi_at_window_;
};

std::vector<int> witness_key(const XPoly& a) {
    std::vector<int> key{static_cast<int>(a.degree())};
    for (long i = a.degree(); i >= 0; --i) {
        key.push_back(static_cast<int>(a.coeffs()[static_cast<std::size_t>(i)].degree()));
    }
    for (long i = a.degree(); i >= 0; --i) {
        const auto& c = a.coeffs()[static_cast<std::size_t>(i)].coeffs();
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            key.push_back(static_cast<int>(it->code));
        }
    }
    return key;
}

} // namespace

bool witness_less(const XPoly& a, const XPoly& b) { return witness_key(a) < witness_key(b); }

std::string to_string(ScanKind kind) { return kind == ScanKind::wn ? "wn" : "wstar"; }

RecordTable wn_scan(const Series& xi, long n, long h_max, const ScanOptions& options) {
    return Scanner(xi, ScanKind::wn, n, h_max, options).run();
}

RecordTable wstar_scan(const Series& xi, long n, long h_max, const ScanOptions& options) {
    return Scanner(xi, ScanKind::wstar, n, h_max, options).run();
}

} // namespace tnum
