#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "sgc/conway_table.hpp"
#include "sgc/errors.hpp"

namespace sgc {

namespace detail {

inline bool is_prime_u32(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> fs;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// --- dense GF(p)[x] helpers used only during context construction ---

using zpoly = std::vector<uint32_t>;  // ascending coefficients mod p

inline void zp_trim(zpoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline zpoly zp_mul(const zpoly& a, const zpoly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    zpoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + uint64_t(a[i]) * b[j]) % p;
    zp_trim(r);
    return r;
}

inline zpoly zp_mod(zpoly a, const zpoly& m, uint32_t p) {
    const size_t dm = m.size() - 1;
    // m monic assumed
    while (a.size() > dm) {
        uint32_t c = a.back();
        if (c) {
            size_t shift = a.size() - 1 - dm;
            for (size_t i = 0; i < m.size(); ++i) {
                uint64_t t = uint64_t(c) * m[i] % p;
                a[i + shift] = uint32_t((a[i + shift] + p - t) % p);
            }
        }
        a.pop_back();
        zp_trim(a);
        if (a.size() <= dm) break;
    }
    zp_trim(a);
    return a;
}

inline zpoly zp_powmod_x(uint64_t e, const zpoly& m, uint32_t p) {
    // x^e mod m by square and multiply
    zpoly r{1};
    zpoly b = zp_mod(zpoly{0, 1}, m, p);
    while (e) {
        if (e & 1) r = zp_mod(zp_mul(r, b, p), m, p);
        b = zp_mod(zp_mul(b, b, p), m, p);
        e >>= 1;
    }
    return r;
}

inline zpoly zp_gcd(zpoly a, zpoly b, uint32_t p) {
    zp_trim(a);
    zp_trim(b);
    while (!b.empty()) {
        // make b monic for zp_mod
        uint32_t lc = b.back();
        if (lc != 1) {
            // lc^(p-2) mod p
            uint64_t inv = 1, base = lc, e = p - 2;
            while (e) {
                if (e & 1) inv = inv * base % p;
                base = base * base % p;
                e >>= 1;
            }
            for (auto& c : b) c = uint32_t(uint64_t(c) * inv % p);
        }
        zpoly r = zp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Rabin irreducibility test for a monic polynomial over GF(p).
inline bool zp_irreducible(const zpoly& f, uint32_t p) {
    const size_t m = f.size() - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    uint64_t pm = 1;
    for (size_t i = 0; i < m; ++i) pm *= p;
    // x^(p^m) == x mod f
    zpoly t = zp_powmod_x(pm, f, p);
    zpoly x_red = zp_mod(zpoly{0, 1}, f, p);
    if (t != x_red) return false;
    for (uint64_t ell : prime_factors(m)) {
        uint64_t e = 1;
        for (size_t i = 0; i < m / ell; ++i) e *= p;
        zpoly u = zp_powmod_x(e, f, p);
        // gcd(u - x, f) must be constant
        zpoly diff = u;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = uint32_t((diff[1] + p - 1) % p);
        zp_trim(diff);
        zpoly g = zp_gcd(f, diff, p);
        if (g.size() > 1) return false;
    }
    return true;
}

}  // namespace detail

/// Arithmetic context for GF(p^m). Immutable once built; elements are packed
/// base-p residue vectors. Multiplication runs on exp/log tables for the
/// distinguished primitive element w.
class FieldCtx {
  public:
    uint32_t p;
    uint32_t m;
    uint32_t q;                     // p^m
    std::vector<uint32_t> modulus;  // ascending, degree m, monic
    bool conway;                    // modulus came from the registry
    uint32_t w;                     // packed primitive element

    uint32_t add(uint32_t a, uint32_t b) const {
        if (p == 2) return a ^ b;
        uint32_t r = 0;
        for (uint32_t i = 0; i < m; ++i) {
            uint32_t da = (a / pw_[i]) % p, db = (b / pw_[i]) % p;
            uint32_t s = da + db;
            if (s >= p) s -= p;
            r += s * pw_[i];
        }
        return r;
    }

    uint32_t neg(uint32_t a) const { return neg_[a]; }

    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg_[b]); }

    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    uint32_t inv(uint32_t a) const {
        if (a == 0) fail(errc::division_by_zero, "inverse of zero");
        return exp_[q - 1 - log_[a]];
    }

    /// a^k for a signed exponent (negative allowed for nonzero a).
    uint32_t pow(uint32_t a, int64_t k) const {
        if (a == 0) {
            if (k < 0) fail(errc::division_by_zero, "negative power of zero");
            return k == 0 ? 1u : 0u;
        }
        int64_t e = (int64_t(log_[a]) * (k % int64_t(q - 1))) % int64_t(q - 1);
        if (e < 0) e += q - 1;
        return exp_[e];
    }

    /// Frobenius power: a -> a^(p^t).
    uint32_t frob(uint32_t a, uint32_t t) const {
        if (a == 0) return 0;
        uint64_t pt = 1;
        for (uint32_t i = 0; i < t % m; ++i) pt *= p;
        return exp_[(uint64_t(log_[a]) * pt) % (q - 1)];
    }

    uint32_t dlog(uint32_t a) const {
        if (a == 0) fail(errc::division_by_zero, "dlog of zero");
        return log_[a];
    }

    uint32_t exp_of(uint64_t k) const { return exp_[k % (q - 1)]; }

    // construction -----------------------------------------------------

    static const FieldCtx* get(uint32_t p, uint32_t m);
    static const FieldCtx* get_custom(uint32_t p, uint32_t m, const std::vector<uint32_t>& modulus);
    static void load_registry_file(const std::string& path);

  private:
    std::vector<uint32_t> pw_;    // p^i, i = 0..m
    std::vector<uint32_t> exp_;   // w^i, i = 0..2(q-1)-1
    std::vector<uint32_t> log_;   // inverse of exp_, log_[0] unused
    std::vector<uint32_t> neg_;

    friend struct FieldCtxBuilder;
};

namespace detail {
// packed <-> digit vector
inline std::vector<uint32_t> unpack(uint32_t v, uint32_t p, uint32_t m) {
    std::vector<uint32_t> d(m);
    for (uint32_t i = 0; i < m; ++i) {
        d[i] = v % p;
        v /= p;
    }
    return d;
}
inline uint32_t pack(const std::vector<uint32_t>& d, uint32_t p) {
    uint32_t v = 0;
    for (size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}
}  // namespace detail

struct FieldCtxBuilder {
    static std::unique_ptr<FieldCtx> build(uint32_t p, uint32_t m, std::vector<uint32_t> modulus,
                                           bool conway) {
        if (!detail::is_prime_u32(p)) fail(errc::not_prime, std::to_string(p) + " is not prime");
        if (m < 1) fail(errc::bad_parameters, "extension degree must be >= 1");
        if (modulus.size() != m + 1 || modulus.back() != 1)
            fail(errc::bad_parameters, "modulus must be monic of degree m");
        for (auto& c : modulus) c %= p;
        if (!detail::zp_irreducible(modulus, p))
            fail(errc::reducible, "modulus is reducible over Z_" + std::to_string(p));

        auto ctx = std::make_unique<FieldCtx>();
        ctx->p = p;
        ctx->m = m;
        uint64_t q = 1;
        for (uint32_t i = 0; i < m; ++i) q *= p;
        if (q > (1u << 16)) fail(errc::bad_parameters, "field order exceeds 2^16");
        ctx->q = uint32_t(q);
        ctx->modulus = modulus;
        ctx->conway = conway;
        ctx->pw_.resize(m + 1);
        ctx->pw_[0] = 1;
        for (uint32_t i = 1; i <= m; ++i) ctx->pw_[i] = ctx->pw_[i - 1] * p;

        ctx->neg_.resize(q);
        for (uint32_t v = 0; v < q; ++v) {
            auto d = detail::unpack(v, p, m);
            for (auto& x : d) x = (p - x) % p;
            ctx->neg_[v] = detail::pack(d, p);
        }

        // slow product used to bootstrap the exp table
        auto slow_mul = [&](uint32_t a, uint32_t b) -> uint32_t {
            auto da = detail::unpack(a, p, m), db = detail::unpack(b, p, m);
            std::vector<uint32_t> prod(2 * m, 0);
            for (uint32_t i = 0; i < m; ++i)
                if (da[i])
                    for (uint32_t j = 0; j < m; ++j)
                        prod[i + j] = uint32_t((prod[i + j] + uint64_t(da[i]) * db[j]) % p);
            for (size_t k = prod.size(); k-- > m;) {
                uint32_t c = prod[k];
                if (!c) continue;
                prod[k] = 0;
                for (uint32_t i = 0; i < m; ++i)
                    prod[k - m + i] =
                        uint32_t((prod[k - m + i] + uint64_t(c) * ((p - modulus[i]) % p)) % p);
            }
            prod.resize(m);
            return detail::pack(prod, p);
        };

        auto order_is_q1 = [&](uint32_t g) -> bool {
            if (g == 0) return false;
            for (uint64_t ell : detail::prime_factors(q - 1)) {
                uint64_t e = (q - 1) / ell;
                uint32_t acc = 1, base = g;
                while (e) {
                    if (e & 1) acc = slow_mul(acc, base);
                    base = slow_mul(base, base);
                    e >>= 1;
                }
                if (acc == 1) return false;
            }
            return true;
        };

        uint32_t w = 0;
        if (m == 1) {
            for (uint32_t g = 2; g < q; ++g)
                if (order_is_q1(g)) {
                    w = g;
                    break;
                }
        } else {
            // residue class of x; primitive by construction for Conway moduli
            if (order_is_q1(p)) {
                w = p;
            } else {
                for (uint32_t g = 2; g < q; ++g)
                    if (order_is_q1(g)) {
                        w = g;
                        break;
                    }
            }
        }
        if (w == 0) fail(errc::bad_parameters, "no primitive element found");
        ctx->w = w;

        ctx->exp_.resize(2 * (q - 1));
        ctx->log_.assign(q, 0);
        uint32_t acc = 1;
        for (uint32_t i = 0; i < q - 1; ++i) {
            ctx->exp_[i] = acc;
            ctx->log_[acc] = i;
            acc = slow_mul(acc, w);
        }
        if (acc != 1) fail(errc::bad_parameters, "primitive element order check failed");
        for (uint32_t i = 0; i < q - 1; ++i) ctx->exp_[q - 1 + i] = ctx->exp_[i];
        return ctx;
    }
};

namespace detail {

struct ctx_cache {
    std::mutex mu;
    std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<FieldCtx>> registry;
    std::map<std::vector<uint32_t>, std::unique_ptr<FieldCtx>> custom;  // key: p,m,coeffs
    std::map<std::pair<uint32_t, uint32_t>, std::vector<uint32_t>> extra_conway;
};

inline ctx_cache& cache() {
    static ctx_cache c;
    return c;
}

}  // namespace detail

inline const FieldCtx* FieldCtx::get(uint32_t p, uint32_t m) {
    auto& c = detail::cache();
    std::lock_guard<std::mutex> lk(c.mu);
    auto key = std::make_pair(p, m);
    auto it = c.registry.find(key);
    if (it != c.registry.end()) return it->second.get();
    const std::vector<uint32_t>* coeffs = nullptr;
    for (const auto& e : detail::conway_table())
        if (e.p == p && e.m == m) {
            coeffs = &e.coeffs;
            break;
        }
    if (!coeffs) {
        auto ex = c.extra_conway.find(key);
        if (ex != c.extra_conway.end()) coeffs = &ex->second;
    }
    if (!coeffs) {
        if (!detail::is_prime_u32(p)) fail(errc::not_prime, std::to_string(p) + " is not prime");
        fail(errc::unregistered_field,
             "GF(" + std::to_string(p) + "^" + std::to_string(m) + ") not in registry");
    }
    auto ctx = FieldCtxBuilder::build(p, m, *coeffs, true);
    auto* raw = ctx.get();
    c.registry.emplace(key, std::move(ctx));
    return raw;
}

inline const FieldCtx* FieldCtx::get_custom(uint32_t p, uint32_t m,
                                            const std::vector<uint32_t>& modulus) {
    auto& c = detail::cache();
    std::lock_guard<std::mutex> lk(c.mu);
    std::vector<uint32_t> key;
    key.push_back(p);
    key.push_back(m);
    for (auto x : modulus) key.push_back(x % p);
    auto it = c.custom.find(key);
    if (it != c.custom.end()) return it->second.get();
    auto ctx = FieldCtxBuilder::build(p, m, modulus, false);
    auto* raw = ctx.get();
    c.custom.emplace(std::move(key), std::move(ctx));
    return raw;
}

/// Load extra registry entries from a file of lines "p m c0,c1,...,1".
inline void FieldCtx::load_registry_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io_error, "cannot open " + path);
    auto& c = detail::cache();
    std::lock_guard<std::mutex> lk(c.mu);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        uint32_t p, m;
        std::string coeffs;
        if (!(ss >> p >> m >> coeffs)) fail(errc::io_error, "bad registry line: " + line);
        std::vector<uint32_t> cv;
        std::istringstream cs(coeffs);
        std::string tok;
        while (std::getline(cs, tok, ',')) cv.push_back(uint32_t(std::stoul(tok)));
        c.extra_conway[{p, m}] = cv;
    }
}

/// Element of a FieldCtx; a value type (context pointer + packed residue).
struct FieldElement {
    const FieldCtx* k = nullptr;
    uint32_t v = 0;

    FieldElement() = default;
    FieldElement(const FieldCtx* ctx, uint32_t val) : k(ctx), v(val) {}

    bool is_zero() const { return v == 0; }
    bool is_one() const { return v == 1; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.k == b.k && a.v == b.v;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
};

namespace detail {
inline void same_ctx(const FieldElement& a, const FieldElement& b) {
    if (a.k != b.k) fail(errc::ctx_mismatch, "elements from different fields");
}
}  // namespace detail

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    detail::same_ctx(a, b);
    return {a.k, a.k->add(a.v, b.v)};
}
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    detail::same_ctx(a, b);
    return {a.k, a.k->sub(a.v, b.v)};
}
inline FieldElement operator-(const FieldElement& a) { return {a.k, a.k->neg(a.v)}; }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    detail::same_ctx(a, b);
    return {a.k, a.k->mul(a.v, b.v)};
}
inline FieldElement inv(const FieldElement& a) { return {a.k, a.k->inv(a.v)}; }
inline FieldElement pow(const FieldElement& a, int64_t e) { return {a.k, a.k->pow(a.v, e)}; }

inline FieldElement fe_zero(const FieldCtx* k) { return {k, 0}; }
inline FieldElement fe_one(const FieldCtx* k) { return {k, 1}; }
inline FieldElement fe_w(const FieldCtx* k) { return {k, k->w}; }

/// The Frobenius power map a -> a^(p^t); t = 0 is the identity.
struct FrobeniusMap {
    uint32_t t = 0;

    FrobeniusMap() = default;
    explicit FrobeniusMap(uint32_t t_) : t(t_) {}

    FrobeniusMap composed(const FrobeniusMap& o, uint32_t m) const {
        return FrobeniusMap((t + o.t) % m);
    }
    uint32_t order(uint32_t m) const { return m / std::__gcd(m, t == 0 ? m : t); }

    friend bool operator==(const FrobeniusMap&, const FrobeniusMap&) = default;
};

inline FieldElement frobenius_apply(const FrobeniusMap& f, const FieldElement& a) {
    if (f.t >= a.k->m) fail(errc::ctx_mismatch, "Frobenius exponent out of range for field");
    return {a.k, a.k->frob(a.v, f.t)};
}

/// Inner sigma-derivation delta(a) = gamma * (sigma(a) - a).
struct InnerDerivation {
    FrobeniusMap sigma;
    FieldElement gamma;

    InnerDerivation() = default;
    InnerDerivation(FrobeniusMap s, FieldElement g) : sigma(s), gamma(g) {}
};

inline FieldElement derivation_apply(const InnerDerivation& d, const FieldElement& a) {
    detail::same_ctx(d.gamma, a);
    return d.gamma * (frobenius_apply(d.sigma, a) - a);
}

/// Norm-compatible embedding GF(p^m) -> GF(p^(m*e)); w_q maps to
/// w_{q^e}^((q^e-1)/(q-1)). Requires both fields to use registry moduli.
inline FieldElement ff_embed(const FieldElement& a, const FieldCtx* ext) {
    const FieldCtx* base = a.k;
    if (ext->p != base->p || ext->m % base->m != 0)
        fail(errc::ctx_mismatch, "target is not an extension of the source field");
    if (!base->conway || !ext->conway)
        fail(errc::unregistered_field, "embedding requires registry moduli on both sides");
    if (ext == base) return a;
    if (a.v == 0) return fe_zero(ext);
    uint64_t s = uint64_t(ext->q - 1) / (base->q - 1);
    return {ext, ext->exp_of(uint64_t(base->dlog(a.v)) * s)};
}

inline FieldElement ff_embed(const FieldElement& a, uint32_t e) {
    return ff_embed(a, FieldCtx::get(a.k->p, a.k->m * e));
}

// --- element grammar ------------------------------------------------------

/// Canonical text form: "0" | "1" | "w" | "w^k" for m>1, decimal for m=1.
inline std::string ff_format(const FieldElement& a) {
    if (a.k->m == 1) return std::to_string(a.v);
    if (a.v == 0) return "0";
    uint32_t k = a.k->dlog(a.v);
    if (k == 0) return "1";
    if (k == 1) return "w";
    return "w^" + std::to_string(k);
}

inline FieldElement ff_parse(const std::string& text, const FieldCtx* k) {
    if (text.empty()) fail(errc::parse_error, "empty element at position 0");
    if (k->m == 1) {
        uint64_t val = 0;
        for (size_t i = 0; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                fail(errc::parse_error, "expected digit at position " + std::to_string(i) +
                                            " in \"" + text + "\"");
            val = val * 10 + (text[i] - '0');
            if (val > (uint64_t(k->p) << 16)) val %= k->p;
        }
        return {k, uint32_t(val % k->p)};
    }
    if (text == "0") return fe_zero(k);
    if (text == "1") return fe_one(k);
    if (text[0] != 'w')
        fail(errc::parse_error, "expected 'w', '0' or '1' at position 0 in \"" + text + "\"");
    if (text.size() == 1) return fe_w(k);
    if (text[1] != '^')
        fail(errc::parse_error, "expected '^' at position 1 in \"" + text + "\"");
    if (text.size() == 2) fail(errc::parse_error, "missing exponent at position 2 in \"" + text + "\"");
    uint64_t e = 0;
    for (size_t i = 2; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            fail(errc::parse_error,
                 "expected digit at position " + std::to_string(i) + " in \"" + text + "\"");
        e = e * 10 + (text[i] - '0');
        if (e > uint64_t(k->q) * 4) e %= (k->q - 1);
    }
    return {k, k->exp_of(e)};
}

/// ff_make: registry or custom-modulus construction per the CLI surface.
inline const FieldCtx* make_field(uint32_t p, uint32_t m,
                                  const std::vector<uint32_t>* modulus = nullptr) {
    if (!detail::is_prime_u32(p)) fail(errc::not_prime, std::to_string(p) + " is not prime");
    if (modulus) return FieldCtx::get_custom(p, m, *modulus);
    return FieldCtx::get(p, m);
}

/// Field lookup by order q = p^m (registry only).
inline const FieldCtx* make_field_q(uint32_t q) {
    for (uint32_t p = 2; p <= q; ++p) {
        if (!detail::is_prime_u32(p)) continue;
        uint32_t m = 0;
        uint64_t acc = 1;
        while (acc < q) {
            acc *= p;
            ++m;
        }
        if (acc == q) return FieldCtx::get(p, m);
    }
    fail(errc::bad_parameters, std::to_string(q) + " is not a prime power");
}

}  // namespace sgc
