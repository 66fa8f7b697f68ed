#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgc/field.hpp"

namespace sgc {

/// Ring descriptor for F_q[x; sigma, delta] with sigma = Frobenius^t and
/// delta the inner derivation gamma*(sigma - id). With t = 0 the derivation
/// is the zero map for every gamma.
struct OreRing {
    const FieldCtx* K = nullptr;
    uint32_t t = 0;
    FieldElement gamma;

    OreRing() = default;
    OreRing(const FieldCtx* field, uint32_t theta_pow, FieldElement g)
        : K(field), t(theta_pow % field->m), gamma(g) {
        if (g.k != field) fail(errc::ctx_mismatch, "gamma not in coefficient field");
    }
    OreRing(const FieldCtx* field, uint32_t theta_pow)
        : OreRing(field, theta_pow, fe_zero(field)) {}

    FieldElement sigma(const FieldElement& a) const { return {K, K->frob(a.v, t)}; }

    /// sigma^j with j possibly negative.
    FieldElement sigma_pow(const FieldElement& a, int64_t j) const {
        int64_t e = ((int64_t(t) * j) % K->m + K->m) % K->m;
        return {K, K->frob(a.v, uint32_t(e))};
    }

    FieldElement delta(const FieldElement& a) const {
        if (gamma.is_zero() || t == 0) return fe_zero(K);
        return gamma * (sigma(a) - a);
    }

    bool commutative() const { return t == 0; }
    bool has_derivation() const { return t != 0 && !gamma.is_zero(); }

    /// Same twist over GF(q^e): identical Frobenius exponent, gamma embedded.
    OreRing extended(const FieldCtx* ext) const {
        return OreRing(ext, t, ff_embed(gamma, ext));
    }

    friend bool operator==(const OreRing& a, const OreRing& b) {
        return a.K == b.K && a.t == b.t && a.gamma == b.gamma;
    }
};

/// Dense skew polynomial, ascending coefficients, trailing zeros trimmed.
struct OrePoly {
    OreRing ring;
    std::vector<FieldElement> c;

    OrePoly() = default;
    explicit OrePoly(const OreRing& r) : ring(r) {}
    OrePoly(const OreRing& r, std::vector<FieldElement> coeffs) : ring(r), c(std::move(coeffs)) {
        trim();
    }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return int(c.size()) - 1; }
    FieldElement lc() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back().is_one(); }
    FieldElement coeff(size_t i) const {
        return i < c.size() ? c[i] : fe_zero(ring.K);
    }
    size_t weight() const {
        size_t w = 0;
        for (const auto& x : c)
            if (!x.is_zero()) ++w;
        return w;
    }

    friend bool operator==(const OrePoly& a, const OrePoly& b) {
        return a.ring == b.ring && a.c == b.c;
    }
};

inline OrePoly ore_zero(const OreRing& r) { return OrePoly(r); }
inline OrePoly ore_const(const OreRing& r, FieldElement a) {
    OrePoly f(r);
    if (!a.is_zero()) f.c = {a};
    return f;
}
inline OrePoly ore_one(const OreRing& r) { return ore_const(r, fe_one(r.K)); }
inline OrePoly ore_monomial(const OreRing& r, FieldElement a, size_t k) {
    OrePoly f(r);
    if (!a.is_zero()) {
        f.c.assign(k + 1, fe_zero(r.K));
        f.c[k] = a;
    }
    return f;
}
inline OrePoly ore_x(const OreRing& r) { return ore_monomial(r, fe_one(r.K), 1); }

namespace detail {
inline void same_ring(const OrePoly& a, const OrePoly& b) {
    if (!(a.ring == b.ring)) fail(errc::ring_mismatch, "polynomials from different rings");
}
}  // namespace detail

inline OrePoly operator+(const OrePoly& a, const OrePoly& b) {
    detail::same_ring(a, b);
    OrePoly r(a.ring);
    r.c.resize(std::max(a.c.size(), b.c.size()), fe_zero(a.ring.K));
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(i) + b.coeff(i);
    r.trim();
    return r;
}

inline OrePoly operator-(const OrePoly& a, const OrePoly& b) {
    detail::same_ring(a, b);
    OrePoly r(a.ring);
    r.c.resize(std::max(a.c.size(), b.c.size()), fe_zero(a.ring.K));
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(i) - b.coeff(i);
    r.trim();
    return r;
}

inline OrePoly operator-(const OrePoly& a) {
    OrePoly r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

/// Left scalar multiple s*f (coefficientwise; coefficients commute).
inline OrePoly scalar_mul(const FieldElement& s, const OrePoly& f) {
    if (s.k != f.ring.K) fail(errc::ctx_mismatch, "scalar from wrong field");
    if (s.is_zero()) return ore_zero(f.ring);
    OrePoly r = f;
    for (auto& x : r.c) x = s * x;
    return r;
}

/// x*f under the twist x*a = sigma(a)x + delta(a).
inline OrePoly mul_x_left(const OrePoly& f) {
    if (f.is_zero()) return f;
    const auto& R = f.ring;
    OrePoly r(R);
    r.c.assign(f.c.size() + 1, fe_zero(R.K));
    for (size_t i = 0; i < f.c.size(); ++i) {
        r.c[i + 1] = r.c[i + 1] + R.sigma(f.c[i]);
        if (R.has_derivation()) r.c[i] = r.c[i] + R.delta(f.c[i]);
    }
    r.trim();
    return r;
}

inline OrePoly ore_mul(const OrePoly& f, const OrePoly& g) {
    detail::same_ring(f, g);
    if (f.is_zero() || g.is_zero()) return ore_zero(f.ring);
    OrePoly acc(f.ring);
    OrePoly xg = g;  // x^i * g, built incrementally
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (!f.c[i].is_zero()) acc = acc + scalar_mul(f.c[i], xg);
        if (i + 1 < f.c.size()) xg = mul_x_left(xg);
    }
    return acc;
}

inline OrePoly ore_pow(const OrePoly& f, uint64_t e) {
    OrePoly acc = ore_one(f.ring);
    for (uint64_t i = 0; i < e; ++i) acc = ore_mul(acc, f);
    return acc;
}

/// f = quot*g + rem with deg rem < deg g (right division).
inline std::pair<OrePoly, OrePoly> ore_right_divmod(const OrePoly& f, const OrePoly& g) {
    detail::same_ring(f, g);
    if (g.is_zero()) fail(errc::division_by_zero_poly, "right division by zero polynomial");
    const auto& R = f.ring;
    OrePoly rem = f;
    OrePoly quot(R);
    if (f.deg() >= g.deg()) quot.c.assign(f.deg() - g.deg() + 1, fe_zero(R.K));
    // x^d * g for d = 0..(deg f - deg g), built on demand
    std::vector<OrePoly> xg{g};
    while (rem.deg() >= g.deg()) {
        int d = rem.deg() - g.deg();
        while (int(xg.size()) <= d) xg.push_back(mul_x_left(xg.back()));
        FieldElement c = rem.lc() * inv(xg[d].lc());
        quot.c[d] = quot.c[d] + c;
        rem = rem - scalar_mul(c, xg[d]);
    }
    quot.trim();
    return {quot, rem};
}

/// f = g*quot + rem with deg rem < deg g (left division; needs sigma
/// invertible, which always holds here). Implemented independently of the
/// right division on purpose: the sigma^{-1} bookkeeping is cross-checked by
/// tests rather than derived from an anti-isomorphism.
inline std::pair<OrePoly, OrePoly> ore_left_divmod(const OrePoly& f, const OrePoly& g) {
    detail::same_ring(f, g);
    if (g.is_zero()) fail(errc::division_by_zero_poly, "left division by zero polynomial");
    const auto& R = f.ring;
    OrePoly rem = f;
    OrePoly quot(R);
    if (f.deg() >= g.deg()) quot.c.assign(f.deg() - g.deg() + 1, fe_zero(R.K));
    const FieldElement glc_inv = inv(g.lc());
    while (rem.deg() >= g.deg()) {
        int d = rem.deg() - g.deg();
        // leading coefficient of g*(c x^d) is g_lc * sigma^(deg g)(c)
        FieldElement c = R.sigma_pow(glc_inv * rem.lc(), -int64_t(g.deg()));
        quot.c[d] = quot.c[d] + c;
        rem = rem - ore_mul(g, ore_monomial(R, c, size_t(d)));
    }
    quot.trim();
    return {quot, rem};
}

inline OrePoly monicize(const OrePoly& f) {
    if (f.is_zero()) return f;
    return scalar_mul(inv(f.lc()), f);
}

inline OrePoly ore_right_rem(const OrePoly& f, const OrePoly& g) {
    return ore_right_divmod(f, g).second;
}

inline bool right_divides(const OrePoly& g, const OrePoly& f) {
    return ore_right_rem(f, g).is_zero();
}

/// Greatest common right divisor and least common left multiple via the
/// extended right Euclidean algorithm. Satisfies
/// deg lclm + deg rgcd = deg f + deg g for nonzero inputs.
struct GcdResult {
    OrePoly rgcd;
    OrePoly lclm;
};

inline GcdResult rgcd_lclm(const OrePoly& f, const OrePoly& g) {
    detail::same_ring(f, g);
    if (f.is_zero() && g.is_zero()) fail(errc::both_zero, "rgcd/lclm of (0,0)");
    const auto& R = f.ring;
    if (f.is_zero()) return {monicize(g), ore_zero(R)};
    if (g.is_zero()) return {monicize(f), ore_zero(R)};
    // r_i = u_i*f + v_i*g, with left-multiplying cofactors
    OrePoly r0 = f, r1 = g;
    OrePoly u0 = ore_one(R), u1 = ore_zero(R);
    while (!r1.is_zero()) {
        auto [q, r2] = ore_right_divmod(r0, r1);
        OrePoly u2 = u0 - ore_mul(q, u1);
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    // r0 = rgcd; u1*f = lclm (up to a left unit)
    return {monicize(r0), monicize(ore_mul(u1, f))};
}

inline OrePoly rgcd(const OrePoly& f, const OrePoly& g) { return rgcd_lclm(f, g).rgcd; }
inline OrePoly lclm(const OrePoly& f, const OrePoly& g) { return rgcd_lclm(f, g).lclm; }

// --- twisted norms and skew evaluation -------------------------------------

/// N_0 = 1, N_{i+1}(a) = sigma(N_i(a))*a + delta(N_i(a)).
inline FieldElement twisted_norm(const OreRing& R, uint64_t i, const FieldElement& alpha) {
    if (alpha.k != R.K) fail(errc::ctx_mismatch, "norm argument outside ring field");
    FieldElement n = fe_one(R.K);
    for (uint64_t j = 0; j < i; ++j) n = R.sigma(n) * alpha + R.delta(n);
    return n;
}

/// Classical norm a*sigma(a)*...*sigma^{i-1}(a) (the delta = 0 case).
inline FieldElement classical_norm(const OreRing& R, uint64_t i, const FieldElement& alpha) {
    if (alpha.k != R.K) fail(errc::ctx_mismatch, "norm argument outside ring field");
    FieldElement n = fe_one(R.K);
    for (uint64_t j = 0; j < i; ++j) n = R.sigma(n) * alpha;
    return n;
}

/// Skew evaluation ev(f, a) = sum f_i N_i(a); equals the right remainder of
/// f by (x - a). Accepts alpha in an extension of the coefficient field,
/// in which case sigma keeps its Frobenius exponent and gamma is embedded.
inline FieldElement skew_eval(const OrePoly& f, const FieldElement& alpha) {
    const OreRing R = (alpha.k == f.ring.K) ? f.ring : f.ring.extended(alpha.k);
    FieldElement acc = fe_zero(alpha.k);
    FieldElement n = fe_one(alpha.k);
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (!f.c[i].is_zero()) {
            FieldElement fi = (alpha.k == f.ring.K) ? f.c[i] : ff_embed(f.c[i], alpha.k);
            acc = acc + fi * n;
        }
        n = R.sigma(n) * alpha + R.delta(n);
    }
    return acc;
}

/// Embed all coefficients into an extension ring.
inline OrePoly ore_embed(const OrePoly& f, const OreRing& ext) {
    OrePoly r(ext);
    r.c.reserve(f.c.size());
    for (const auto& a : f.c) r.c.push_back(ff_embed(a, ext.K));
    r.trim();
    return r;
}

// --- quotient module R/Rf ---------------------------------------------------

/// Unique right-remainder representative of a class in R/Rf.
struct QuotientElem {
    OrePoly f;    // monic modulus
    OrePoly rep;  // degree < deg f

    QuotientElem(const OrePoly& modulus, const OrePoly& value)
        : f(modulus), rep(ore_right_rem(value, modulus)) {
        if (!modulus.is_monic()) fail(errc::not_monic, "quotient modulus must be monic");
    }
};

/// The pair (alpha, beta) of Lemma-type quotient inverses for a monic
/// f = x^n + a_{n-1}x^{n-1} + ... + a_0 with a_0 != 0:
///   alpha_k = -a_0^{-1} a_{k+1}   (a_n = 1),   beta_k = sigma^{-1}(alpha_k).
/// In R/Rf this gives reduce(alpha*x) = 1 and reduce(x*beta) = 1 + delta'(beta)
/// with delta applied coefficientwise.
struct QuotientInverses {
    OrePoly alpha;
    OrePoly beta;
};

inline QuotientInverses lemma41_inverses(const OrePoly& f) {
    if (!f.is_monic()) fail(errc::not_monic, "modulus must be monic");
    const int n = f.deg();
    if (n < 1) fail(errc::degree_out_of_range, "modulus must have degree >= 1");
    if (f.c[0].is_zero()) fail(errc::zero_constant_term, "modulus constant term is zero");
    const auto& R = f.ring;
    FieldElement s = -inv(f.c[0]);
    OrePoly alpha(R), beta(R);
    alpha.c.assign(n, fe_zero(R.K));
    beta.c.assign(n, fe_zero(R.K));
    for (int k = 0; k < n; ++k) {
        FieldElement ak1 = (k + 1 == n) ? fe_one(R.K) : f.c[k + 1];
        alpha.c[k] = s * ak1;
        beta.c[k] = R.sigma_pow(alpha.c[k], -1);
    }
    alpha.trim();
    beta.trim();
    return {alpha, beta};
}

/// Apply delta to each coefficient, keeping powers in place.
inline OrePoly delta_coeffwise(const OrePoly& f) {
    OrePoly r(f.ring);
    r.c.reserve(f.c.size());
    for (const auto& a : f.c) r.c.push_back(f.ring.delta(a));
    r.trim();
    return r;
}

/// Weight-normalization of a nonzero class: with b x^{k0} the lowest nonzero
/// term of c, returns r = alpha^{k0} * b^{-1} and the reduced product r*c.
struct NormalizeResult {
    OrePoly r;
    QuotientElem rc;
};

inline NormalizeResult lemma42_normalize(const OrePoly& f, const QuotientElem& c) {
    if (c.rep.is_zero()) fail(errc::zero_input, "cannot normalize the zero class");
    if (f.c.empty() || f.c[0].is_zero())
        fail(errc::zero_constant_term, "modulus constant term is zero");
    size_t k0 = 0;
    while (c.rep.c[k0].is_zero()) ++k0;
    const FieldElement b = c.rep.c[k0];
    OrePoly r = ore_mul(ore_pow(lemma41_inverses(f).alpha, k0), ore_const(f.ring, inv(b)));
    return {r, QuotientElem(f, ore_mul(r, c.rep))};
}

// --- text form --------------------------------------------------------------

/// Descending canonical form, e.g. "x^2 + w^3*x + w^4".
inline std::string ore_format(const OrePoly& f, bool compact = false) {
    if (f.is_zero()) return "0";
    std::string out;
    const char* plus = compact ? "+" : " + ";
    for (int i = f.deg(); i >= 0; --i) {
        const FieldElement a = f.c[size_t(i)];
        if (a.is_zero()) continue;
        if (!out.empty()) out += plus;
        if (i == 0) {
            out += ff_format(a);
        } else {
            if (!a.is_one()) {
                out += ff_format(a);
                out += "*";
            }
            out += (i == 1) ? "x" : ("x^" + std::to_string(i));
        }
    }
    return out;
}

/// Term grammar: "c*x^k" | "x^k" | "c" | "x", joined by '+' (or '-', which
/// negates the following term). Whitespace is ignored between tokens.
inline OrePoly ore_parse(const std::string& text, const OreRing& R) {
    std::string s;
    s.reserve(text.size());
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) fail(errc::parse_error, "empty polynomial at position 0");
    OrePoly acc(R);
    size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = (s[0] == '-');
        i = 1;
    }
    while (i < s.size()) {
        size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        if (term.empty()) fail(errc::parse_error, "empty term at position " + std::to_string(i));
        // split off "*x^k" / "x^k"
        FieldElement coeff = fe_one(R.K);
        size_t k = 0;
        size_t xpos = term.find('x');
        // guard: 'x' inside an element token cannot occur (grammar has none)
        if (xpos == std::string::npos) {
            coeff = ff_parse(term, R.K);
        } else {
            std::string chead = term.substr(0, xpos);
            if (!chead.empty()) {
                if (chead.back() != '*')
                    fail(errc::parse_error,
                         "expected '*' before x at position " + std::to_string(i + xpos));
                chead.pop_back();
                if (chead.empty())
                    fail(errc::parse_error, "empty coefficient at position " + std::to_string(i));
                coeff = ff_parse(chead, R.K);
            }
            std::string tail = term.substr(xpos + 1);
            if (tail.empty()) {
                k = 1;
            } else {
                if (tail[0] != '^')
                    fail(errc::parse_error,
                         "expected '^' after x at position " + std::to_string(i + xpos + 1));
                tail.erase(0, 1);
                if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
                    fail(errc::parse_error,
                         "bad exponent at position " + std::to_string(i + xpos + 2));
                k = std::stoul(tail);
            }
        }
        if (neg) coeff = -coeff;
        acc = acc + ore_monomial(R, coeff, k);
        if (j < s.size()) {
            neg = (s[j] == '-');
            ++j;
        }
        i = j;
    }
    return acc;
}

/// Canonical comparison: by degree, then ascending-coefficient tuple under
/// packed-value order. Used for deterministic listings.
inline bool ore_less(const OrePoly& a, const OrePoly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].v != b.c[i].v) return a.c[i].v < b.c[i].v;
    }
    return false;
}

}  // namespace sgc
