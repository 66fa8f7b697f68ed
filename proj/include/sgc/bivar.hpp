#pragma once

#include <map>
#include <utility>
#include <vector>

#include "sgc/linear_code.hpp"
#include "sgc/ore.hpp"

namespace sgc {

/// Iterated ring F_q[x1; sigma1][x2; sigma2] of automorphism type: both
/// derivations are zero, x1 x2 = x2 x1, x_i a = sigma_i(a) x_i, and sigma2
/// fixes x1.
struct BiOreRing {
    const FieldCtx* K = nullptr;
    uint32_t t1 = 0, t2 = 0;

    BiOreRing() = default;
    BiOreRing(const FieldCtx* field, uint32_t theta1, uint32_t theta2)
        : K(field), t1(theta1 % field->m), t2(theta2 % field->m) {}

    FieldElement sigma1(const FieldElement& a) const { return {K, K->frob(a.v, t1)}; }
    FieldElement sigma2(const FieldElement& a) const { return {K, K->frob(a.v, t2)}; }
    FieldElement sigma1_pow(const FieldElement& a, uint64_t j) const {
        return {K, K->frob(a.v, uint32_t((uint64_t(t1) * j) % K->m))};
    }
    FieldElement sigma2_pow(const FieldElement& a, uint64_t j) const {
        return {K, K->frob(a.v, uint32_t((uint64_t(t2) * j) % K->m))};
    }

    OreRing ring1() const { return OreRing(K, t1); }
    OreRing ring2() const { return OreRing(K, t2); }

    friend bool operator==(const BiOreRing&, const BiOreRing&) = default;
};

using Exps = std::pair<uint32_t, uint32_t>;  // (a1, a2); std::pair order is lex

/// Sparse bivariate skew polynomial; the term map is ordered, so lexdeg is
/// the last key.
struct BiOrePoly {
    BiOreRing ring;
    std::map<Exps, FieldElement> terms;

    BiOrePoly() = default;
    explicit BiOrePoly(const BiOreRing& r) : ring(r) {}

    bool is_zero() const { return terms.empty(); }

    void add_term(Exps e, const FieldElement& c) {
        if (c.is_zero()) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    FieldElement coeff(Exps e) const {
        auto it = terms.find(e);
        return it == terms.end() ? fe_zero(ring.K) : it->second;
    }

    friend bool operator==(const BiOrePoly& a, const BiOrePoly& b) {
        return a.ring == b.ring && a.terms == b.terms;
    }
};

inline BiOrePoly bi_zero(const BiOreRing& r) { return BiOrePoly(r); }
inline BiOrePoly bi_const(const BiOreRing& r, const FieldElement& c) {
    BiOrePoly f(r);
    f.add_term({0, 0}, c);
    return f;
}
inline BiOrePoly bi_one(const BiOreRing& r) { return bi_const(r, fe_one(r.K)); }
inline BiOrePoly bi_monomial(const BiOreRing& r, const FieldElement& c, uint32_t a1, uint32_t a2) {
    BiOrePoly f(r);
    f.add_term({a1, a2}, c);
    return f;
}

namespace detail {
inline void same_ring(const BiOrePoly& a, const BiOrePoly& b) {
    if (!(a.ring == b.ring)) fail(errc::ring_mismatch, "bivariate polynomials from different rings");
}
}  // namespace detail

inline BiOrePoly operator+(const BiOrePoly& a, const BiOrePoly& b) {
    detail::same_ring(a, b);
    BiOrePoly r = a;
    for (const auto& [e, c] : b.terms) r.add_term(e, c);
    return r;
}

inline BiOrePoly operator-(const BiOrePoly& a, const BiOrePoly& b) {
    detail::same_ring(a, b);
    BiOrePoly r = a;
    for (const auto& [e, c] : b.terms) r.add_term(e, -c);
    return r;
}

/// Product under x_i a = sigma_i(a) x_i and commuting variables:
/// (c x1^a1 x2^a2)(d x1^b1 x2^b2) = c sigma1^a1(sigma2^a2(d)) x1^(a1+b1) x2^(a2+b2).
inline BiOrePoly bi_mul(const BiOrePoly& f, const BiOrePoly& g) {
    detail::same_ring(f, g);
    BiOrePoly r(f.ring);
    for (const auto& [e1, c1] : f.terms)
        for (const auto& [e2, c2] : g.terms) {
            FieldElement moved = f.ring.sigma1_pow(f.ring.sigma2_pow(c2, e1.second), e1.first);
            r.add_term({e1.first + e2.first, e1.second + e2.second}, c1 * moved);
        }
    return r;
}

/// Greatest exponent pair of the support under the lex order with x1 dominant.
inline Exps lexdeg(const BiOrePoly& f) {
    if (f.is_zero()) fail(errc::zero_polynomial, "lexdeg of the zero polynomial");
    return f.terms.rbegin()->first;
}

inline FieldElement lex_leading_coeff(const BiOrePoly& f) {
    if (f.is_zero()) fail(errc::zero_polynomial, "leading coefficient of zero");
    return f.terms.rbegin()->second;
}

/// s x l array of field elements; the Gamma_f partner of a reduced residue.
struct Array2D {
    const FieldCtx* K = nullptr;
    size_t s = 0, l = 0;
    std::vector<FieldElement> e;  // row-major

    Array2D() = default;
    Array2D(const FieldCtx* k, size_t rows, size_t cols)
        : K(k), s(rows), l(cols), e(rows * cols, fe_zero(k)) {}

    FieldElement& at(size_t i, size_t j) { return e[i * l + j]; }
    const FieldElement& at(size_t i, size_t j) const { return e[i * l + j]; }

    std::vector<uint32_t> flat() const {
        std::vector<uint32_t> v(e.size());
        for (size_t i = 0; i < e.size(); ++i) v[i] = e[i].v;
        return v;
    }

    friend bool operator==(const Array2D&, const Array2D&) = default;
};

/// Check that cross-variable reductions are position-independent: sigma1 must
/// fix the coefficients of f2 and sigma2 those of f1.
inline void check_commuting_moduli(const BiOreRing& R, const OrePoly& f1, const OrePoly& f2) {
    for (const auto& c : f2.c)
        if (!(R.sigma1(c) == c))
            fail(errc::non_commuting_moduli, "sigma1 does not fix the coefficients of f2");
    for (const auto& c : f1.c)
        if (!(R.sigma2(c) == c))
            fail(errc::non_commuting_moduli, "sigma2 does not fix the coefficients of f1");
}

/// Reduce modulo the separable pair (f1(x1), f2(x2)): the unique
/// representative with x1-exponents < deg f1 and x2-exponents < deg f2.
inline BiOrePoly reduce_pair(const OrePoly& f1, const OrePoly& f2, const BiOrePoly& c) {
    const BiOreRing& R = c.ring;
    if (!f1.is_monic() || !f2.is_monic()) fail(errc::not_monic, "moduli must be monic");
    check_commuting_moduli(R, f1, f2);
    const uint32_t s = uint32_t(f1.deg()), l = uint32_t(f2.deg());
    BiOrePoly r = c;
    // x1 first: kill the top term with a1 >= s by subtracting
    // coeff * x1^(a1-s) x2^(a2) * f1; f1's coefficients are sigma2-fixed so
    // the conjugation by x2^(a2) is trivial.
    auto top_with = [&](auto pred) -> const std::pair<const Exps, FieldElement>* {
        for (auto it = r.terms.rbegin(); it != r.terms.rend(); ++it)
            if (pred(it->first)) return &*it;
        return nullptr;
    };
    while (const auto* t = top_with([&](Exps e) { return e.first >= s; })) {
        Exps e = t->first;
        FieldElement coef = t->second;
        BiOrePoly mono = bi_monomial(R, coef, e.first - s, e.second);
        BiOrePoly f1b(R);
        for (size_t i = 0; i <= size_t(f1.deg()); ++i)
            f1b.add_term({uint32_t(i), 0}, f1.c[i]);
        r = r - bi_mul(mono, f1b);
    }
    while (const auto* t = top_with([&](Exps e) { return e.second >= l; })) {
        Exps e = t->first;
        FieldElement coef = t->second;
        BiOrePoly mono = bi_monomial(R, coef, e.first, e.second - l);
        BiOrePoly f2b(R);
        for (size_t i = 0; i <= size_t(f2.deg()); ++i)
            f2b.add_term({0, uint32_t(i)}, f2.c[i]);
        r = r - bi_mul(mono, f2b);
    }
    return r;
}

/// Gamma_f: arrays to reduced residues (c_{a1,a2} x1^a1 x2^a2) and back.
inline BiOrePoly gamma_f(const BiOreRing& R, const Array2D& arr) {
    BiOrePoly f(R);
    for (size_t i = 0; i < arr.s; ++i)
        for (size_t j = 0; j < arr.l; ++j) f.add_term({uint32_t(i), uint32_t(j)}, arr.at(i, j));
    return f;
}

inline Array2D gamma_f_inv(const BiOrePoly& f, size_t s, size_t l) {
    Array2D arr(f.ring.K, s, l);
    for (const auto& [e, c] : f.terms) {
        if (e.first >= s || e.second >= l)
            fail(errc::dimension_mismatch, "residue not reduced to the s x l box");
        arr.at(e.first, e.second) = c;
    }
    return arr;
}

/// Companion matrix of a monic degree-n polynomial: unit superdiagonal,
/// last row the negated low coefficients.
inline Mat companion(const OrePoly& f) {
    if (!f.is_monic()) fail(errc::not_monic, "companion of a non-monic polynomial");
    const size_t n = size_t(f.deg());
    Mat M(f.ring.K, n, n);
    for (size_t i = 0; i + 1 < n; ++i) M.at(i, i + 1) = 1;
    for (size_t j = 0; j < n; ++j) M.at(n - 1, j) = f.ring.K->neg(f.c[j].v);
    return M;
}

/// Pseudo-linear transformation v -> sigma'(v) M + delta'(v) with
/// sigma = Frobenius^t and delta the inner derivation for gamma.
struct PseudoLinearMap {
    Mat M;
    uint32_t t = 0;
    FieldElement gamma;

    PseudoLinearMap() = default;
    PseudoLinearMap(Mat m, uint32_t theta_pow, FieldElement g)
        : M(std::move(m)), t(theta_pow), gamma(g) {}
    PseudoLinearMap(Mat m, uint32_t theta_pow)
        : M(std::move(m)), t(theta_pow), gamma(fe_zero(m.K)) {}

    size_t dim() const { return M.rows; }
    OreRing twist() const { return OreRing(M.K, t, gamma); }
};

inline std::vector<uint32_t> pseudo_apply(const PseudoLinearMap& T, const std::vector<uint32_t>& v) {
    const FieldCtx* K = T.M.K;
    const size_t n = T.dim();
    if (v.size() != n) fail(errc::dimension_mismatch, "vector length does not match map dimension");
    OreRing R = T.twist();
    std::vector<uint32_t> out(n, 0);
    for (size_t i = 0; i < n; ++i) {
        if (v[i] == 0) continue;
        uint32_t sv = K->frob(v[i], T.t);
        for (size_t j = 0; j < n; ++j)
            if (T.M.at(i, j)) out[j] = K->add(out[j], K->mul(sv, T.M.at(i, j)));
        out[i] = K->add(out[i], R.delta(FieldElement{K, v[i]}).v);
    }
    return out;
}

inline std::vector<uint32_t> pseudo_iterate(const PseudoLinearMap& T, std::vector<uint32_t> v,
                                            uint64_t times) {
    for (uint64_t i = 0; i < times; ++i) v = pseudo_apply(T, v);
    return v;
}

struct ClosureReport {
    bool row_closed = true;
    bool col_closed = true;
    // first failing (array index, row/col index) per direction, if any
    std::optional<std::pair<size_t, size_t>> row_witness;
    std::optional<std::pair<size_t, size_t>> col_witness;
    bool closed() const { return row_closed && col_closed; }
};

/// Apply T to every row of the array (row vectors of length l).
inline Array2D apply_to_rows(const PseudoLinearMap& T, const Array2D& arr) {
    if (T.dim() != arr.l) fail(errc::dimension_mismatch, "row transform dimension != l");
    Array2D out(arr.K, arr.s, arr.l);
    for (size_t i = 0; i < arr.s; ++i) {
        std::vector<uint32_t> row(arr.l);
        for (size_t j = 0; j < arr.l; ++j) row[j] = arr.at(i, j).v;
        auto img = pseudo_apply(T, row);
        for (size_t j = 0; j < arr.l; ++j) out.at(i, j) = {arr.K, img[j]};
    }
    return out;
}

/// Apply T to every column of the array (column vectors of length s).
inline Array2D apply_to_cols(const PseudoLinearMap& T, const Array2D& arr) {
    if (T.dim() != arr.s) fail(errc::dimension_mismatch, "column transform dimension != s");
    Array2D out(arr.K, arr.s, arr.l);
    for (size_t j = 0; j < arr.l; ++j) {
        std::vector<uint32_t> col(arr.s);
        for (size_t i = 0; i < arr.s; ++i) col[i] = arr.at(i, j).v;
        auto img = pseudo_apply(T, col);
        for (size_t i = 0; i < arr.s; ++i) out.at(i, j) = {arr.K, img[i]};
    }
    return out;
}

/// Span membership test of row- and column-transformed spanning arrays.
inline ClosureReport shift_closure_check(const std::vector<Array2D>& spanning,
                                         const PseudoLinearMap& T_row,
                                         const PseudoLinearMap& T_col) {
    ClosureReport rep;
    if (spanning.empty()) return rep;
    const FieldCtx* K = spanning[0].K;
    const size_t n = spanning[0].s * spanning[0].l;
    Mat span(K, spanning.size(), n);
    for (size_t i = 0; i < spanning.size(); ++i) {
        auto f = spanning[i].flat();
        std::copy(f.begin(), f.end(), span.a.begin() + i * n);
    }
    Mat basis = row_space_basis(span);
    for (size_t i = 0; i < spanning.size(); ++i) {
        if (rep.row_closed) {
            auto img = apply_to_rows(T_row, spanning[i]);
            if (!row_space_contains(basis, img.flat())) {
                rep.row_closed = false;
                rep.row_witness = {i, 0};
            }
        }
        if (rep.col_closed) {
            auto img = apply_to_cols(T_col, spanning[i]);
            if (!row_space_contains(basis, img.flat())) {
                rep.col_closed = false;
                rep.col_witness = {i, 0};
            }
        }
    }
    return rep;
}

// --- bivariate grammar ------------------------------------------------------

inline std::string bi_format(const BiOrePoly& f, bool compact = false) {
    if (f.is_zero()) return "0";
    std::string out;
    const char* plus = compact ? "+" : " + ";
    // print in descending lex order
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        const auto [a1, a2] = it->first;
        const FieldElement c = it->second;
        if (!out.empty()) out += plus;
        std::string vars;
        if (a1) vars += (a1 == 1) ? "x1" : ("x1^" + std::to_string(a1));
        if (a2) {
            if (!vars.empty()) vars += "*";
            vars += (a2 == 1) ? "x2" : ("x2^" + std::to_string(a2));
        }
        if (vars.empty()) {
            out += ff_format(c);
        } else if (c.is_one()) {
            out += vars;
        } else {
            out += ff_format(c) + "*" + vars;
        }
    }
    return out;
}

inline BiOrePoly bi_parse(const std::string& text, const BiOreRing& R) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) fail(errc::parse_error, "empty polynomial at position 0");
    BiOrePoly acc(R);
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
        FieldElement coeff = fe_one(R.K);
        uint32_t a1 = 0, a2 = 0;
        bool coeff_seen = false;
        size_t pos = 0;
        std::string chead;
        size_t xpos = term.find('x');
        if (xpos == std::string::npos) {
            coeff = ff_parse(term, R.K);
            coeff_seen = true;
            pos = term.size();
        } else if (xpos > 0) {
            chead = term.substr(0, xpos);
            if (chead.back() != '*')
                fail(errc::parse_error, "expected '*' before variable at position " +
                                            std::to_string(i + xpos));
            chead.pop_back();
            coeff = ff_parse(chead, R.K);
            coeff_seen = true;
            pos = xpos;
        }
        (void)coeff_seen;
        // parse variable factors x1[^k] / x2[^k] joined by '*'
        while (pos < term.size()) {
            if (term[pos] == '*') {
                ++pos;
                continue;
            }
            if (term[pos] != 'x' || pos + 1 >= term.size() ||
                (term[pos + 1] != '1' && term[pos + 1] != '2'))
                fail(errc::parse_error,
                     "expected x1 or x2 at position " + std::to_string(i + pos));
            bool first = term[pos + 1] == '1';
            pos += 2;
            uint32_t k = 1;
            if (pos < term.size() && term[pos] == '^') {
                ++pos;
                size_t start = pos;
                while (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos])))
                    ++pos;
                if (start == pos)
                    fail(errc::parse_error, "bad exponent at position " + std::to_string(i + pos));
                k = uint32_t(std::stoul(term.substr(start, pos - start)));
            }
            (first ? a1 : a2) += k;
        }
        if (neg) coeff = -coeff;
        acc.add_term({a1, a2}, coeff);
        if (j < s.size()) {
            neg = (s[j] == '-');
            ++j;
        }
        i = j;
    }
    return acc;
}

/// Array grammar: row-major, rows joined by ';', entries by ','.
inline std::string array_format(const Array2D& a) {
    std::string out;
    for (size_t i = 0; i < a.s; ++i) {
        if (i) out += ";";
        for (size_t j = 0; j < a.l; ++j) {
            if (j) out += ",";
            out += ff_format(a.at(i, j));
        }
    }
    return out;
}

inline Array2D array_parse(const std::string& text, const FieldCtx* K) {
    std::vector<std::vector<FieldElement>> rows;
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    size_t i = 0;
    while (i <= s.size()) {
        size_t j = s.find(';', i);
        if (j == std::string::npos) j = s.size();
        std::string row = s.substr(i, j - i);
        std::vector<FieldElement> r;
        size_t a = 0;
        while (a <= row.size()) {
            size_t b = row.find(',', a);
            if (b == std::string::npos) b = row.size();
            r.push_back(ff_parse(row.substr(a, b - a), K));
            a = b + 1;
            if (b == row.size()) break;
        }
        rows.push_back(std::move(r));
        i = j + 1;
        if (j == s.size()) break;
    }
    if (rows.empty()) fail(errc::parse_error, "empty array");
    Array2D arr(K, rows.size(), rows[0].size());
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != arr.l) fail(errc::dimension_mismatch, "ragged array rows");
        for (size_t c = 0; c < arr.l; ++c) arr.at(r, c) = rows[r][c];
    }
    return arr;
}

}  // namespace sgc
