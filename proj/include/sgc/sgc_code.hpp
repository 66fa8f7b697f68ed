#pragma once

#include <optional>
#include <vector>

#include "sgc/bivar.hpp"
#include "sgc/linear_code.hpp"
#include "sgc/ore.hpp"

namespace sgc {

/// Skew generalized cyclic code keyed by (ring, g, n). The generator matrix
/// rows are the coefficient vectors of x^i g for i = 0..k-1; their degrees
/// stay below n, so the matrix does not depend on a choice of modulus f.
struct SgcCode {
    OreRing ring;
    OrePoly g;
    size_t n = 0;
    Mat G;
    CodeParams params;
};

inline SgcCode sgc_from_generator(const OreRing& R, const OrePoly& g, size_t n) {
    if (!g.is_monic()) fail(errc::not_monic, "generator must be monic");
    if (g.deg() < 0 || size_t(g.deg()) > n - 1)
        fail(errc::degree_out_of_range,
             "generator degree must be in [0, n-1], got " + std::to_string(g.deg()));
    const size_t k = n - size_t(g.deg());
    SgcCode code;
    code.ring = R;
    code.g = g;
    code.n = n;
    code.G = Mat(R.K, k, n);
    OrePoly xi_g = g;
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j <= size_t(xi_g.deg()); ++j) code.G.at(i, j) = xi_g.c[j].v;
        if (i + 1 < k) xi_g = mul_x_left(xi_g);
    }
    code.params = {n, k, std::nullopt};
    return code;
}

/// The set {a in F_q^* : g right-divides x^n - a}. The right remainder of
/// x^n - a by g is rem(x^n, g) - a, so the set is empty unless rem(x^n, g)
/// is a nonzero constant, in which case it is that single value. A degree-0
/// generator divides everything.
inline std::vector<FieldElement> divisor_targets(const OreRing& R, const OrePoly& g, size_t n) {
    if (g.is_zero() || size_t(g.deg()) > n) fail(errc::degree_out_of_range, "need 0 <= deg g <= n");
    std::vector<FieldElement> out;
    if (g.deg() == 0) {
        for (uint32_t k = 0; k + 1 < R.K->q; ++k) out.push_back({R.K, R.K->exp_of(k)});
        return out;
    }
    OrePoly rem = ore_right_rem(ore_monomial(R, fe_one(R.K), n), g);
    if (rem.deg() == 0) out.push_back(rem.c[0]);
    return out;
}

/// Pseudo-linear transform associated with a monic modulus f: multiplication
/// by x on R/Rf in the coordinate basis.
inline PseudoLinearMap transform_of(const OreRing& R, const OrePoly& f) {
    return PseudoLinearMap(companion(f), R.t, R.gamma);
}

/// Parity data from a two-sided factorization f = h g = g h'. W is the full
/// n x n iterate matrix with rows T_f^j(h'), j = 0..n-1; H = W^T. Every
/// codeword of (g) is orthogonal to every row of H, and the linearly
/// independent rows of H are a basis of the dual code.
struct ParityData {
    OrePoly h_right;  // f = h_right * g
    OrePoly h_left;   // f = g * h_left
    Mat W;
    Mat H;
};

inline ParityData cofactor_parity(const OreRing& R, const OrePoly& f, const OrePoly& g) {
    if (!f.is_monic() || !g.is_monic()) fail(errc::not_monic, "f and g must be monic");
    if (f.c.empty() || f.c[0].is_zero())
        fail(errc::zero_constant_term, "f must have nonzero constant term");
    auto [qr, rr] = ore_right_divmod(f, g);
    auto [ql, rl] = ore_left_divmod(f, g);
    if (!rr.is_zero() || !rl.is_zero())
        fail(errc::not_two_sided_divisor, "g must divide f on both sides");
    const size_t n = size_t(f.deg());
    ParityData pd;
    pd.h_right = qr;
    pd.h_left = ql;
    PseudoLinearMap T = transform_of(R, f);
    pd.W = Mat(R.K, n, n);
    std::vector<uint32_t> v(n, 0);
    for (size_t j = 0; j <= size_t(pd.h_left.deg()); ++j) v[j] = pd.h_left.c[j].v;
    for (size_t j = 0; j < n; ++j) {
        for (size_t c = 0; c < n; ++c) pd.W.at(j, c) = v[c];
        if (j + 1 < n) v = pseudo_apply(T, v);
    }
    pd.H = Mat(R.K, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) pd.H.at(i, j) = pd.W.at(j, i);
    return pd;
}

/// Dual pseudo-linear structure: (M, sigma, delta_gamma) maps to
/// ((M^T)_{sigma^{-1}}, sigma^{-1}, -sigma^{-1} delta), which is again inner
/// with parameter sigma^{-1}(gamma).
inline PseudoLinearMap dual_transform(const PseudoLinearMap& T) {
    const FieldCtx* K = T.M.K;
    const uint32_t m = K->m;
    const uint32_t t_inv = T.t == 0 ? 0 : (m - (T.t % m)) % m;
    Mat M2(K, T.M.rows, T.M.cols);
    for (size_t i = 0; i < T.M.rows; ++i)
        for (size_t j = 0; j < T.M.cols; ++j) M2.at(i, j) = K->frob(T.M.at(j, i), t_inv);
    FieldElement gamma2 = {K, K->frob(T.gamma.v, t_inv)};
    return PseudoLinearMap(std::move(M2), t_inv, gamma2);
}

/// Two-dimensional SGC code over the separable pair (f1(x1), f2(x2)).
struct Sgc2dCode {
    BiOreRing ring;
    OrePoly f1, f2;
    BiOrePoly g;
    size_t s = 0, l = 0;
    size_t k1 = 0, k2 = 0;
    Mat G;
    size_t rank = 0;
    bool rank_matches_formula = false;  // rank == (s-k1)(l-k2)
    ClosureReport closure;
    CodeParams params;
};

/// Rows are the reduced coefficient arrays of x2^j x1^i g for
/// 0 <= i < s-k1, 0 <= j < l-k2, flattened row-major.
inline Sgc2dCode sgc2d_from_generator(const BiOreRing& R, const OrePoly& f1, const OrePoly& f2,
                                      const BiOrePoly& g) {
    if (g.is_zero()) fail(errc::zero_polynomial, "zero generator");
    check_commuting_moduli(R, f1, f2);
    const size_t s = size_t(f1.deg()), l = size_t(f2.deg());
    auto [k1, k2] = lexdeg(g);
    if (k1 >= s || k2 >= l)
        fail(errc::lexdeg_out_of_range, "lexdeg(g) must be componentwise below (s, l)");
    if (lex_leading_coeff(g).is_zero())
        fail(errc::lexdeg_out_of_range, "lex-leading coefficient must be a unit");
    Sgc2dCode code;
    code.ring = R;
    code.f1 = f1;
    code.f2 = f2;
    code.g = g;
    code.s = s;
    code.l = l;
    code.k1 = k1;
    code.k2 = k2;
    const size_t rows1 = s - k1, rows2 = l - k2;
    const size_t k = rows1 * rows2, n = s * l;
    code.G = Mat(R.K, k, n);
    size_t row = 0;
    std::vector<Array2D> arrays;
    for (size_t j = 0; j < rows2; ++j)
        for (size_t i = 0; i < rows1; ++i) {
            BiOrePoly p = bi_mul(bi_monomial(R, fe_one(R.K), uint32_t(i), uint32_t(j)), g);
            Array2D arr = gamma_f_inv(reduce_pair(f1, f2, p), s, l);
            auto f = arr.flat();
            std::copy(f.begin(), f.end(), code.G.a.begin() + row * n);
            arrays.push_back(std::move(arr));
            ++row;
        }
    code.rank = mat_rank(code.G);
    code.rank_matches_formula = (code.rank == k);
    PseudoLinearMap T_row(companion(f2), R.t2);
    PseudoLinearMap T_col(companion(f1), R.t1);
    code.closure = shift_closure_check(arrays, T_row, T_col);
    code.params = {n, code.rank, std::nullopt};
    return code;
}

}  // namespace sgc
