#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sgc/sgc_code.hpp"

namespace sgc {

/// Witness for the BCH-type bound certifiers. beta lives in GF(q^e); mvec has
/// one entry per step parameter, svec one range per mvec entry after the
/// first. The certified bound on success is Delta + sum(svec).
struct BchWitness {
    FieldElement beta;
    uint32_t e = 1;
    uint64_t l = 0;
    std::vector<uint64_t> mvec;
    uint64_t Delta = 1;
    std::vector<uint64_t> svec;
};

enum class BchMode { strict, roots_only };

/// The theorem statements write some norms without the theta-delta
/// superscript; by default those are read as classical norms. The twisted
/// toggle reads every norm as N^{theta,delta} for sensitivity analysis.
enum class NormReading { classical, twisted };

/// Parse of the root condition "g(beta_i^{l+mi}) = 0" with
/// beta_i = N_{l+mi}(beta):
///  - norm_value: evaluate g at the norm value itself (degenerates to the
///    classical consecutive-power condition at theta = id; the default), or
///  - norm_power: evaluate at the field power beta_i^(l+mi), the literal
///    reading.
enum class RootParse { norm_value, norm_power };

struct BchOptions {
    NormReading norms = NormReading::classical;
    RootParse roots = RootParse::norm_value;
};

struct HypRow {
    std::string hyp;    // "R", "H1", "H2", "H3"
    std::string index;
    std::string value;
    bool pass = true;
};

struct BchReport {
    BchMode mode = BchMode::roots_only;
    std::optional<uint64_t> certified;
    std::vector<HypRow> log;
    bool accepted() const { return certified.has_value(); }
};

namespace detail {

inline FieldElement hyp_norm(const OreRing& Rx, NormReading reading, uint64_t i,
                             const FieldElement& a) {
    return reading == NormReading::classical ? classical_norm(Rx, i, a) : twisted_norm(Rx, i, a);
}

struct grid_iter {
    // iterates i2..ir over 0..s_k; i1 handled by the caller
    std::vector<uint64_t> s;
    std::vector<uint64_t> cur;
    bool done = false;

    explicit grid_iter(const std::vector<uint64_t>& svec) : s(svec), cur(svec.size(), 0) {}
    bool next() {
        for (size_t i = 0; i < cur.size(); ++i) {
            if (cur[i] < s[i]) {
                ++cur[i];
                for (size_t j = 0; j < i; ++j) cur[j] = 0;
                return true;
            }
        }
        return false;
    }
};

inline std::string idx_str(uint64_t i1, const std::vector<uint64_t>& rest) {
    std::string s = std::to_string(i1);
    for (auto v : rest) s += "," + std::to_string(v);
    return s;
}

}  // namespace detail

/// Hypothesis-checking certifier for the BCH-type bounds. Verifies the root
/// grid condition, and in strict mode the three norm hypotheses per active
/// step parameter; certifies d >= Delta + sum(svec) when everything passes.
inline BchReport bch_verify(const SgcCode& code, const BchWitness& w, BchMode mode,
                            BchOptions opt = {}) {
    const OreRing& R = code.ring;
    if (w.mvec.empty()) fail(errc::bad_parameters, "mvec must have at least one entry");
    if (w.svec.size() + 1 != w.mvec.size())
        fail(errc::bad_parameters, "svec must have one entry per mvec entry after the first");
    if (w.Delta < 1) fail(errc::bad_parameters, "Delta must be >= 1");
    const FieldCtx* Ke = w.beta.k;
    if (Ke->p != R.K->p || Ke->m % R.K->m != 0)
        fail(errc::extension_too_small, "beta does not live in an extension of the code field");
    bool all_zero = true;
    for (auto m : w.mvec)
        if (m) all_zero = false;
    if (all_zero && w.Delta >= 2) fail(errc::mvec_all_zero, "mvec must not be all zero");

    BchReport rep;
    rep.mode = mode;
    const uint64_t bound = w.Delta + [&] {
        uint64_t s = 0;
        for (auto x : w.svec) s += x;
        return s;
    }();

    // d >= 1 is vacuous
    if (w.Delta == 1 && w.svec.empty()) {
        rep.certified = 1;
        return rep;
    }

    const OreRing Rx = (Ke == R.K) ? R : R.extended(Ke);
    const size_t n = code.n;
    bool ok = true;

    // (R) root grid: for i1 = 0..Delta-2 and i_k = 0..s_k, the exponent
    // E = l + sum m_k i_k; the point is N_E(beta) (or its E-th power under
    // the literal parse), and g must skew-evaluate to zero there.
    if (w.Delta >= 2) {
        detail::grid_iter grid(w.svec);
        do {
            for (uint64_t i1 = 0; i1 + 2 <= w.Delta; ++i1) {
                uint64_t E = w.l + w.mvec[0] * i1;
                for (size_t k = 0; k < grid.cur.size(); ++k) E += w.mvec[k + 1] * grid.cur[k];
                FieldElement nu = twisted_norm(Rx, E, w.beta);
                FieldElement point =
                    (opt.roots == RootParse::norm_value) ? nu : pow(nu, int64_t(E));
                FieldElement val = skew_eval(code.g, point);
                bool pass = val.is_zero();
                rep.log.push_back(
                    {"R", detail::idx_str(i1, grid.cur), ff_format(val), pass});
                ok = ok && pass;
            }
        } while (grid.next());
    }

    if (mode == BchMode::strict) {
        // Hypotheses per active step parameter m_j (j = 1 always; j >= 2 only
        // when its range s_j is positive, since a zero range leaves the
        // factor inert and the statement degenerates to the previous one).
        for (size_t j = 0; j < w.mvec.size(); ++j) {
            if (j > 0 && w.svec[j - 1] == 0) continue;
            const uint64_t mj = w.mvec[j];
            FieldElement beta_mj = pow(w.beta, int64_t(mj));
            for (uint64_t i = 1; i + 1 <= n; ++i) {
                const std::string tag = "m" + std::to_string(j + 1) + ",i=" + std::to_string(i);
                // (H1) N_i(beta^mj) != 1
                FieldElement h1 = detail::hyp_norm(Rx, opt.norms, i, beta_mj);
                bool p1 = !h1.is_one();
                rep.log.push_back({"H1", tag, ff_format(h1), p1});
                ok = ok && p1;
                // (H2) N_{l+mj*i-1}(N_i(beta^mj)) = 1
                if (w.l + mj * i == 0)
                    fail(errc::index_out_of_range, "hypothesis norm index l+m*i-1 is negative");
                FieldElement h2 = detail::hyp_norm(Rx, opt.norms, w.l + mj * i - 1, h1);
                bool p2 = h2.is_one();
                rep.log.push_back({"H2", tag, ff_format(h2), p2});
                ok = ok && p2;
                // (H3) twisted norms commute at (i, l+mj*i)
                FieldElement lhs = twisted_norm(Rx, i, twisted_norm(Rx, w.l + mj * i, w.beta));
                FieldElement rhs = twisted_norm(Rx, w.l + mj * i, twisted_norm(Rx, i, w.beta));
                bool p3 = lhs == rhs;
                rep.log.push_back({"H3", tag, ff_format(lhs) + "|" + ff_format(rhs), p3});
                ok = ok && p3;
            }
        }
    }

    if (ok) rep.certified = bound;
    return rep;
}

inline BchReport verify_single(const SgcCode& code, const BchWitness& w, BchMode mode,
                               BchOptions opt = {}) {
    if (w.mvec.size() != 1) fail(errc::bad_parameters, "verify_single needs |mvec| = 1");
    return bch_verify(code, w, mode, opt);
}

inline BchReport verify_multi(const SgcCode& code, const BchWitness& w, BchMode mode,
                              BchOptions opt = {}) {
    if (w.mvec.size() < 2) fail(errc::bad_parameters, "verify_multi needs |mvec| >= 2");
    return bch_verify(code, w, mode, opt);
}

/// Index range convention for the lclm constructor grid: the bound theorems
/// use i1 = 0..Delta-2; the closing statement writes i1 = 0..Delta. Both are
/// available; the theorem range is the default.
enum class GridRange { theorem, corollary };

struct MdsConstruction {
    OrePoly g_ext;                   // lclm over GF(q^e)
    std::vector<uint64_t> exponents; // distinct grid exponents used
    bool coeffs_in_base = false;
    std::optional<OrePoly> g_base;
    std::optional<SgcCode> code;
    std::optional<size_t> distance;
    std::optional<bool> mds;
};

/// lclm-based constructor: g = lclm { x - beta^(l + sum i_k c_k) } over the
/// stated grid. When g descends to the base field the code is built and its
/// MDS status measured directly.
inline MdsConstruction construct_mds(const OreRing& R, size_t n, const FieldElement& beta,
                                     uint64_t l, const std::vector<uint64_t>& cvec, uint64_t Delta,
                                     const std::vector<uint64_t>& svec,
                                     GridRange range = GridRange::theorem,
                                     uint64_t budget = 10'000'000) {
    if (R.K->q < n + 1)
        fail(errc::bad_parameters, "need q >= n+1 for the MDS constructor");
    if (cvec.empty()) fail(errc::bad_parameters, "cvec must be nonempty");
    bool all_zero = true;
    for (auto c : cvec)
        if (c) all_zero = false;
    if (all_zero) fail(errc::bad_parameters, "cvec must not be all zero");
    if (svec.size() + 1 != cvec.size())
        fail(errc::bad_parameters, "svec must have one entry per cvec entry after the first");
    const FieldCtx* Ke = beta.k;
    if (Ke->p != R.K->p || Ke->m % R.K->m != 0)
        fail(errc::extension_too_small, "beta does not live in an extension of the code field");

    uint64_t i1_max = (range == GridRange::theorem) ? (Delta >= 2 ? Delta - 2 : 0) : Delta;
    if (range == GridRange::theorem && Delta < 2)
        fail(errc::bad_parameters, "theorem range needs Delta >= 2");
    std::set<uint64_t> exps;
    detail::grid_iter grid(svec);
    do {
        for (uint64_t i1 = 0; i1 <= i1_max; ++i1) {
            uint64_t E = l + cvec[0] * i1;
            for (size_t k = 0; k < grid.cur.size(); ++k) E += cvec[k + 1] * grid.cur[k];
            exps.insert(E);
        }
    } while (grid.next());

    const OreRing Rx = (Ke == R.K) ? R : R.extended(Ke);
    MdsConstruction out;
    out.exponents.assign(exps.begin(), exps.end());
    OrePoly g = ore_zero(Rx);
    bool first = true;
    for (uint64_t E : exps) {
        OrePoly factor = ore_monomial(Rx, fe_one(Ke), 1) - ore_const(Rx, pow(beta, int64_t(E)));
        g = first ? factor : lclm(g, factor);
        first = false;
    }
    out.g_ext = g;

    // pull back when every coefficient sits in the image of the base field
    const uint64_t stride = uint64_t(Ke->q - 1) / (R.K->q - 1);
    bool in_base = true;
    for (const auto& c : g.c) {
        if (c.is_zero()) continue;
        if (Ke->dlog(c.v) % stride != 0) {
            in_base = false;
            break;
        }
    }
    out.coeffs_in_base = in_base;
    if (in_base) {
        OrePoly gb(R);
        gb.c.reserve(g.c.size());
        for (const auto& c : g.c)
            gb.c.push_back(c.is_zero() ? fe_zero(R.K)
                                       : FieldElement{R.K, R.K->exp_of(Ke->dlog(c.v) / stride)});
        gb.trim();
        out.g_base = gb;
        if (gb.deg() >= 1 && size_t(gb.deg()) <= n - 1) {
            SgcCode code = sgc_from_generator(R, gb, n);
            size_t d = min_distance(code.G, budget);
            code.params.d = d;
            out.distance = d;
            out.mds = (d == n - code.params.k + 1);
            out.code = std::move(code);
        }
    }
    return out;
}

}  // namespace sgc
