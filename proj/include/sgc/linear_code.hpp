#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "sgc/field.hpp"

namespace sgc {

/// Row-major matrix of packed field values.
struct Mat {
    const FieldCtx* K = nullptr;
    size_t rows = 0, cols = 0;
    std::vector<uint32_t> a;

    Mat() = default;
    Mat(const FieldCtx* k, size_t r, size_t c) : K(k), rows(r), cols(c), a(r * c, 0) {}

    uint32_t& at(size_t i, size_t j) { return a[i * cols + j]; }
    uint32_t at(size_t i, size_t j) const { return a[i * cols + j]; }

    std::vector<uint32_t> row(size_t i) const {
        return std::vector<uint32_t>(a.begin() + i * cols, a.begin() + (i + 1) * cols);
    }

    friend bool operator==(const Mat&, const Mat&) = default;
};

inline Mat mat_identity(const FieldCtx* K, size_t n) {
    Mat m(K, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

/// Gauss-Jordan to reduced row echelon form with fixed pivot order; the
/// result is the canonical representative of the row space.
inline std::pair<size_t, Mat> rref_rank(Mat m) {
    const FieldCtx* K = m.K;
    size_t r = 0;
    for (size_t col = 0; col < m.cols && r < m.rows; ++col) {
        size_t piv = r;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != r)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        uint32_t s = K->inv(m.at(r, col));
        for (size_t j = col; j < m.cols; ++j) m.at(r, j) = K->mul(s, m.at(r, j));
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, col) == 0) continue;
            uint32_t f = m.at(i, col);
            for (size_t j = col; j < m.cols; ++j)
                m.at(i, j) = K->sub(m.at(i, j), K->mul(f, m.at(r, j)));
        }
        ++r;
    }
    return {r, m};
}

inline size_t mat_rank(const Mat& m) { return rref_rank(m).first; }

/// Canonical basis of the row space: RREF with zero rows dropped.
inline Mat row_space_basis(const Mat& m) {
    auto [r, R] = rref_rank(m);
    Mat out(m.K, r, m.cols);
    std::copy(R.a.begin(), R.a.begin() + r * m.cols, out.a.begin());
    return out;
}

inline bool row_space_contains(const Mat& basis, const std::vector<uint32_t>& v) {
    Mat ext(basis.K, basis.rows + 1, basis.cols);
    std::copy(basis.a.begin(), basis.a.end(), ext.a.begin());
    std::copy(v.begin(), v.end(), ext.a.begin() + basis.rows * basis.cols);
    return mat_rank(ext) == mat_rank(basis);
}

inline bool same_row_space(const Mat& a, const Mat& b) {
    return row_space_basis(a) == row_space_basis(b);
}

inline size_t vec_weight(const std::vector<uint32_t>& v) {
    size_t w = 0;
    for (auto x : v)
        if (x) ++w;
    return w;
}

/// Basis of the Euclidean null space {c : G c^T = 0}; dim = n - rank.
inline Mat dual_basis(const Mat& G) {
    auto [r, R] = rref_rank(G);
    const FieldCtx* K = G.K;
    const size_t n = G.cols;
    std::vector<size_t> pivot_col;
    std::vector<bool> is_pivot(n, false);
    for (size_t i = 0; i < r; ++i) {
        size_t c = 0;
        while (c < n && R.at(i, c) == 0) ++c;
        pivot_col.push_back(c);
        is_pivot[c] = true;
    }
    Mat D(K, n - r, n);
    size_t row = 0;
    for (size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        D.at(row, f) = 1;
        for (size_t i = 0; i < r; ++i) D.at(row, pivot_col[i]) = K->neg(R.at(i, f));
        ++row;
    }
    return row_space_basis(D);
}

struct CodeParams {
    size_t n = 0;
    size_t k = 0;
    std::optional<size_t> d;
};

namespace detail {

/// Full message-space scan: odometer over digits with incremental codeword
/// update, so each step costs O(n).
inline size_t min_weight_full(const Mat& G, size_t workers) {
    const FieldCtx* K = G.K;
    const size_t k = G.rows, n = G.cols, q = K->q;
    auto scan_range = [&](uint64_t lo, uint64_t hi) -> size_t {
        // message u encoded base q over digits 0..k-1, digit 0 fastest
        std::vector<uint32_t> u(k, 0);
        std::vector<uint32_t> cw(n, 0);
        uint64_t idx = lo;
        {
            uint64_t t = lo;
            for (size_t i = 0; i < k; ++i) {
                u[i] = uint32_t(t % q);
                t /= q;
            }
            for (size_t i = 0; i < k; ++i)
                if (u[i])
                    for (size_t j = 0; j < n; ++j)
                        cw[j] = K->add(cw[j], K->mul(u[i], G.at(i, j)));
        }
        size_t best = n + 1;
        while (true) {
            if (idx != 0) {
                size_t w = vec_weight(cw);
                if (w && w < best) best = w;
            }
            ++idx;
            if (idx >= hi) break;
            // increment odometer; adding 1 to digit i adds row i once,
            // rolling a digit from q-1 to 0 subtracts (q-1) rows = adds one
            size_t i = 0;
            while (true) {
                if (u[i] + 1 < q) {
                    u[i] += 1;
                    for (size_t j = 0; j < n; ++j) cw[j] = K->add(cw[j], G.at(i, j));
                    break;
                }
                // u[i]: q-1 -> 0 removes (q-1)*row_i; -(q-1) = +1 mod p-span
                u[i] = 0;
                for (size_t j = 0; j < n; ++j)
                    cw[j] = K->sub(cw[j], K->mul(q - 1, G.at(i, j)));
                ++i;
            }
        }
        return best;
    };
    uint64_t total = 1;
    for (size_t i = 0; i < k; ++i) total *= q;
    if (workers <= 1 || total < 4096) return scan_range(0, total);
    size_t W = std::min<size_t>(workers, 8);
    std::vector<size_t> results(W, n + 1);
    std::vector<std::thread> ts;
    for (size_t w = 0; w < W; ++w) {
        uint64_t lo = total * w / W, hi = total * (w + 1) / W;
        ts.emplace_back([&, w, lo, hi] { results[w] = scan_range(lo, hi); });
    }
    for (auto& t : ts) t.join();
    return *std::min_element(results.begin(), results.end());
}

/// Information-set refinement: enumerate messages of increasing weight over
/// a systematic form; stop once best <= current weight + 1.
inline size_t min_weight_infoset(const Mat& G0, uint64_t budget) {
    const FieldCtx* K = G0.K;
    auto [r, R] = rref_rank(G0);
    const size_t k = r, n = G0.cols, q = K->q;
    // pivot columns form the information set
    std::vector<size_t> piv;
    for (size_t i = 0; i < k; ++i) {
        size_t c = 0;
        while (c < n && R.at(i, c) == 0) ++c;
        piv.push_back(c);
    }
    size_t best = n + 1;
    uint64_t used = 0;
    std::vector<uint32_t> cw(n);
    for (size_t wt = 1; wt <= k; ++wt) {
        if (best <= wt) return best;  // any unseen codeword weighs >= wt on the info set
        // iterate supports of size wt and nonzero values
        std::vector<size_t> idx(wt);
        for (size_t i = 0; i < wt; ++i) idx[i] = i;
        while (true) {
            std::vector<uint32_t> vals(wt, 1);
            while (true) {
                if (++used > budget)
                    fail(errc::budget_exceeded,
                         "minimum distance enumeration budget exhausted; best upper bound " +
                             std::to_string(best) + ", lower bound " + std::to_string(wt));
                std::fill(cw.begin(), cw.end(), 0);
                for (size_t i = 0; i < wt; ++i)
                    for (size_t j = 0; j < n; ++j)
                        cw[j] = K->add(cw[j], K->mul(vals[i], R.at(idx[i], j)));
                size_t w = vec_weight(cw);
                if (w && w < best) best = w;
                // next value tuple (each digit 1..q-1)
                size_t i = 0;
                while (i < wt && vals[i] == q - 1) vals[i++] = 1;
                if (i == wt) break;
                ++vals[i];
            }
            // next support
            size_t i = wt;
            while (i-- > 0) {
                if (idx[i] + (wt - i) < k) {
                    ++idx[i];
                    for (size_t j = i + 1; j < wt; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) {
                    i = SIZE_MAX;
                    break;
                }
            }
            if (i == SIZE_MAX) break;
        }
    }
    return best;
}

}  // namespace detail

/// Exact minimum nonzero codeword weight. Full enumeration when q^k fits the
/// budget, otherwise increasing-weight information-set enumeration.
inline size_t min_distance(const Mat& G, uint64_t budget = 10'000'000, size_t workers = 1) {
    size_t k = mat_rank(G);
    if (k == 0) fail(errc::bad_parameters, "minimum distance of the zero code");
    Mat B = row_space_basis(G);
    const uint64_t q = G.K->q;
    uint64_t total = 1;
    bool over = false;
    for (size_t i = 0; i < k; ++i) {
        total *= q;
        if (total > budget) {
            over = true;
            break;
        }
    }
    if (!over) return detail::min_weight_full(B, workers);
    return detail::min_weight_infoset(B, budget);
}

/// MDS test: every selection of k columns of the RREF generator nonsingular
/// (equivalent to d = n - k + 1).
inline bool is_mds(const Mat& G) {
    auto [k, R] = rref_rank(G);
    const size_t n = G.cols;
    if (k == 0) return false;
    if (k == n) return true;
    const FieldCtx* K = G.K;
    // k = 1: single row must have full weight
    if (k == 1) {
        for (size_t j = 0; j < n; ++j)
            if (R.at(0, j) == 0) return false;
        return true;
    }
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<uint32_t> sub(k * k);
    while (true) {
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) sub[i * k + j] = R.at(i, idx[j]);
        // in-place rank of the k x k submatrix
        size_t r = 0;
        for (size_t col = 0; col < k && r < k; ++col) {
            size_t piv = r;
            while (piv < k && sub[piv * k + col] == 0) ++piv;
            if (piv == k) break;
            if (piv != r)
                for (size_t j = 0; j < k; ++j) std::swap(sub[piv * k + j], sub[r * k + j]);
            uint32_t s = K->inv(sub[r * k + col]);
            for (size_t j = col; j < k; ++j) sub[r * k + j] = K->mul(s, sub[r * k + j]);
            for (size_t i = r + 1; i < k; ++i) {
                uint32_t f = sub[i * k + col];
                if (!f) continue;
                for (size_t j = col; j < k; ++j)
                    sub[i * k + j] = K->sub(sub[i * k + j], K->mul(f, sub[r * k + j]));
            }
            ++r;
        }
        if (r < k) return false;
        // next k-combination of columns
        size_t i = k;
        bool done = true;
        while (i-- > 0) {
            if (idx[i] + (k - i) < n) {
                ++idx[i];
                for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                done = false;
                break;
            }
        }
        if (done) return true;
    }
}

}  // namespace sgc
