#pragma once

#include <utility>
#include <vector>

#include "nk3/rat.hpp"

namespace nk3 {

using IMat = std::vector<std::vector<Int>>;
using IVec = std::vector<Int>;

inline IMat identity_mat(std::size_t n) {
    IMat m(n, IVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Smith normal form: returns (d, u, v) with u*a*v = d, u and v unimodular,
// d diagonal with d[i][i] | d[i+1][i+1].
struct Smith {
    IMat d, u, v;
};

inline Smith smith_normal_form(IMat a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    IMat u = identity_mat(m), v = identity_mat(n);

    auto row_op = [&](std::size_t i, std::size_t j, const Int& c) { // row i -= c * row j
        for (std::size_t k = 0; k < n; ++k) a[i][k] -= c * a[j][k];
        for (std::size_t k = 0; k < m; ++k) u[i][k] -= c * u[j][k];
    };
    auto col_op = [&](std::size_t i, std::size_t j, const Int& c) { // col i -= c * col j
        for (std::size_t k = 0; k < m; ++k) a[k][i] -= c * a[k][j];
        for (std::size_t k = 0; k < n; ++k) v[k][i] -= c * v[k][j];
    };
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        std::swap(u[i], u[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < m; ++k) std::swap(a[k][i], a[k][j]);
        for (std::size_t k = 0; k < n; ++k) std::swap(v[k][i], v[k][j]);
    };

    std::size_t t = 0;
    while (t < m && t < n) {
        // find a pivot of minimal absolute value in the remaining block
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a[i][j] != 0 &&
                    (!found || abs(a[i][j]) < abs(a[pi][pj]))) {
                    pi = i; pj = j; found = true;
                }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i)
            if (a[i][t] != 0) {
                row_op(i, t, floor_div(a[i][t], a[t][t]));
                if (a[i][t] != 0) clean = false;
            }
        for (std::size_t j = t + 1; j < n; ++j)
            if (a[t][j] != 0) {
                col_op(j, t, floor_div(a[t][j], a[t][t]));
                if (a[t][j] != 0) clean = false;
            }
        if (!clean) continue; // smaller remainder became the new pivot candidate

        // divisibility: ensure a[t][t] divides everything below-right
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i)
            for (std::size_t j = t + 1; j < n && divides; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    // fold row i into row t and restart the pivot step
                    row_op(t, i, Int(-1));
                    divides = false;
                }
        if (!divides) continue;
        ++t;
    }
    for (std::size_t i = 0; i < t; ++i)
        if (a[i][i] < 0) {
            for (std::size_t k = 0; k < n; ++k) a[i][k] = -a[i][k];
            for (std::size_t k = 0; k < m; ++k) u[i][k] = -u[i][k];
        }
    return {std::move(a), std::move(u), std::move(v)};
}

// Basis of the integer kernel {x : a x = 0}, as a list of vectors.
inline std::vector<IVec> integer_kernel(const IMat& a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    if (n == 0) return {};
    if (m == 0) {
        std::vector<IVec> basis;
        for (std::size_t j = 0; j < n; ++j) {
            IVec e(n, 0);
            e[j] = 1;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    Smith s = smith_normal_form(a);
    std::size_t rank = 0;
    while (rank < m && rank < n && s.d[rank][rank] != 0) ++rank;
    std::vector<IVec> basis;
    for (std::size_t j = rank; j < n; ++j) {
        IVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = s.v[i][j];
        basis.push_back(std::move(x));
    }
    return basis;
}

using RMat = std::vector<std::vector<Rat>>;

// Inverse of a nonsingular square rational matrix; throws SingularGram if singular.
inline RMat rational_inverse(RMat a) {
    const std::size_t n = a.size();
    RMat inv(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw SingularGram();
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rat piv = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

inline Int integer_determinant(const IMat& a) {
    const std::size_t n = a.size();
    RMat w(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w[i][j] = Rat(a[i][j]);
    Rat det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && w[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(w[p], w[c]);
            det = -det;
        }
        det *= w[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (w[i][c] == 0) continue;
            Rat f = w[i][c] / w[c][c];
            for (std::size_t j = c; j < n; ++j) w[i][j] -= f * w[c][j];
        }
    }
    return num(det); // den is 1 by construction
}

} // namespace nk3
