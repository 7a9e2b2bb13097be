#pragma once

// Shared test helpers: independent oracles and generators kept away from the
// library code paths they are used to check.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "nk3/fqf.hpp"
#include "nk3/rat.hpp"

namespace nk3::test {

// Exhaustive isomorphism test between two finite quadratic forms, feasible
// for group orders up to ~2^16.  Maps generators of a onto elements of b of
// equal order, matching q and b values, then checks surjectivity.
inline bool forms_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
    std::vector<long long> oa = a.orders(), ob = b.orders();
    std::sort(oa.begin(), oa.end());
    std::sort(ob.begin(), ob.end());
    if (oa != ob) return false;
    if (a.is_trivial()) return true;

    Subgroup all = subgroup_span(b, [&] {
        std::vector<FqfElement> gens;
        for (std::size_t i = 0; i < b.num_gens(); ++i) gens.push_back(b.gen(i));
        return gens;
    }());

    // candidates per generator, keyed by (order, q)
    std::vector<std::vector<FqfElement>> candidates(a.num_gens());
    for (std::size_t i = 0; i < a.num_gens(); ++i)
        for (const auto& y : all.elements)
            if (b.element_order(y) == a.order(i) && eval_q(b, y) == a.q_gen(i))
                candidates[i].push_back(y);

    std::vector<FqfElement> image(a.num_gens());
    auto dfs = [&](auto&& self, std::size_t i) -> bool {
        if (i == a.num_gens()) {
            Subgroup spanned = subgroup_span(b, image);
            return spanned.elements.size() == all.elements.size();
        }
        for (const auto& y : candidates[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                ok = eval_b(b, y, image[j]) == a.b_gen(i, j);
            if (!ok) continue;
            image[i] = y;
            if (self(self, i + 1)) return true;
        }
        return false;
    };
    return dfs(dfs, 0);
}

// Random non-degenerate even symmetric integer matrix.
inline IMat random_even_gram(std::mt19937_64& rng, int max_rank = 6, int max_entry = 8) {
    std::uniform_int_distribution<int> rank_d(1, max_rank);
    for (;;) {
        int n = rank_d(rng);
        std::uniform_int_distribution<int> diag_d(-max_entry / 2, max_entry / 2);
        std::uniform_int_distribution<int> off_d(-max_entry / 2, max_entry / 2);
        IMat g(n, IVec(n, 0));
        for (int i = 0; i < n; ++i) {
            g[i][i] = 2 * diag_d(rng);
            for (int j = i + 1; j < n; ++j) g[i][j] = g[j][i] = off_d(rng);
        }
        if (integer_determinant(g) != 0) return g;
    }
}

// Random unimodular matrix from elementary operations on the identity.
inline IMat random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 20) {
    IMat u = identity_mat(n);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        int c = coef(rng);
        for (std::size_t k = 0; k < n; ++k) u[i][k] += c * u[j][k];
    }
    return u;
}

inline IMat congruent_gram(const IMat& g, const IMat& u) {
    std::size_t n = g.size();
    IMat tmp(n, IVec(n, 0)), out(n, IVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) tmp[i][j] += u[i][k] * g[k][j];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) out[i][j] += tmp[i][k] * u[j][k];
    return out;
}

// All vectors v with 0 < v^t G v <= bound for positive-definite G, up to sign.
// Plain recursive enumeration with exact rational Cholesky.
inline std::vector<IVec> short_vectors(const IMat& g, const Rat& bound) {
    const std::size_t n = g.size();
    // Cholesky: G = R^t D R with R unit upper triangular
    RMat r(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> d(n);
    RMat a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(g[i][j]);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = a[i][i];
        r[i][i] = 1;
        for (std::size_t j = i + 1; j < n; ++j) r[i][j] = a[i][j] / d[i];
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) {
                a[j][k] -= d[i] * r[i][j] * r[i][k];
                a[k][j] = a[j][k];
            }
    }
    std::vector<IVec> found;
    IVec v(n, 0);
    // enumerate coordinates from the last: sum_i d_i (v_i + sum_{j>i} r_ij v_j)^2 <= bound
    auto rec = [&](auto&& self, std::size_t level, const Rat& remaining) -> void {
        if (level == 0) {
            bool zero = true;
            for (const auto& c : v)
                if (c != 0) { zero = false; break; }
            if (!zero) found.push_back(v);
            return;
        }
        std::size_t i = level - 1;
        Rat center(0);
        for (std::size_t j = i + 1; j < n; ++j) center += r[i][j] * Rat(v[j]);
        // d_i (v_i + center)^2 <= remaining; scan integers around -center
        long long c0 = floor_div(num(-center), den(-center)).convert_to<long long>();
        for (long long vi = c0;; --vi) {
            Rat t = Rat(vi) + center;
            if (t * t * d[i] > remaining) break;
            v[i] = vi;
            self(self, i, remaining - t * t * d[i]);
        }
        for (long long vi = c0 + 1;; ++vi) {
            Rat t = Rat(vi) + center;
            if (t * t * d[i] > remaining) break;
            v[i] = vi;
            self(self, i, remaining - t * t * d[i]);
        }
        v[i] = 0;
    };
    rec(rec, n, bound);
    // dedup +-v
    std::vector<IVec> half;
    for (auto& x : found) {
        IVec neg(n);
        for (std::size_t i = 0; i < n; ++i) neg[i] = -x[i];
        if (std::find(half.begin(), half.end(), neg) == half.end()) half.push_back(x);
    }
    return half;
}

inline Rat norm_of(const IMat& g, const IVec& v) {
    Rat acc(0);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) acc += Rat(g[i][j] * v[i] * v[j]);
    return acc;
}

} // namespace nk3::test
