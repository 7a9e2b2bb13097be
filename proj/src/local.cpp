#include "nk3/local.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace nk3 {

SquareClass square_class_of(long long l, const Int& u) {
    if (mod_pos(u, Int(l)) == 0) throw NotAUnit();
    if (l == 2) {
        if (u % 2 == 0) throw NotAUnit();
        return {2, int(mod_pos(u, Int(8)).convert_to<long long>())};
    }
    return {l, legendre(u, Int(l))};
}

SquareClass operator*(const SquareClass& a, const SquareClass& b) {
    if (a.l != b.l) throw PrimeMismatch();
    if (a.l == 2) return {2, (a.cls * b.cls) % 8};
    return {a.l, a.cls * b.cls};
}

LocalInvariant star(const LocalInvariant& a, const LocalInvariant& b) {
    return {(a.sigma + b.sigma) % 8, a.rho * b.rho};
}

namespace {

LocalInvariantSet normalized(LocalInvariantSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

} // namespace

LocalInvariantSet star(const LocalInvariantSet& a, const LocalInvariantSet& b) {
    LocalInvariantSet out;
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(star(x, y));
    return normalized(std::move(out));
}

std::string to_string(const LocalInvariant& t) {
    std::string rho = t.rho.l == 2 ? std::to_string(t.rho.cls) : (t.rho.cls == 1 ? "1" : "n");
    return "[" + std::to_string(t.sigma) + "," + rho + "]";
}

LocalInvariantSet local_set_unimodular(long long l, long long n) {
    if (n == 0) return {{0, {l, 1}}};
    if (l != 2) return normalized({{0, {l, 1}}, {0, {l, -1}}});
    if (n % 2) return {};
    int s = int(n % 8);
    if (n % 4 == 0) return normalized({{s, {2, 1}}, {s, {2, 5}}});
    return normalized({{s, {2, 3}}, {s, {2, 7}}});
}

LocalInvariantSet local_set_cyclic(long long l, int nu, long long a) {
    long long lnu = 1;
    for (int i = 0; i < nu; ++i) lnu *= l;
    if (nu < 1 || std::gcd(a, l) != 1) throw BadNumerator();
    if (l != 2) {
        int lam = legendre(Int(a), Int(l));
        int ex = int(lnu % 8);
        if (lam == 1) return {{(ex + 7) % 8, {l, 1}}};
        if (nu % 2 == 0) return {{(ex + 7) % 8, {l, -1}}};
        return {{(ex + 3) % 8, {l, -1}}};
    }
    long long a8 = ((a % 8) + 8) % 8;
    auto single = [&](long long excess_base) {
        return LocalInvariantSet{{int(((excess_base - a8) % 8 + 8) % 8), {2, int(a8)}}};
    };
    if (nu % 2 == 0) return single(1);
    if (nu >= 2) {
        if (a8 == 1 || a8 == 7) return single(1);
        return single(5);
    }
    // nu = 1: keyed on a mod 4
    if (a8 % 4 == 1) return normalized({{0, {2, 1}}, {0, {2, 5}}});
    return normalized({{2, {2, 3}}, {2, {2, 7}}});
}

LocalInvariantSet local_set_even_type(int nu, long long u, long long v, long long w) {
    if (v % 2 == 0) throw DegenerateEvenType();
    if ((u * w) % 2 == 0) return {{2, {2, 7}}};
    if (nu % 2 == 0) return {{2, {2, 3}}};
    return {{6, {2, 3}}};
}

LocalInvariantSet local_invariant_set(long long l, long long n, const FiniteQuadraticForm& f_l) {
    for (long long p : f_l.primes())
        if (p != l) throw MixedPrimes();
    long long leng = f_l.leng();
    if (n < leng) return {};
    LocalInvariantSet acc = {{0, {l, 1}}};
    for (const auto& piece : decompose_cyclic_even(f_l)) {
        LocalInvariantSet s = piece.even_type
                                  ? local_set_even_type(piece.nu, piece.u, piece.v, piece.w)
                                  : local_set_cyclic(l, piece.nu, piece.a);
        acc = star(acc, s);
    }
    if (n > leng) acc = star(acc, local_set_unimodular(l, n - leng));
    return acc;
}

namespace {

int val_l(const Rat& x, long long l) {
    if (x == 0) throw Error("val_l of zero");
    return ord_l(num(x), Int(l)) - ord_l(den(x), Int(l));
}

// unit part of x = l^v * u as an element of Z_l^x, reported as a square class
SquareClass unit_class(const Rat& x, long long l) {
    int v = val_l(x, l);
    Rat u = x;
    for (int i = 0; i < v; ++i) u /= l;
    for (int i = 0; i < -v; ++i) u *= l;
    if (l == 2) {
        // u = p/q with p, q odd; q^{-1} = q mod 8, so u = p*q mod 8
        Int p = mod_pos(num(u), Int(8)), q = mod_pos(den(u), Int(8));
        return {2, int(((p * q) % 8).convert_to<long long>())};
    }
    return {l, legendre(num(u), Int(l)) * legendre(den(u), Int(l))};
}

} // namespace

JordanDecomposition jordan_decompose(long long l, const GramLattice& lat) {
    if (lat.det() == 0) throw SingularGram();
    if (l == 2 && !lat.is_even()) throw NotEven();
    const std::size_t n = lat.rank();
    RMat a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(lat.gram()[i][j]);

    std::map<int, JordanBlock> blocks;
    std::vector<bool> done(n, false);
    std::size_t left = n;

    auto sym_sub = [&](std::size_t i, std::size_t j, const Rat& c) {
        // row/col i -= c * row/col j
        for (std::size_t k = 0; k < n; ++k) a[i][k] -= c * a[j][k];
        for (std::size_t k = 0; k < n; ++k) a[k][i] -= c * a[k][j];
    };

    while (left > 0) {
        int best = INT32_MAX;
        std::size_t bi = n, bj = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            for (std::size_t j = i; j < n; ++j) {
                if (done[j] || a[i][j] == 0) continue;
                int v = val_l(a[i][j], l);
                if (v < best || (v == best && i == j && bi != bj)) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi == n) throw SingularGram("jordan: degenerate block");

        bool diag_pivot = (bi == bj);
        if (!diag_pivot && l != 2) {
            // fold to the diagonal: a[bi][bi] +- 2 a[bi][bj] + a[bj][bj], one sign works
            for (std::size_t k = 0; k < n; ++k) a[bi][k] += a[bj][k];
            for (std::size_t k = 0; k < n; ++k) a[k][bi] += a[k][bj];
            if (a[bi][bi] == 0 || val_l(a[bi][bi], l) > best) {
                for (std::size_t k = 0; k < n; ++k) a[bi][k] -= 2 * a[bj][k];
                for (std::size_t k = 0; k < n; ++k) a[k][bi] -= 2 * a[k][bj];
            }
            bj = bi;
            diag_pivot = true;
        }
        if (!diag_pivot && l == 2) {
            // check whether some untouched diagonal attains the minimum
            for (std::size_t i = 0; i < n; ++i)
                if (!done[i] && a[i][i] != 0 && val_l(a[i][i], l) == best) {
                    bi = bj = i;
                    diag_pivot = true;
                    break;
                }
        }

        JordanBlock& blk = blocks[best];
        blk.nu = best;
        if (diag_pivot) {
            Rat piv = a[bi][bi];
            for (std::size_t k = 0; k < n; ++k) {
                if (done[k] || k == bi || a[k][bi] == 0) continue;
                sym_sub(k, bi, a[k][bi] / piv);
            }
            SquareClass u = unit_class(piv, l);
            if (l == 2) {
                if (best == 0) throw NotEven("jordan: odd unimodular block in even lattice");
                blk.units.push_back(u.cls);
            } else {
                ++blk.rank;
                blk.disc_cls *= u.cls;
            }
            done[bi] = true;
            --left;
            continue;
        }

        // l = 2, genuinely off-diagonal: split the 2x2 block {bi, bj}
        Rat a11 = a[bi][bi], a12 = a[bi][bj], a22 = a[bj][bj];
        Rat det = a11 * a22 - a12 * a12;
        for (std::size_t k = 0; k < n; ++k) {
            if (done[k] || k == bi || k == bj) continue;
            if (a[k][bi] == 0 && a[k][bj] == 0) continue;
            Rat x = (a[k][bi] * a22 - a[k][bj] * a12) / det;
            Rat y = (a[k][bj] * a11 - a[k][bi] * a12) / det;
            for (std::size_t m = 0; m < n; ++m) a[k][m] -= x * a[bi][m] + y * a[bj][m];
            for (std::size_t m = 0; m < n; ++m) a[m][k] -= x * a[m][bi] + y * a[m][bj];
        }
        // scaled block 2^-2*best * det is a unit; U has det = -1, V has det = 3 (mod 8)
        Rat unit_det = det;
        for (int i = 0; i < 2 * best; ++i) unit_det /= 2;
        SquareClass dc = unit_class(unit_det, 2);
        if (dc.cls == 7) ++blk.n_u;
        else if (dc.cls == 3) ++blk.n_v;
        else throw Error("jordan: unexpected even block determinant");
        done[bi] = done[bj] = true;
        left -= 2;
    }

    JordanDecomposition out;
    out.l = l;
    for (auto& [nu, blk] : blocks) out.blocks.push_back(blk);
    return out;
}

LocalInvariant tau_of_jordan(const JordanDecomposition& j) {
    int sigma = 0;
    SquareClass rho{j.l, 1};
    for (const auto& blk : j.blocks) {
        long long lnu = 1;
        for (int i = 0; i < blk.nu; ++i) lnu *= j.l;
        if (j.l != 2) {
            sigma = int((sigma + blk.rank * ((lnu - 1) % 8)) % 8);
            if (blk.nu % 2 == 1 && blk.disc_cls == -1) sigma = (sigma + 4) % 8;
            rho = rho * SquareClass{j.l, blk.disc_cls};
        } else {
            for (int u : blk.units) {
                bool pm1 = (u == 1 || u == 7);
                int e = (blk.nu % 2 == 0 || pm1) ? (1 - u) : (5 - u);
                sigma = ((sigma + e) % 8 + 8) % 8;
                rho = rho * SquareClass{2, u};
            }
            sigma = (sigma + 2 * blk.n_u) % 8;
            int ev = blk.nu % 2 == 0 ? 2 : 6;
            sigma = (sigma + ev * blk.n_v) % 8;
            for (int i = 0; i < blk.n_u; ++i) rho = rho * SquareClass{2, 7};
            for (int i = 0; i < blk.n_v; ++i) rho = rho * SquareClass{2, 3};
        }
    }
    return {sigma, rho};
}

std::optional<EvenLatticeWitness> exists_even_lattice(int s_plus, int s_minus,
                                                      const FiniteQuadraticForm& f) {
    if (s_plus < 0 || s_minus < 0) throw Error("exists_even_lattice: negative signature");
    const long long n = s_plus + s_minus;
    if (n == 0) {
        if (f.is_trivial()) return EvenLatticeWitness{};
        return std::nullopt;
    }
    Int d = f.group_order();
    if (s_minus % 2) d = -d;

    std::set<long long> primes{2};
    for (long long l : f.primes()) primes.insert(l);

    std::vector<std::pair<long long, std::vector<LocalInvariant>>> options;
    for (long long l : primes) {
        Int unit = d;
        while (unit % l == 0) unit /= l;
        SquareClass target = square_class_of(l, unit);
        LocalInvariantSet s = local_invariant_set(l, n, l_part(f, l));
        std::vector<LocalInvariant> filtered;
        for (const auto& t : s)
            if (t.rho == target) filtered.push_back(t);
        if (filtered.empty()) return std::nullopt;
        options.emplace_back(l, std::move(filtered));
    }

    const int want = int((((n - s_plus + s_minus) % 8) + 8) % 8);
    std::vector<std::size_t> pick(options.size(), 0);
    for (;;) {
        int total = 0;
        for (std::size_t i = 0; i < options.size(); ++i)
            total = (total + options[i].second[pick[i]].sigma) % 8;
        if (total == want) {
            EvenLatticeWitness w;
            for (std::size_t i = 0; i < options.size(); ++i)
                w.choices.emplace_back(options[i].first, options[i].second[pick[i]]);
            return w;
        }
        std::size_t i = 0;
        while (i < options.size() && ++pick[i] == options[i].second.size()) pick[i++] = 0;
        if (i == options.size()) return std::nullopt;
    }
}

} // namespace nk3
