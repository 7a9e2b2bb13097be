#include "nk3/roots.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace nk3 {

namespace {

void validate_component(const Component& c) {
    if (c.kind == 'A' && c.n >= 1) return;
    if (c.kind == 'D' && c.n >= 4) return;
    if (c.kind == 'E' && c.n >= 6 && c.n <= 8) return;
    throw IllegalComponent(std::string(1, c.kind) + std::to_string(c.n));
}

} // namespace

DynkinType::DynkinType(std::vector<Component> comps) : comps_(std::move(comps)) {
    int r = 0;
    for (const auto& c : comps_) {
        validate_component(c);
        r += c.n;
    }
    if (r > kMaxDynkinRank) throw RankTooLarge(std::to_string(r));
    std::sort(comps_.begin(), comps_.end());
}

int DynkinType::rank() const {
    int r = 0;
    for (const auto& c : comps_) r += c.n;
    return r;
}

Int DynkinType::disc() const {
    Int d = 1;
    for (const auto& c : comps_) {
        if (c.kind == 'A') d *= c.n + 1;
        else if (c.kind == 'D') d *= 4;
        else d *= (c.n == 6 ? 3 : c.n == 7 ? 2 : 1);
    }
    return d;
}

DynkinType parse_dynkin(const std::string& s) {
    std::vector<Component> comps;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip_ws();
    bool first = true;
    while (i < s.size()) {
        if (!first) {
            if (s[i] != '+') throw ParseError("expected '+' in '" + s + "'");
            ++i;
            skip_ws();
        }
        first = false;
        long long mult = 1;
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            mult = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                mult = mult * 10 + (s[i++] - '0');
            if (mult == 0) throw ParseError("zero multiplicity");
        }
        if (i >= s.size() || (s[i] != 'A' && s[i] != 'D' && s[i] != 'E'))
            throw ParseError("expected component letter in '" + s + "'");
        char kind = s[i++];
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("expected component rank in '" + s + "'");
        long long n = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            n = n * 10 + (s[i++] - '0');
        for (long long k = 0; k < mult; ++k) comps.push_back({kind, int(n)});
        skip_ws();
    }
    return DynkinType(std::move(comps));
}

std::string format_dynkin(const DynkinType& r) {
    std::string out;
    const auto& cs = r.components();
    for (std::size_t i = 0; i < cs.size();) {
        std::size_t j = i;
        while (j < cs.size() && cs[j] == cs[i]) ++j;
        if (!out.empty()) out += "+";
        if (j - i > 1) out += std::to_string(j - i);
        out += cs[i].kind;
        out += std::to_string(cs[i].n);
        i = j;
    }
    return out;
}

ComponentGlueData component_glue_data(const Component& c) {
    validate_component(c);
    ComponentGlueData d;
    if (c.kind == 'A') {
        long long n = c.n, g = n + 1;
        d.group_order = g;
        d.q.resize(g);
        d.min_norm.resize(g);
        for (long long j = 0; j < g; ++j) {
            d.q[j] = mod2z(Rat(-j * j * n, g));
            d.min_norm[j] = Rat(j * (g - j), g);
        }
    } else if (c.kind == 'D') {
        long long n = c.n;
        d.group_order = 4;
        d.q.resize(4);
        d.min_norm.resize(4);
        if (n % 2 == 0) {
            d.klein = true; // classes 0, v=1, s=2, s'=3
            d.q = {Rat(0), mod2z(Rat(-1)), mod2z(Rat(-n, 4)), mod2z(Rat(-n, 4))};
            d.min_norm = {Rat(0), Rat(1), Rat(n, 4), Rat(n, 4)};
        } else {
            // Z/4 generated by s; 2s = v, 3s = s'
            d.q = {Rat(0), mod2z(Rat(-n, 4)), mod2z(Rat(-1)), mod2z(Rat(-n, 4))};
            d.min_norm = {Rat(0), Rat(n, 4), Rat(1), Rat(n, 4)};
        }
    } else if (c.n == 6) {
        d.group_order = 3;
        d.q = {Rat(0), mod2z(Rat(-4, 3)), mod2z(Rat(-4, 3))};
        d.min_norm = {Rat(0), Rat(4, 3), Rat(4, 3)};
    } else if (c.n == 7) {
        d.group_order = 2;
        d.q = {Rat(0), mod2z(Rat(-3, 2))};
        d.min_norm = {Rat(0), Rat(3, 2)};
    } else {
        d.group_order = 1;
        d.q = {Rat(0)};
        d.min_norm = {Rat(0)};
    }
    return d;
}

SigmaLayout sigma_layout(const DynkinType& r) {
    SigmaLayout lay;
    lay.type = r;

    std::vector<long long> orders;
    std::vector<Rat> q;
    std::vector<std::vector<Rat>> b;
    auto push_gen = [&](const Rat& qv) {
        orders.push_back(0); // fixed by caller
        q.push_back(qv);
        for (auto& row : b) row.push_back(Rat(0));
        b.emplace_back(orders.size(), Rat(0));
        b.back()[orders.size() - 1] = mod1z(qv);
        return orders.size() - 1;
    };

    for (const auto& c : r.components()) {
        ComponentLayout cl;
        cl.comp = c;
        cl.data = component_glue_data(c);
        if (cl.data.group_order > 1 && !cl.data.klein) {
            // split the cyclic glue group into prime-power generators
            long long g = cl.data.group_order;
            long long rest = g;
            Rat q_gamma = cl.data.klein ? Rat(0) : cl.data.q[1];
            for (long long p = 2; rest > 1; ++p) {
                if (p * p > rest) p = rest;
                if (rest % p) continue;
                long long pe = 1;
                while (rest % p == 0) { rest /= p; pe *= p; }
                long long cls = (g / pe) % g;
                std::size_t gi = push_gen(cl.data.q[cls]);
                orders[gi] = pe;
                cl.gen_idx.push_back(gi);
                cl.gen_class.push_back(cls);
                cl.gen_order.push_back(pe);
            }
            // bilinear values inside the component: b(j*gamma, k*gamma) = j*k*q(gamma) mod 1
            for (std::size_t a1 = 0; a1 < cl.gen_idx.size(); ++a1)
                for (std::size_t a2 = a1 + 1; a2 < cl.gen_idx.size(); ++a2) {
                    Rat v = mod1z(Rat(cl.gen_class[a1]) * Rat(cl.gen_class[a2]) * q_gamma);
                    b[cl.gen_idx[a1]][cl.gen_idx[a2]] = v;
                    b[cl.gen_idx[a2]][cl.gen_idx[a1]] = v;
                }
        } else if (cl.data.klein) {
            std::size_t gv = push_gen(cl.data.q[1]);
            orders[gv] = 2;
            std::size_t gs = push_gen(cl.data.q[2]);
            orders[gs] = 2;
            b[gv][gs] = b[gs][gv] = Rat(1, 2);
            cl.gen_idx = {gv, gs};
            cl.gen_class = {1, 2};
            cl.gen_order = {2, 2};
        }
        lay.comps.push_back(std::move(cl));
    }
    lay.form = make_fqf(orders, q, b);
    return lay;
}

long long SigmaLayout::component_class(const FqfElement& x, std::size_t ci) const {
    const ComponentLayout& cl = comps[ci];
    if (cl.data.group_order == 1) return 0;
    if (cl.data.klein) {
        long long j = 0;
        if (x.coeffs[cl.gen_idx[0]] % 2) j ^= 1;
        if (x.coeffs[cl.gen_idx[1]] % 2) j ^= 2;
        return j;
    }
    long long g = cl.data.group_order, j = 0;
    for (std::size_t a = 0; a < cl.gen_idx.size(); ++a)
        j = (j + x.coeffs[cl.gen_idx[a]] % g * (cl.gen_class[a] % g)) % g;
    return j;
}

FiniteQuadraticForm sigma_fqf(const DynkinType& r) { return sigma_layout(r).form; }

namespace {

// Explicit ADE diagram: adjacency lists.  D_n: vertices 0,1 are the legs both
// attached to 2; tail 2-3-...-(n-1).  E_n: 0 is the branch vertex with arms
// {1}, {2,3} and {4,...,n-1}.
std::vector<std::vector<int>> component_diagram(const Component& c) {
    std::vector<std::vector<int>> adj(c.n);
    auto link = [&](int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    if (c.kind == 'A') {
        for (int i = 0; i + 1 < c.n; ++i) link(i, i + 1);
    } else if (c.kind == 'D') {
        link(0, 2);
        link(1, 2);
        for (int i = 2; i + 1 < c.n; ++i) link(i, i + 1);
    } else {
        link(0, 1);
        link(0, 2);
        link(2, 3);
        link(0, 4);
        for (int i = 4; i + 1 < c.n; ++i) link(i, i + 1);
    }
    return adj;
}

// Classify the connected components of the induced subgraph on `alive`.
std::vector<Component> classify_induced(const std::vector<std::vector<int>>& adj,
                                        const std::vector<bool>& alive) {
    const int n = int(adj.size());
    std::vector<bool> seen(n, false);
    std::vector<Component> out;
    for (int s = 0; s < n; ++s) {
        if (!alive[s] || seen[s]) continue;
        std::vector<int> comp, stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : adj[v])
                if (alive[w] && !seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        // degree profile inside the component
        int branch = -1;
        for (int v : comp) {
            int deg = 0;
            for (int w : adj[v])
                if (alive[w]) ++deg;
            if (deg >= 3) branch = v;
        }
        if (branch < 0) {
            out.push_back({'A', int(comp.size())});
            continue;
        }
        // arm lengths from the unique branch vertex
        std::vector<int> arms;
        for (int w0 : adj[branch]) {
            if (!alive[w0]) continue;
            int len = 1, prev = branch, v = w0;
            for (;;) {
                int next = -1;
                for (int w : adj[v])
                    if (alive[w] && w != prev) next = w;
                if (next < 0) break;
                prev = v;
                v = next;
                ++len;
            }
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        if (arms.size() == 3 && arms[0] == 1 && arms[1] == 1)
            out.push_back({'D', arms[2] + 3});
        else if (arms.size() == 3 && arms[0] == 1 && arms[1] == 2)
            out.push_back({'E', arms[2] + 4});
        else
            throw Error("classify_induced: not an ADE diagram (internal)");
    }
    return out;
}

} // namespace

GramLattice gram_of_sigma(const DynkinType& r) {
    int n = r.rank();
    IMat g(n, IVec(n, 0));
    int off = 0;
    for (const auto& c : r.components()) {
        auto adj = component_diagram(c);
        for (int i = 0; i < c.n; ++i) {
            g[off + i][off + i] = -2;
            for (int j : adj[i]) g[off + i][off + j] = 1;
        }
        off += c.n;
    }
    return GramLattice(std::move(g));
}

Rat coset_min_norm(const DynkinType& r, const FqfElement& x) {
    SigmaLayout lay = sigma_layout(r);
    FqfElement e = lay.form.reduce(x);
    Rat acc(0);
    for (std::size_t ci = 0; ci < lay.comps.size(); ++ci)
        acc += lay.comps[ci].data.min_norm[lay.component_class(e, ci)];
    return acc;
}

bool is_root_free(const DynkinType& r, const Subgroup& h) {
    SigmaLayout lay = sigma_layout(r);
    if (!is_isotropic(lay.form, h)) throw NotIsotropic();
    for (const auto& x : h.elements) {
        if (x.is_zero()) continue;
        Rat acc(0);
        for (std::size_t ci = 0; ci < lay.comps.size(); ++ci)
            acc += lay.comps[ci].data.min_norm[lay.component_class(x, ci)];
        if (acc == 2) return false;
    }
    return true;
}

std::set<DynkinType> children(const DynkinType& r) {
    std::set<DynkinType> out;
    const auto& cs = r.components();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i > 0 && cs[i] == cs[i - 1]) continue; // identical copies give identical children
        auto adj = component_diagram(cs[i]);
        for (int v = 0; v < cs[i].n; ++v) {
            std::vector<bool> alive(cs[i].n, true);
            alive[v] = false;
            std::vector<Component> comps = classify_induced(adj, alive);
            for (std::size_t j = 0; j < cs.size(); ++j)
                if (j != i) comps.push_back(cs[j]);
            out.insert(DynkinType(std::move(comps)));
        }
    }
    return out;
}

namespace {

// Can A-type pieces of the given sizes be packed disjointly and
// non-adjacently into a path of `len` vertices?
bool packs_into_path(const std::vector<int>& sizes, long long len) {
    if (sizes.empty()) return true;
    long long need = long long(sizes.size()) - 1;
    for (int s : sizes) need += s;
    return need <= len;
}

bool fits_in_A(const std::vector<Component>& pieces, int n) {
    std::vector<int> sizes;
    for (const auto& p : pieces) {
        if (p.kind != 'A') return false;
        sizes.push_back(p.n);
    }
    return packs_into_path(sizes, n);
}

bool fits_in_E(const std::vector<Component>& pieces, int n) {
    // achievable sub-multisets, brute-forced once per host
    static std::map<int, std::set<std::vector<Component>>> cache = [] {
        std::map<int, std::set<std::vector<Component>>> m;
        for (int n2 : {6, 7, 8}) {
            Component host{'E', n2};
            auto adj = component_diagram(host);
            for (int mask = 0; mask < (1 << n2); ++mask) {
                std::vector<bool> alive(n2);
                for (int v = 0; v < n2; ++v) alive[v] = (mask >> v) & 1;
                std::vector<Component> cs = classify_induced(adj, alive);
                std::sort(cs.begin(), cs.end());
                m[n2].insert(cs);
            }
        }
        return m;
    }();
    std::vector<Component> sorted = pieces;
    std::sort(sorted.begin(), sorted.end());
    return cache.at(n).count(sorted) > 0;
}

bool fits_in_D(const std::vector<Component>& pieces, int m) {
    std::vector<int> a_sizes;
    std::vector<int> d_sizes;
    for (const auto& p : pieces) {
        if (p.kind == 'E') return false;
        if (p.kind == 'D') d_sizes.push_back(p.n);
        else a_sizes.push_back(p.n);
    }
    if (d_sizes.size() > 1) return false;
    long long tail = m - 3; // path beyond the branch vertex

    if (d_sizes.size() == 1) {
        // D_j sits at the fork; the rest packs into the remaining tail
        int j = d_sizes[0];
        if (j > m) return false;
        return packs_into_path(a_sizes, m - j - 1);
    }

    std::sort(a_sizes.rbegin(), a_sizes.rend());
    auto count_ones = [&] {
        return int(std::count(a_sizes.begin(), a_sizes.end(), 1));
    };

    // branch vertex deleted: legs can host up to two A1 pieces
    for (int legs = 0; legs <= std::min(2, count_ones()); ++legs) {
        std::vector<int> rest = a_sizes;
        for (int t = 0; t < legs; ++t) rest.erase(std::find(rest.begin(), rest.end(), 1));
        if (packs_into_path(rest, tail)) return true;
    }
    // branch vertex used by a piece A_k
    for (std::size_t pi = 0; pi < a_sizes.size(); ++pi) {
        if (pi > 0 && a_sizes[pi] == a_sizes[pi - 1]) continue;
        int k = a_sizes[pi];
        std::vector<int> rest = a_sizes;
        rest.erase(rest.begin() + pi);
        // leg-branch-tail placement (k >= 2): other leg blocked
        if (k >= 2 && k - 2 <= tail && packs_into_path(rest, m - k - 2)) return true;
        // leg-branch-leg (k = 3)
        if (k == 3 && packs_into_path(rest, m - 4)) return true;
        // branch-tail placement: both legs blocked
        if (k - 1 <= tail && packs_into_path(rest, m - k - 3)) return true;
    }
    return false;
}

bool fits_in(const std::vector<Component>& pieces, const Component& host) {
    if (pieces.empty()) return true;
    int total = 0;
    for (const auto& p : pieces) total += p.n;
    if (total > host.n) return false;
    if (host.kind == 'A') return fits_in_A(pieces, host.n);
    if (host.kind == 'D') return fits_in_D(pieces, host.n);
    return fits_in_E(pieces, host.n);
}

} // namespace

bool s_contains(const DynkinType& r, const DynkinType& sub) {
    if (sub.rank() > r.rank()) return false;
    if (sub.empty()) return true;
    const auto& hosts = r.components();
    std::vector<Component> pieces = sub.components(); // canonical: big/constrained first
    std::vector<std::vector<Component>> assigned(hosts.size());

    auto dfs = [&](auto&& self, std::size_t pi) -> bool {
        if (pi == pieces.size()) return true;
        for (std::size_t h = 0; h < hosts.size(); ++h) {
            // skip hosts identical in type and current content to an earlier one
            bool dup = false;
            for (std::size_t h2 = 0; h2 < h && !dup; ++h2)
                dup = hosts[h2] == hosts[h] && assigned[h2] == assigned[h];
            if (dup) continue;
            assigned[h].push_back(pieces[pi]);
            if (fits_in(assigned[h], hosts[h]) && self(self, pi + 1)) return true;
            assigned[h].pop_back();
        }
        return false;
    };
    return dfs(dfs, 0);
}

std::vector<DynkinType> enumerate_dynkin_types(int max_rank) {
    std::vector<Component> universe;
    universe.push_back({'E', 8});
    universe.push_back({'E', 7});
    universe.push_back({'E', 6});
    for (int n = std::min(max_rank, kMaxDynkinRank); n >= 4; --n) universe.push_back({'D', n});
    for (int n = std::min(max_rank, kMaxDynkinRank); n >= 1; --n) universe.push_back({'A', n});

    std::vector<DynkinType> out;
    std::vector<Component> cur;
    auto rec = [&](auto&& self, std::size_t from, int remaining) -> void {
        for (std::size_t i = from; i < universe.size(); ++i) {
            if (universe[i].n > remaining) continue;
            cur.push_back(universe[i]);
            out.push_back(DynkinType(cur));
            self(self, i, remaining - universe[i].n);
            cur.pop_back();
        }
    };
    rec(rec, 0, max_rank);
    std::stable_sort(out.begin(), out.end(), [](const DynkinType& a, const DynkinType& b) {
        if (a.rank() != b.rank()) return a.rank() < b.rank();
        return format_dynkin(a) < format_dynkin(b);
    });
    return out;
}

} // namespace nk3
