#include "nk3/fqf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

namespace nk3 {

namespace {

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

// Signature of a symmetric rational matrix by symmetric elimination.
// Returns (s_plus, s_minus, nullity).
struct Sig {
    int plus = 0, minus = 0, null = 0;
};

Sig signature_of(RMat a) {
    const std::size_t n = a.size();
    std::vector<bool> done(n, false);
    Sig sig;
    for (;;) {
        std::size_t piv = n;
        for (std::size_t k = 0; k < n; ++k)
            if (!done[k] && a[k][k] != 0) { piv = k; break; }
        if (piv == n) {
            // no diagonal pivot: look for an off-diagonal entry
            std::size_t oi = n, oj = n;
            for (std::size_t i = 0; i < n && oi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!done[i] && !done[j] && a[i][j] != 0) { oi = i; oj = j; break; }
            if (oi == n) break;
            // row/col j folded into i makes a[i][i] = 2 a[i][j] != 0
            for (std::size_t k = 0; k < n; ++k) a[oi][k] += a[oj][k];
            for (std::size_t k = 0; k < n; ++k) a[k][oi] += a[k][oj];
            continue;
        }
        if (a[piv][piv] > 0) ++sig.plus; else ++sig.minus;
        done[piv] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a[i][piv] == 0) continue;
            Rat f = a[i][piv] / a[piv][piv];
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[piv][j];
            for (std::size_t j = 0; j < n; ++j) a[j][i] -= f * a[j][piv];
        }
    }
    sig.null = int(n) - sig.plus - sig.minus;
    return sig;
}

} // namespace

GramLattice::GramLattice(IMat gram) : gram_(std::move(gram)) {
    const std::size_t n = gram_.size();
    for (const auto& row : gram_)
        if (row.size() != n) throw DimensionMismatch("gram matrix not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (gram_[i][j] != gram_[j][i]) throw DimensionMismatch("gram matrix not symmetric");
    det_ = integer_determinant(gram_);
    if (n && det_ == 0) throw SingularGram();
    RMat a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(gram_[i][j]);
    Sig s = signature_of(std::move(a));
    s_plus_ = s.plus;
    s_minus_ = s.minus;
}

bool GramLattice::is_even() const {
    for (std::size_t i = 0; i < gram_.size(); ++i)
        if (gram_[i][i] % 2 != 0) return false;
    return true;
}

Int FiniteQuadraticForm::group_order() const {
    Int n = 1;
    for (long long m : orders_) n *= m;
    return n;
}

int FiniteQuadraticForm::leng() const {
    std::map<long long, int> per_prime;
    for (long long m : orders_) ++per_prime[as_prime_power(m).l];
    int best = 0;
    for (auto& [l, c] : per_prime) best = std::max(best, c);
    return best;
}

std::vector<long long> FiniteQuadraticForm::primes() const {
    std::set<long long> ps;
    for (long long m : orders_) ps.insert(as_prime_power(m).l);
    return {ps.begin(), ps.end()};
}

FqfElement FiniteQuadraticForm::reduce(FqfElement x) const {
    if (x.coeffs.size() != orders_.size()) throw DimensionMismatch("element length");
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        x.coeffs[i] %= orders_[i];
        if (x.coeffs[i] < 0) x.coeffs[i] += orders_[i];
    }
    return x;
}

FqfElement FiniteQuadraticForm::add(const FqfElement& x, const FqfElement& y) const {
    if (x.coeffs.size() != y.coeffs.size()) throw DimensionMismatch("element length");
    FqfElement z = x;
    for (std::size_t i = 0; i < z.coeffs.size(); ++i) z.coeffs[i] += y.coeffs[i];
    return reduce(std::move(z));
}

FqfElement FiniteQuadraticForm::scale(long long n, const FqfElement& x) const {
    FqfElement z = reduce(x);
    for (std::size_t i = 0; i < z.coeffs.size(); ++i) {
        long long m = orders_[i];
        z.coeffs[i] = (__int128(z.coeffs[i]) * (n % m) % m + m) % m;
    }
    return z;
}

long long FiniteQuadraticForm::element_order(const FqfElement& x0) const {
    FqfElement x = reduce(x0);
    long long ord = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        long long o = orders_[i] / gcd_ll(orders_[i], x.coeffs[i]);
        ord = std::lcm(ord, o);
    }
    return ord;
}

FqfElement FiniteQuadraticForm::gen(std::size_t i) const {
    FqfElement e = zero();
    e.coeffs[i] = 1;
    return e;
}

namespace {

// Generators of {x in D : b(x, h_j) = 0 for all j}, as coefficient vectors.
// The h_j are columns of targets.  Returns a full-rank r x r integer matrix
// whose columns, reduced mod orders, generate the complement.
IMat complement_solution_basis(const FiniteQuadraticForm& f,
                               const std::vector<FqfElement>& targets) {
    const std::size_t r = f.num_gens();
    const std::size_t s = targets.size();
    if (s == 0) {
        IMat id(r, IVec(r, 0));
        for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
        return id;
    }
    Int big_l = 1;
    for (std::size_t i = 0; i < r; ++i) big_l = lcm(big_l, Int(f.order(i))); // ADL: boost lcm
    // rows: one congruence per target; cols: r coefficients then s slack
    IMat m(s, IVec(r + s, 0));
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t i = 0; i < r; ++i) {
            Rat bij = eval_b(f, f.gen(i), targets[j]).v * Rat(big_l);
            m[j][i] = num(bij); // integral: b has denominator dividing big_l
        }
        m[j][r + j] = big_l;
    }
    std::vector<IVec> ker = integer_kernel(m);
    IMat basis(r, IVec(ker.size(), 0));
    for (std::size_t k = 0; k < ker.size(); ++k)
        for (std::size_t i = 0; i < r; ++i) basis[i][k] = ker[k][i];
    return basis;
}

FqfElement element_from_column(const FiniteQuadraticForm& f, const IMat& cols, std::size_t j) {
    FqfElement e = f.zero();
    for (std::size_t i = 0; i < f.num_gens(); ++i) {
        Int c = mod_pos(cols[i][j], Int(f.order(i)));
        e.coeffs[i] = c.convert_to<long long>();
    }
    return e;
}

void check_non_degenerate(const FiniteQuadraticForm& f) {
    if (f.is_trivial()) return;
    std::vector<FqfElement> gens;
    for (std::size_t i = 0; i < f.num_gens(); ++i) gens.push_back(f.gen(i));
    IMat basis = complement_solution_basis(f, gens);
    // the solution lattice always contains diag(orders); equality <=> radical trivial
    Int det = integer_determinant(basis);
    if (abs(det) != f.group_order()) throw DegenerateForm();
}

} // namespace

FiniteQuadraticForm make_fqf(const std::vector<long long>& gen_orders,
                             const std::vector<Rat>& q_diag,
                             const std::vector<std::vector<Rat>>& b_matrix) {
    const std::size_t r = gen_orders.size();
    if (q_diag.size() != r || b_matrix.size() != r)
        throw DimensionMismatch("make_fqf: sizes");
    for (const auto& row : b_matrix)
        if (row.size() != r) throw DimensionMismatch("make_fqf: b matrix not square");

    FiniteQuadraticForm f;
    f.orders_ = gen_orders;
    f.q_.reserve(r);
    f.b_.assign(r, std::vector<BMod1Z>(r));
    for (std::size_t i = 0; i < r; ++i) {
        PrimePower pp = as_prime_power(gen_orders[i]);
        if (pp.l == 0) throw BadDenominator("generator order must be a prime power > 1");
        QMod2Z qi(q_diag[i]);
        // order compatibility: l odd: l^nu q in 2Z; l = 2: 2^nu q in Z (both mod 2Z)
        Rat scaled = qi.v * Rat(gen_orders[i]);
        if (pp.l == 2) {
            if (den(scaled) != 1) throw BadDenominator("q value incompatible with generator order");
        } else {
            if (den(scaled) != 1 || num(scaled) % 2 != 0)
                throw BadDenominator("q value incompatible with generator order");
        }
        f.q_.push_back(qi);
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            if (mod1z(b_matrix[i][j]) != mod1z(b_matrix[j][i]))
                throw InconsistentQB("b not symmetric");
            BMod1Z bij(b_matrix[i][j]);
            long long g = gcd_ll(gen_orders[i], gen_orders[j]);
            if (den(Rat(bij.v * g)) != 1)
                throw BadDenominator("b value incompatible with generator orders");
            f.b_[i][j] = bij;
        }
        if (BMod1Z(f.q_[i].v) != f.b_[i][i])
            throw InconsistentQB("b(g,g) != q(g) mod 1");
    }
    check_non_degenerate(f);
    return f;
}

QMod2Z eval_q(const FiniteQuadraticForm& f, const FqfElement& x0) {
    FqfElement x = f.reduce(x0);
    Rat acc(0);
    for (std::size_t i = 0; i < f.num_gens(); ++i) {
        if (!x.coeffs[i]) continue;
        acc += Rat(Int(x.coeffs[i]) * Int(x.coeffs[i])) * f.q_gen(i).v;
        for (std::size_t j = i + 1; j < f.num_gens(); ++j)
            if (x.coeffs[j])
                acc += Rat(2 * Int(x.coeffs[i]) * Int(x.coeffs[j])) * f.b_gen(i, j).v;
        acc = mod2z(acc);
    }
    return QMod2Z(acc);
}

BMod1Z eval_b(const FiniteQuadraticForm& f, const FqfElement& x0, const FqfElement& y0) {
    FqfElement x = f.reduce(x0), y = f.reduce(y0);
    Rat acc(0);
    for (std::size_t i = 0; i < f.num_gens(); ++i) {
        if (!x.coeffs[i]) continue;
        for (std::size_t j = 0; j < f.num_gens(); ++j)
            if (y.coeffs[j])
                acc += Rat(Int(x.coeffs[i]) * Int(y.coeffs[j])) * f.b_gen(i, j).v;
        acc = mod1z(acc);
    }
    return BMod1Z(acc);
}

FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& f1, const FiniteQuadraticForm& f2) {
    std::vector<long long> orders = f1.orders();
    orders.insert(orders.end(), f2.orders().begin(), f2.orders().end());
    const std::size_t r1 = f1.num_gens(), r = orders.size();
    std::vector<Rat> q(r);
    std::vector<std::vector<Rat>> b(r, std::vector<Rat>(r, Rat(0)));
    for (std::size_t i = 0; i < r; ++i)
        q[i] = i < r1 ? f1.q_gen(i).v : f2.q_gen(i - r1).v;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if (i < r1 && j < r1) b[i][j] = f1.b_gen(i, j).v;
            if (i >= r1 && j >= r1) b[i][j] = f2.b_gen(i - r1, j - r1).v;
        }
    return make_fqf(orders, q, b);
}

FiniteQuadraticForm negate(const FiniteQuadraticForm& f) {
    const std::size_t r = f.num_gens();
    std::vector<Rat> q(r);
    std::vector<std::vector<Rat>> b(r, std::vector<Rat>(r));
    for (std::size_t i = 0; i < r; ++i) {
        q[i] = mod2z(-f.q_gen(i).v);
        for (std::size_t j = 0; j < r; ++j) b[i][j] = mod1z(-f.b_gen(i, j).v);
    }
    return make_fqf(f.orders(), q, b);
}

FiniteQuadraticForm l_part(const FiniteQuadraticForm& f, long long l) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < f.num_gens(); ++i)
        if (as_prime_power(f.order(i)).l == l) idx.push_back(i);
    std::vector<long long> orders;
    std::vector<Rat> q;
    std::vector<std::vector<Rat>> b(idx.size(), std::vector<Rat>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a) {
        orders.push_back(f.order(idx[a]));
        q.push_back(f.q_gen(idx[a]).v);
        for (std::size_t c = 0; c < idx.size(); ++c) b[a][c] = f.b_gen(idx[a], idx[c]).v;
    }
    return make_fqf(orders, q, b);
}

Subgroup subgroup_span(const FiniteQuadraticForm& f, const std::vector<FqfElement>& generators,
                       std::size_t cap) {
    Subgroup h;
    std::set<FqfElement> span;
    span.insert(f.zero());
    for (const auto& g0 : generators) {
        FqfElement g = f.reduce(g0);
        h.gens.push_back(g);
        if (span.count(g)) continue;
        // <span, g> = union of the cosets k*g + span
        std::set<FqfElement> bigger;
        long long ord = f.element_order(g);
        for (long long k = 0; k < ord; ++k) {
            FqfElement kg = f.scale(k, g);
            for (const auto& y : span) {
                bigger.insert(f.add(kg, y));
                if (bigger.size() > cap) throw SubgroupTooLarge();
            }
        }
        span = std::move(bigger);
    }
    h.elements.assign(span.begin(), span.end());
    return h;
}

bool is_isotropic(const FiniteQuadraticForm& f, const Subgroup& h) {
    for (const auto& x : h.elements)
        if (eval_q(f, x).v != 0) return false;
    return true;
}

Subgroup orthogonal_complement(const FiniteQuadraticForm& f, const Subgroup& h, std::size_t cap) {
    IMat basis = complement_solution_basis(f, h.gens);
    std::vector<FqfElement> gens;
    for (std::size_t j = 0; j < (basis.empty() ? 0 : basis[0].size()); ++j) {
        FqfElement e = element_from_column(f, basis, j);
        if (!e.is_zero()) gens.push_back(e);
    }
    return subgroup_span(f, gens, cap);
}

namespace {

// Quotient of the l-part by the l-part of an isotropic subgroup.
// f_loc: the l-part as a standalone form; h_gens: generators inside it.
FiniteQuadraticForm quotient_l_part(const FiniteQuadraticForm& f_loc,
                                    std::vector<FqfElement> h_gens, long long l) {
    std::erase_if(h_gens, [](const FqfElement& e) { return e.is_zero(); });
    if (h_gens.empty() || f_loc.is_trivial()) return f_loc;

    const std::size_t r = f_loc.num_gens();
    IMat perp = complement_solution_basis(f_loc, h_gens); // r x t columns
    const std::size_t t = perp[0].size();

    // relation lattice of h_perp / h over the t complement generators
    const std::size_t s = h_gens.size();
    IMat m(r, IVec(t + s + r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < t; ++j) m[i][j] = perp[i][j];
        for (std::size_t j = 0; j < s; ++j) m[i][t + j] = -Int(h_gens[j].coeffs[i]);
        m[i][t + s + i] = -Int(f_loc.order(i));
    }
    std::vector<IVec> ker = integer_kernel(m);
    IMat rel(t, IVec(ker.size(), 0));
    for (std::size_t k = 0; k < ker.size(); ++k)
        for (std::size_t j = 0; j < t; ++j) rel[j][k] = ker[k][j];

    Smith sm = smith_normal_form(rel);
    // new generator i = sum_j (U^-1)[j][i] * perp_j, of order d[i][i]
    RMat ur(t, std::vector<Rat>(t));
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) ur[i][j] = Rat(sm.u[i][j]);
    RMat uinv = rational_inverse(ur);

    std::vector<long long> orders;
    std::vector<FqfElement> reps;
    Int q_order = 1;
    for (std::size_t i = 0; i < t; ++i) {
        Int d = sm.d[i][i];
        if (d == 0) throw Error("quotient_form: infinite quotient (internal)");
        if (d == 1) continue;
        PrimePower pp = as_prime_power(d.convert_to<long long>());
        if (pp.l != l) throw Error("quotient_form: non-l invariant factor (internal)");
        FqfElement rep = f_loc.zero();
        for (std::size_t row = 0; row < r; ++row) {
            Int c = 0;
            for (std::size_t j = 0; j < t; ++j) c += num(uinv[j][i]) * perp[row][j];
            rep.coeffs[row] = mod_pos(c, Int(f_loc.order(row))).convert_to<long long>();
        }
        orders.push_back(d.convert_to<long long>());
        reps.push_back(rep);
        q_order *= d;
    }

    Int h_order = 1;
    {
        Subgroup h = subgroup_span(f_loc, h_gens);
        h_order = Int(h.elements.size());
    }
    if (q_order * h_order * h_order != f_loc.group_order())
        throw Error("quotient_form: index mismatch (internal)");

    std::vector<Rat> q(orders.size());
    std::vector<std::vector<Rat>> b(orders.size(), std::vector<Rat>(orders.size()));
    for (std::size_t i = 0; i < orders.size(); ++i) {
        q[i] = eval_q(f_loc, reps[i]).v;
        for (std::size_t j = 0; j < orders.size(); ++j)
            b[i][j] = eval_b(f_loc, reps[i], reps[j]).v;
    }
    return make_fqf(orders, q, b);
}

} // namespace

FiniteQuadraticForm quotient_form(const FiniteQuadraticForm& f, const Subgroup& h) {
    if (!is_isotropic(f, h)) throw NotIsotropic();
    FiniteQuadraticForm result;
    for (long long l : f.primes()) {
        // indices of the l-part, and projections of the glue generators
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < f.num_gens(); ++i)
            if (as_prime_power(f.order(i)).l == l) idx.push_back(i);
        FiniteQuadraticForm f_loc = l_part(f, l);
        std::vector<FqfElement> h_loc;
        for (const auto& g : h.gens) {
            FqfElement e = f_loc.zero();
            for (std::size_t a = 0; a < idx.size(); ++a) e.coeffs[a] = g.coeffs[idx[a]];
            h_loc.push_back(f_loc.reduce(e));
        }
        result = direct_sum(result, quotient_l_part(f_loc, std::move(h_loc), l));
    }
    return result;
}

namespace {

int order_of_rat_mod1(const Rat& r) {
    Rat m = mod1z(r);
    return den(m).convert_to<int>(); // only called on small denominators
}

} // namespace

std::vector<FqfPiece> decompose_cyclic_even(const FiniteQuadraticForm& f) {
    std::vector<long long> ps = f.primes();
    if (ps.size() > 1) throw MixedPrimes();
    std::vector<FqfPiece> pieces;
    if (f.is_trivial()) return pieces;
    const long long l = ps[0];

    std::vector<FqfElement> work;
    for (std::size_t i = 0; i < f.num_gens(); ++i) work.push_back(f.gen(i));

    Int remaining = f.group_order();
    while (!work.empty()) {
        // maximal element order among current generators
        long long lnu1 = 1;
        for (const auto& x : work) lnu1 = std::max(lnu1, f.element_order(x));
        int nu1 = as_prime_power(lnu1).e;

        auto b_order = [&](const FqfElement& x, const FqfElement& y) {
            return Int(order_of_rat_mod1(eval_b(f, x, y).v));
        };

        std::size_t diag = work.size();
        for (std::size_t i = 0; i < work.size(); ++i)
            if (b_order(work[i], work[i]) == lnu1) { diag = i; break; }

        if (diag == work.size() && l != 2) {
            // some off-diagonal pair attains the maximal order; fold it onto a diagonal
            bool found = false;
            for (std::size_t i = 0; i < work.size() && !found; ++i)
                for (std::size_t j = i + 1; j < work.size() && !found; ++j)
                    if (b_order(work[i], work[j]) == lnu1) {
                        work[i] = f.add(work[i], work[j]);
                        found = true;
                    }
            if (!found) throw DegenerateForm("decompose: no element of maximal order");
            continue;
        }

        if (diag != work.size()) {
            // split off the cyclic piece <gamma>
            FqfElement gamma = work[diag];
            Rat qg = eval_q(f, gamma).v;
            Rat bg = mod1z(eval_b(f, gamma, gamma).v);
            long long u_num = (num(bg * lnu1)).convert_to<long long>(); // unit mod l^nu1
            long long u_inv = 0;
            for (long long c = 1; c < lnu1; ++c)
                if ((__int128(c) * u_num) % lnu1 == 1) { u_inv = c; break; }

            std::vector<FqfElement> next;
            for (std::size_t j = 0; j < work.size(); ++j) {
                if (j == diag) continue;
                Rat bj = eval_b(f, work[j], gamma).v;
                long long w_num = num(mod1z(bj) * lnu1).convert_to<long long>();
                long long c = (__int128(w_num) * u_inv) % lnu1;
                FqfElement proj = f.add(work[j], f.scale(-c, gamma));
                if (!proj.is_zero()) next.push_back(proj);
            }
            FqfPiece p;
            p.l = l;
            p.nu = nu1;
            p.q_value = qg;
            if (l == 2) {
                p.a = num(qg * lnu1).convert_to<long long>(); // odd, defined mod 2^(nu+1)
            } else {
                // numerator extraction per the (Q/2Z)_l = Q_l/Z_l identification
                long long c_num = num(qg * lnu1).convert_to<long long>(); // even
                p.a = ((c_num % lnu1) + lnu1) % lnu1;
            }
            pieces.push_back(p);
            work = std::move(next);
            remaining /= lnu1;
            continue;
        }

        // l = 2, no diagonal of maximal order: extract an even-type pair
        std::size_t pi = work.size(), pj = work.size();
        for (std::size_t i = 0; i < work.size() && pi == work.size(); ++i)
            for (std::size_t j = i + 1; j < work.size(); ++j)
                if (b_order(work[i], work[j]) == lnu1) { pi = i; pj = j; break; }
        if (pi == work.size()) throw DegenerateForm("decompose: no pair of maximal order");

        FqfElement g1 = work[pi], g2 = work[pj];
        long long mod = lnu1;
        Rat q1 = eval_q(f, g1).v, q2 = eval_q(f, g2).v;
        long long e1 = num(mod2z(q1) * mod).convert_to<long long>(); // even
        long long e2 = num(mod2z(q2) * mod).convert_to<long long>();
        long long v = num(mod1z(eval_b(f, g1, g2).v) * mod).convert_to<long long>(); // odd
        long long a11 = e1 % mod, a22 = e2 % mod;
        // invert [[a11, v], [v, a22]] mod 2^nu1 (det = a11 a22 - v^2 is odd)
        long long det = ((__int128(a11) * a22 - __int128(v) * v) % mod + mod) % mod;
        long long det_inv = 0;
        for (long long c = 1; c < 2 * mod; c += 2)
            if ((__int128(c) * det) % mod == 1 % mod) { det_inv = c % mod; break; }

        std::vector<FqfElement> next;
        for (std::size_t k = 0; k < work.size(); ++k) {
            if (k == pi || k == pj) continue;
            long long t1 = num(mod1z(eval_b(f, work[k], g1).v) * mod).convert_to<long long>();
            long long t2 = num(mod1z(eval_b(f, work[k], g2).v) * mod).convert_to<long long>();
            long long alpha = ((__int128(a22) * t1 - __int128(v) * t2) % mod * det_inv % mod + mod) % mod;
            long long beta = ((__int128(-v) * t1 + __int128(a11) * t2) % mod * det_inv % mod + mod) % mod;
            FqfElement proj = f.add(work[k], f.add(f.scale(-alpha, g1), f.scale(-beta, g2)));
            if (!proj.is_zero()) next.push_back(proj);
        }
        FqfPiece p;
        p.even_type = true;
        p.l = 2;
        p.nu = nu1;
        p.u = e1 / 2;
        p.v = v;
        p.w = e2 / 2;
        pieces.push_back(p);
        work = std::move(next);
        remaining /= Int(lnu1) * lnu1;
    }
    if (remaining != 1) throw Error("decompose_cyclic_even: order mismatch (internal)");
    return pieces;
}

FiniteQuadraticForm piece_form(const FqfPiece& p) {
    long long m = 1;
    for (int i = 0; i < p.nu; ++i) m *= p.l;
    if (!p.even_type) {
        Rat q = p.q_value;
        return make_fqf({m}, {q}, {{mod1z(q)}});
    }
    Rat q1(2 * p.u, m), q2(2 * p.w, m), bv(p.v, m);
    return make_fqf({m, m}, {mod2z(q1), mod2z(q2)},
                    {{mod1z(q1), mod1z(bv)}, {mod1z(bv), mod1z(q2)}});
}

FiniteQuadraticForm discriminant_form_of_gram(const GramLattice& lat) {
    if (!lat.is_even()) throw NotEven();
    const std::size_t n = lat.rank();
    if (n == 0) return {};

    RMat g(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i][j] = Rat(lat.gram()[i][j]);
    RMat ginv = rational_inverse(g);

    Smith sm = smith_normal_form(lat.gram());
    RMat ur(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ur[i][j] = Rat(sm.u[i][j]);
    RMat uinv = rational_inverse(ur);

    // dual-coordinate representatives of the cyclic generators, split into
    // prime-power components
    struct Gen {
        long long order;
        long long l;
        int nu;
        IVec coords;
    };
    std::vector<Gen> gens;
    for (std::size_t i = 0; i < n; ++i) {
        Int d = sm.d[i][i];
        if (d == 1) continue;
        IVec f(n);
        for (std::size_t row = 0; row < n; ++row) f[row] = num(uinv[row][i]);
        long long dl = d.convert_to<long long>();
        long long rest = dl;
        for (long long p = 2; rest > 1; ++p) {
            if (p * p > rest) p = rest;
            if (rest % p) continue;
            long long pe = 1;
            int e = 0;
            while (rest % p == 0) { rest /= p; pe *= p; ++e; }
            IVec coords(n);
            for (std::size_t row = 0; row < n; ++row) coords[row] = f[row] * (dl / pe);
            gens.push_back({pe, p, e, std::move(coords)});
        }
    }
    std::sort(gens.begin(), gens.end(), [](const Gen& a, const Gen& b) {
        return std::tie(a.l, a.nu) < std::tie(b.l, b.nu);
    });

    auto pairing = [&](const IVec& x, const IVec& y) {
        Rat acc(0);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (y[j] != 0) acc += Rat(x[i] * y[j]) * ginv[i][j];
        }
        return acc;
    };

    std::vector<long long> orders;
    std::vector<Rat> q(gens.size());
    std::vector<std::vector<Rat>> b(gens.size(), std::vector<Rat>(gens.size()));
    for (std::size_t i = 0; i < gens.size(); ++i) {
        orders.push_back(gens[i].order);
        q[i] = mod2z(pairing(gens[i].coords, gens[i].coords));
        for (std::size_t j = 0; j < gens.size(); ++j)
            b[i][j] = mod1z(pairing(gens[i].coords, gens[j].coords));
    }
    return make_fqf(orders, q, b);
}

std::string fqf_to_json(const FiniteQuadraticForm& f) {
    nlohmann::json j;
    j["orders"] = f.orders();
    std::vector<std::string> q;
    for (std::size_t i = 0; i < f.num_gens(); ++i) q.push_back(rat_to_string(f.q_gen(i).v));
    j["q"] = q;
    std::vector<std::vector<std::string>> b;
    for (std::size_t i = 0; i < f.num_gens(); ++i) {
        std::vector<std::string> row;
        for (std::size_t k = 0; k < f.num_gens(); ++k) row.push_back(rat_to_string(f.b_gen(i, k).v));
        b.push_back(std::move(row));
    }
    j["b"] = b;
    return j.dump();
}

FiniteQuadraticForm fqf_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<long long> orders = j.at("orders").get<std::vector<long long>>();
    std::vector<Rat> q;
    for (const auto& s : j.at("q")) q.push_back(rat_from_string(s.get<std::string>()));
    std::vector<std::vector<Rat>> b;
    for (const auto& row : j.at("b")) {
        std::vector<Rat> r;
        for (const auto& s : row) r.push_back(rat_from_string(s.get<std::string>()));
        b.push_back(std::move(r));
    }
    return make_fqf(orders, q, b);
}

} // namespace nk3
