#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nk3/fqf.hpp"
#include "nk3/rat.hpp"

namespace nk3 {

// Square class in Z_l^x / (Z_l^x)^2.  For odd l the class is +1 (square) or
// -1 (the chosen non-square v_l, kept symbolic); for l = 2 it is a unit
// residue mod 8.
struct SquareClass {
    long long l = 0;
    int cls = 1;

    bool operator==(const SquareClass&) const = default;
    auto operator<=>(const SquareClass&) const = default;
};

SquareClass square_class_of(long long l, const Int& u);
SquareClass operator*(const SquareClass& a, const SquareClass& b);

// tau = [l-excess mod 8, reduced discriminant class]
struct LocalInvariant {
    int sigma = 0; // mod 8
    SquareClass rho;

    bool operator==(const LocalInvariant&) const = default;
    auto operator<=>(const LocalInvariant&) const = default;
};

using LocalInvariantSet = std::vector<LocalInvariant>; // sorted, deduplicated

LocalInvariant star(const LocalInvariant& a, const LocalInvariant& b);
LocalInvariantSet star(const LocalInvariantSet& a, const LocalInvariantSet& b);

std::string to_string(const LocalInvariant& t);

// Tables (II), (III), (IV): possible [l-excess, reddisc] of even Z_l-lattices
// of rank n realizing the given discriminant form.
LocalInvariantSet local_set_unimodular(long long l, long long n);
LocalInvariantSet local_set_cyclic(long long l, int nu, long long a);
LocalInvariantSet local_set_even_type(int nu, long long u, long long v, long long w);

// The image set L^(l)(n, D, q) for an l-homogeneous non-degenerate form.
LocalInvariantSet local_invariant_set(long long l, long long n, const FiniteQuadraticForm& f_l);

// Jordan decomposition of a Z_l-lattice given by an integer Gram matrix;
// a test oracle for the closed-form tables.
struct JordanBlock {
    int nu = 0;
    // odd l
    int rank = 0;
    int disc_cls = 1; // +-1
    // l = 2
    std::vector<int> units; // diagonal units mod 8
    int n_u = 0, n_v = 0;   // copies of U and V
};

struct JordanDecomposition {
    long long l = 0;
    std::vector<JordanBlock> blocks; // ascending nu, one block per nu
};

JordanDecomposition jordan_decompose(long long l, const GramLattice& lat);
LocalInvariant tau_of_jordan(const JordanDecomposition& j);

// Theorem giving non-emptiness of L^Z((s_plus, s_minus), D, q): returns the
// satisfying choice of [sigma_l, rho_l] per prime, or nullopt.
struct EvenLatticeWitness {
    std::vector<std::pair<long long, LocalInvariant>> choices;
};

std::optional<EvenLatticeWitness> exists_even_lattice(int s_plus, int s_minus,
                                                      const FiniteQuadraticForm& f);

} // namespace nk3
