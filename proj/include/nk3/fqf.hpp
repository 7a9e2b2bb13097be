#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nk3/intmat.hpp"
#include "nk3/rat.hpp"

namespace nk3 {

// Element of a finite quadratic form's group, as coefficients on the
// presentation generators, each reduced mod the generator order.
struct FqfElement {
    std::vector<long long> coeffs;

    FqfElement() = default;
    explicit FqfElement(std::vector<long long> c) : coeffs(std::move(c)) {}

    bool operator==(const FqfElement&) const = default;
    auto operator<=>(const FqfElement&) const = default;
    bool is_zero() const {
        for (long long c : coeffs)
            if (c) return false;
        return true;
    }
};

struct Subgroup {
    std::vector<FqfElement> gens;
    std::vector<FqfElement> elements; // sorted, contains 0
    std::size_t size() const { return elements.size(); }
    bool is_trivial() const { return elements.size() <= 1; }
};

// Even non-degenerate symmetric integer matrix with its signature.
class GramLattice {
public:
    explicit GramLattice(IMat gram);

    const IMat& gram() const { return gram_; }
    std::size_t rank() const { return gram_.size(); }
    int s_plus() const { return s_plus_; }
    int s_minus() const { return s_minus_; }
    Int det() const { return det_; }
    bool is_even() const;

private:
    IMat gram_;
    int s_plus_ = 0, s_minus_ = 0;
    Int det_;
};

// Finite quadratic form (D, q), presented on independent cyclic generators of
// prime-power order: D = (+) Z/l_i^{nu_i}, q as values on generators plus the
// bilinear values b on generator pairs.
class FiniteQuadraticForm {
public:
    FiniteQuadraticForm() = default; // the trivial form (0, 0)

    std::size_t num_gens() const { return orders_.size(); }
    long long order(std::size_t i) const { return orders_[i]; }
    const std::vector<long long>& orders() const { return orders_; }
    const QMod2Z& q_gen(std::size_t i) const { return q_[i]; }
    const BMod1Z& b_gen(std::size_t i, std::size_t j) const { return b_[i][j]; }

    Int group_order() const;
    bool is_trivial() const { return orders_.empty(); }
    int leng() const; // minimal number of generators: max over primes
    std::vector<long long> primes() const;

    FqfElement reduce(FqfElement x) const;
    FqfElement add(const FqfElement& x, const FqfElement& y) const;
    FqfElement scale(long long n, const FqfElement& x) const;
    long long element_order(const FqfElement& x) const;
    FqfElement zero() const { return FqfElement(std::vector<long long>(num_gens(), 0)); }
    FqfElement gen(std::size_t i) const;

    bool operator==(const FiniteQuadraticForm&) const = default;

private:
    friend FiniteQuadraticForm make_fqf(const std::vector<long long>&,
                                        const std::vector<Rat>&,
                                        const std::vector<std::vector<Rat>>&);
    std::vector<long long> orders_;
    std::vector<QMod2Z> q_;
    std::vector<std::vector<BMod1Z>> b_;
};

// Validating constructor.  Throws BadDenominator, InconsistentQB, DegenerateForm.
FiniteQuadraticForm make_fqf(const std::vector<long long>& gen_orders,
                             const std::vector<Rat>& q_diag,
                             const std::vector<std::vector<Rat>>& b_matrix);

QMod2Z eval_q(const FiniteQuadraticForm& f, const FqfElement& x);
BMod1Z eval_b(const FiniteQuadraticForm& f, const FqfElement& x, const FqfElement& y);

FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& f1, const FiniteQuadraticForm& f2);
FiniteQuadraticForm negate(const FiniteQuadraticForm& f);
FiniteQuadraticForm l_part(const FiniteQuadraticForm& f, long long l);

constexpr std::size_t kDefaultSubgroupCap = std::size_t(1) << 20;

Subgroup subgroup_span(const FiniteQuadraticForm& f, const std::vector<FqfElement>& generators,
                       std::size_t cap = kDefaultSubgroupCap);
bool is_isotropic(const FiniteQuadraticForm& f, const Subgroup& h);
Subgroup orthogonal_complement(const FiniteQuadraticForm& f, const Subgroup& h,
                               std::size_t cap = kDefaultSubgroupCap);

// Discriminant form of the even overlattice attached to the isotropic
// subgroup h: the induced form on h^perp / h.
FiniteQuadraticForm quotient_form(const FiniteQuadraticForm& f, const Subgroup& h);

// One summand of an orthogonal splitting of an l-homogeneous form into
// cyclic pieces and (l = 2 only) pieces of even type.
struct FqfPiece {
    bool even_type = false;
    long long l = 0;
    int nu = 0;
    // cyclic: q(gamma) = q_value; unit numerator a with q = a/l^nu
    Rat q_value;
    long long a = 0;
    // even type: q(g1) = 2u/2^nu, q(g2) = 2w/2^nu, b(g1,g2) = v/2^nu
    long long u = 0, v = 0, w = 0;
};

std::vector<FqfPiece> decompose_cyclic_even(const FiniteQuadraticForm& f);

// Piece -> form, and recomposition of a full piece list (test support).
FiniteQuadraticForm piece_form(const FqfPiece& p);

FiniteQuadraticForm discriminant_form_of_gram(const GramLattice& lat);

std::string fqf_to_json(const FiniteQuadraticForm& f);
FiniteQuadraticForm fqf_from_json(const std::string& text);

} // namespace nk3
