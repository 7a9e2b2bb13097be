#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nk3/fqf.hpp"
#include "nk3/rat.hpp"

namespace nk3 {

constexpr int kMaxDynkinRank = 21;

struct Component {
    char kind = 'A'; // 'A', 'D' or 'E'
    int n = 1;       // rank

    bool operator==(const Component&) const = default;
    // canonical order: E before D before A, rank descending
    bool operator<(const Component& o) const {
        if (kind != o.kind) return kind > o.kind; // 'E' > 'D' > 'A' in ASCII
        return n > o.n;
    }
};

class DynkinType {
public:
    DynkinType() = default;
    explicit DynkinType(std::vector<Component> comps);

    const std::vector<Component>& components() const { return comps_; }
    int rank() const;
    Int disc() const;
    bool empty() const { return comps_.empty(); }

    bool operator==(const DynkinType&) const = default;
    bool operator<(const DynkinType& o) const { return comps_ < o.comps_; }

private:
    std::vector<Component> comps_; // canonically sorted, one entry per copy
};

DynkinType parse_dynkin(const std::string& s);
std::string format_dynkin(const DynkinType& r);

// Discriminant data of one negative-definite ADE component: the glue group
// with q-values and the positive-definite coset minimal norms.
struct ComponentGlueData {
    long long group_order = 1;
    bool klein = false;        // (Z/2)^2 for D_n with n even; otherwise cyclic
    std::vector<Rat> q;        // indexed by glue class
    std::vector<Rat> min_norm; // indexed by glue class
    long long add(long long x, long long y) const {
        return klein ? (x ^ y) : (x + y) % group_order;
    }
};

ComponentGlueData component_glue_data(const Component& c);

// Presentation bookkeeping tying sigma_fqf(R) generators to components.
struct ComponentLayout {
    Component comp;
    ComponentGlueData data;
    std::vector<std::size_t> gen_idx;  // generator positions in the form
    std::vector<long long> gen_class;  // glue class represented by each generator
    std::vector<long long> gen_order;
};

struct SigmaLayout {
    DynkinType type;
    FiniteQuadraticForm form;
    std::vector<ComponentLayout> comps;

    // glue class of the projection of x to component ci
    long long component_class(const FqfElement& x, std::size_t ci) const;
};

SigmaLayout sigma_layout(const DynkinType& r);
FiniteQuadraticForm sigma_fqf(const DynkinType& r);
GramLattice gram_of_sigma(const DynkinType& r);

Rat coset_min_norm(const DynkinType& r, const FqfElement& x);
bool is_root_free(const DynkinType& r, const Subgroup& h);

// Dynkin diagram poset
std::set<DynkinType> children(const DynkinType& r);
bool s_contains(const DynkinType& r, const DynkinType& sub);
std::vector<DynkinType> enumerate_dynkin_types(int max_rank); // rank-ascending

// Root-free even overlattices of Sigma^-_R, one representative per orbit of
// the implemented symmetry subgroup.
struct Overlattice {
    Subgroup glue;
    FiniteQuadraticForm disc_form;
    Int index;
};

struct EnumBudget {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::size_t max_subgroups = std::size_t(1) << 22;
};

// Visits overlattices in ascending glue index, trivial glue first; stops when
// the visitor returns false.  Throws BudgetExceeded.
void enumerate_overlattices(const DynkinType& r, const EnumBudget& budget,
                            const std::function<bool(const Overlattice&)>& visit);
std::vector<Overlattice> enumerate_overlattices(const DynkinType& r,
                                                const EnumBudget& budget = {});

} // namespace nk3
