#ifndef WCROSS_FAMILY_ANALYSIS_HPP
#define WCROSS_FAMILY_ANALYSIS_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "wcross/exact_arith.hpp"
#include "wcross/gf_subspaces.hpp"
#include "wcross/set_family.hpp"

namespace wcross {

/// w(i,j) = |F_i ∩ G_j| for sets, dim(F_i ∩ G_j) for subspaces. Row-major.
struct IntersectionMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Int> w;

    Int at(std::size_t i, std::size_t j) const { return w[i * cols + j]; }
    Int& at(std::size_t i, std::size_t j) { return w[i * cols + j]; }
    IntersectionMatrix transposed() const;
};

/// Throws PreconditionError when the families live over different universes.
IntersectionMatrix intersection_matrix(const SetFamily& f, const SetFamily& g);
IntersectionMatrix intersection_matrix(const SubspaceFamily& f, const SubspaceFamily& g);

/// Row and column index sets, each sorted ascending.
struct TupleWitness {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;

    auto operator<=>(const TupleWitness&) const = default;
};

struct TupleMinimum {
    Int min_sum = 0;
    TupleWitness witness;
};

/// Minimum of Σ_{i∈S, j∈T} w(i,j) over l-subsets S of rows and T of columns.
/// For each l-subset of the smaller side the best partner set is the l
/// smallest restricted line sums. Ties go to the lexicographically smallest
/// (S, T). Throws PreconditionError if l < 1 or l exceeds rows or cols.
TupleMinimum min_tuple_sum(const IntersectionMatrix& w, Int l);

struct ConditionReport {
    bool satisfied = true;
    bool vacuous = false;  // fewer than l members on some side
    Int threshold = 0;     // l^2 t - l + 1
    std::optional<Int> min_sum;
    std::optional<TupleWitness> witness;  // attached whenever min_sum is
};

/// Condition on a precomputed matrix; vacuous when rows < l or cols < l.
ConditionReport evaluate_condition(const IntersectionMatrix& w, Int l, Int t);

ConditionReport is_weakly_cross_intersecting(const SetFamily& f, const SetFamily& g, Int l, Int t);
ConditionReport is_weakly_cross_intersecting(const SubspaceFamily& f, const SubspaceFamily& g, Int l, Int t);

// ---------------------------------------------------------------------------
// Sunflowers

template <class Kernel>
struct Sunflower {
    Kernel kernel;
    std::vector<std::size_t> petal_indices;  // ascending member indices

    std::size_t u() const { return petal_indices.size(); }
};

using SetSunflower = Sunflower<SetMask>;
using SubspaceSunflower = Sunflower<Subspace>;

/// Every maximal sunflower with kernel of size (dimension) exactly t and at
/// least u petals. Kernels are the pairwise intersections of size t; for each
/// kernel the maximal cliques of "meets exactly in the kernel" are listed.
/// Output is sorted by kernel, then by petal indices.
/// Throws PreconditionError unless t < k and u >= 2.
std::vector<SetSunflower> find_sunflowers(const SetFamily& f, Int t, std::size_t u);
std::vector<SubspaceSunflower> find_sunflowers(const SubspaceFamily& f, Int t, std::size_t u);

// ---------------------------------------------------------------------------
// Proof-side classification

struct EPartition {
    std::vector<std::size_t> e;   // every intersection <= t-1
    std::vector<std::size_t> e1;  // exactly one equal to t, the rest <= t-1
    std::vector<std::size_t> e2;  // all <= t, at least two equal to t
    std::vector<std::size_t> e3;  // some intersection >= t+1
};

/// Classifies the members of f against the tuple of partner members.
/// Throws PreconditionError if the tuple has repeated members.
EPartition classify_e_partition(const SetFamily& f, const std::vector<SetMask>& tuple, Int t);
EPartition classify_e_partition(const SubspaceFamily& f, const std::vector<Subspace>& tuple, Int t);

template <class Core>
struct ExtremalStructure {
    Core core;
    bool full_star = false;  // f is every member containing core
};

/// Common core of all members; nullopt when it is empty (the zero subspace).
/// Throws PreconditionError on an empty family.
std::optional<ExtremalStructure<SetMask>> extremal_structure(const SetFamily& f);
std::optional<ExtremalStructure<Subspace>> extremal_structure(const SubspaceFamily& f);

template <class Kernel>
struct KernelContainment {
    Sunflower<Kernel> sunflower;              // the qualifying sunflower used
    std::size_t required_petals = 0;          // (1+kp)l, or ([kp,1]_q+1)l
    std::vector<std::size_t> violating;       // members of g missing the kernel
    bool all_contain() const { return violating.empty(); }
};

/// Checks that every member of g contains the kernel of a sunflower in f with
/// enough petals. Throws PreconditionError when (f, g) fails the condition
/// or f has no qualifying sunflower.
KernelContainment<SetMask> verify_kernel_containment(const SetFamily& f, const SetFamily& g, Int l, Int t);
KernelContainment<Subspace> verify_kernel_containment(const SubspaceFamily& f, const SubspaceFamily& g, Int l,
                                                      Int t);

}  // namespace wcross

#endif  // WCROSS_FAMILY_ANALYSIS_HPP
