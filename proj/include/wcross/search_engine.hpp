#ifndef WCROSS_SEARCH_ENGINE_HPP
#define WCROSS_SEARCH_ENGINE_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wcross/family_analysis.hpp"

namespace wcross {

enum class PoolKind { Sets, Subspaces };

/// The candidates F and G may be drawn from. For sets only the set_* members
/// are used, for subspaces only the sub_* members.
struct CandidatePool {
    PoolKind kind = PoolKind::Sets;
    Int n = 0;
    Int q = 0;  // 0 for sets
    Int k = 0;
    Int kp = 0;
    SetFamily set_f, set_g;
    SubspaceFamily sub_f, sub_g;

    std::size_t size_f() const { return kind == PoolKind::Sets ? set_f.size() : sub_f.size(); }
    std::size_t size_g() const { return kind == PoolKind::Sets ? set_g.size() : sub_g.size(); }
    /// True when both sides are the complete layers.
    bool full_layers() const;
};

CandidatePool set_layer_pool(Int n, Int k, Int kp);
CandidatePool subspace_layer_pool(Int q, Int n, Int k, Int kp, std::uint64_t cap = kDefaultEnumerationCap);
/// Explicit sub-pools; the families must share a universe.
CandidatePool set_pool(SetFamily f, SetFamily g);
CandidatePool subspace_pool(SubspaceFamily f, SubspaceFamily g);

IntersectionMatrix pool_matrix(const CandidatePool& pool);

/// C(n-t,k-t) C(n-t,kp-t), or the Gaussian analogue: the product of a star pair.
Nat star_lower_bound(Int n, Int k, Int kp, Int t);
Nat star_lower_bound(Int n, Int k, Int kp, Int t, Int q);
Nat star_lower_bound(const CandidatePool& pool, Int t);

struct StarPair {
    Nat product{0};
    std::vector<std::size_t> f, g;  // pool indices of members containing the core
};

/// The largest star pair inside the pool (cores are t-subsets or t-subspaces
/// of F-candidates; first core in lexicographic order wins ties). Such pairs
/// always satisfy the condition.
StarPair best_star_in_pool(const CandidatePool& pool, Int t);

struct SearchResult {
    Nat best_product{0};
    std::vector<std::size_t> best_f;
    std::vector<std::size_t> best_g;
    std::uint64_t nodes_explored = 0;
    bool optimal = false;
    bool vacuous = false;  // the witness pair has fewer than l members on a side
    Nat star_lower_bound{0};
    Nat star_in_pool{0};   // product of best_star_in_pool

    /// The pool holds a full star pair on some core.
    bool full_star_in_pool() const { return !star_lower_bound.is_zero() && star_in_pool == star_lower_bound; }
};

constexpr std::size_t kNaiveGuard = 24;

/// Exhaustive over all 2^|F| x 2^|G| pairs. The witness is the
/// lexicographically smallest maximizer (F indices first). Throws LimitError
/// when |F| + |G| exceeds guard.
SearchResult max_product_naive(const CandidatePool& pool, Int l, Int t, std::size_t guard = kNaiveGuard);

struct SearchOptions {
    std::size_t max_pool_side = 64;          // hard limit, candidates per side
    std::optional<std::uint64_t> node_budget;
    std::optional<std::chrono::milliseconds> time_budget;
    bool symmetry = false;                   // fix {1..k} in F; full set layers only
};

/// Branch and bound on include/exclude decisions. optimal is false when a
/// budget ran out, in which case best_product is only a lower bound.
SearchResult max_product_bb(const CandidatePool& pool, Int l, Int t, const SearchOptions& options = {});

/// Re-verifies the witness with the condition checker and recomputes the product.
bool certify(const SearchResult& result, const CandidatePool& pool, Int l, Int t);

}  // namespace wcross

#endif  // WCROSS_SEARCH_ENGINE_HPP
