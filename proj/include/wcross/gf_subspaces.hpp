#ifndef WCROSS_GF_SUBSPACES_HPP
#define WCROSS_GF_SUBSPACES_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wcross/exact_arith.hpp"

namespace wcross {

using Elem = std::uint32_t;
using Row = std::vector<Elem>;
using Matrix = std::vector<Row>;

bool is_prime(Int q);

/// Arithmetic in F_q for prime q. Elements are integers in [0, q).
class PrimeField {
public:
    /// Throws PreconditionError unless q is a prime below 2^16.
    explicit PrimeField(Int q);

    Elem order() const { return q_; }
    Elem add(Elem a, Elem b) const { return (a + b) % q_; }
    Elem sub(Elem a, Elem b) const { return (a + q_ - b) % q_; }
    Elem mul(Elem a, Elem b) const { return static_cast<Elem>((std::uint64_t{a} * b) % q_); }
    Elem inv(Elem a) const;  // a != 0

private:
    Elem q_;
    std::vector<Elem> inverse_;
};

/// Reduced row echelon form over F_q with zero rows dropped. Every entry must
/// lie in [0, q) and every row must have the same length.
Matrix rref(const Matrix& m, Int q);

/// Rank of m over F_q.
Int rank(const Matrix& m, Int q);

/// A subspace of F_q^n, held by its canonical (RREF) basis. Two values compare
/// equal iff they are the same subspace.
class Subspace {
public:
    /// Row space of `rows`, canonicalized. rows may be linearly dependent.
    static Subspace span(Int q, Int n, const Matrix& rows);
    static Subspace zero(Int q, Int n);
    /// Span of the unit vectors e_i, 0-based coordinates.
    static Subspace coordinate(Int q, Int n, const std::vector<Int>& coords);

    Int q() const { return q_; }
    Int ambient_dim() const { return n_; }
    Int dim() const { return static_cast<Int>(basis_.size()); }
    const Matrix& basis() const { return basis_; }
    std::vector<Int> pivots() const;

    /// Whether vector v (length n) lies in the subspace.
    bool contains_vector(std::span<const Elem> v) const;

    friend bool operator==(const Subspace&, const Subspace&) = default;
    friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

    std::string str() const;  // rows joined by ';', entries by ' '

private:
    Subspace(Int q, Int n, Matrix canonical) : q_(q), n_(n), basis_(std::move(canonical)) {}

    Int q_ = 2;
    Int n_ = 0;
    Matrix basis_;
};

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const;
};

/// Distinct subspaces of F_q^n sharing dimension k.
struct SubspaceFamily {
    Int q = 2;
    Int n = 0;
    Int k = 0;
    std::vector<Subspace> members;

    std::size_t size() const { return members.size(); }
    /// Throws PreconditionError on mixed dimensions, ambient spaces or duplicates.
    void validate() const;
};

constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// All k-subspaces of F_q^n in lexicographic order of their canonical bases.
/// Throws LimitError when [n,k]_q exceeds cap.
SubspaceFamily enumerate_subspaces(Int n, Int k, Int q, std::uint64_t cap = kDefaultEnumerationCap);

/// dim U + dim W - rank of the stacked bases.
Int dim_intersection(const Subspace& u, const Subspace& w);

Subspace sum_subspace(const Subspace& u, const Subspace& w);

/// U ∩ W as a subspace.
Subspace intersect(const Subspace& u, const Subspace& w);

/// Whether w ⊆ u.
bool contains(const Subspace& u, const Subspace& w);

/// Every k-subspace of F_q^n containing t_core, in lexicographic order.
/// Its size is [n - dim T, k - dim T]_q.
SubspaceFamily build_star(Int n, Int k, Int q, const Subspace& t_core, std::uint64_t cap = kDefaultEnumerationCap);

/// Every d-dimensional subspace of u, in lexicographic order.
std::vector<Subspace> subspaces_within(const Subspace& u, Int d);

/// Image of s under the invertible n x n matrix g acting on row vectors (v -> v g).
Subspace transform(const Subspace& s, const Matrix& g);

// File format: a header line `q=<q> n=<n>`, then one block per subspace of
// `dim` lines holding the rows of its basis as space-separated integers.
// Blocks are separated by blank lines. Rows are canonicalized on input.

/// Throws ParseError (with line number) on malformed input or duplicates.
SubspaceFamily parse_subspace_family(std::string_view text);
std::string format_subspace_family(const SubspaceFamily& family);

}  // namespace wcross

#endif  // WCROSS_GF_SUBSPACES_HPP
