#ifndef WCROSS_SET_FAMILY_HPP
#define WCROSS_SET_FAMILY_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wcross/exact_arith.hpp"

namespace wcross {

/// A subset of [n], n <= 64; bit i-1 holds element i.
using SetMask = std::uint64_t;

inline Int set_size(SetMask s) { return std::popcount(s); }

/// Mask of the 1-based elements. Throws PreconditionError outside [1, 64].
SetMask make_set(const std::vector<Int>& elements);

/// Sorted 1-based elements.
std::vector<Int> set_elements(SetMask s);

/// "1,3,5"
std::string set_str(SetMask s);

/// Lexicographic order of the sorted element lists, for sets of equal size.
inline bool set_lex_less(SetMask a, SetMask b) {
    const SetMask diff = a ^ b;
    return diff != 0 && (a & diff & (~diff + 1)) != 0;
}

/// Distinct k-subsets of [n].
struct SetFamily {
    Int n = 0;
    Int k = 0;
    std::vector<SetMask> members;

    std::size_t size() const { return members.size(); }
    /// Throws PreconditionError on wrong sizes, stray bits or duplicates.
    void validate() const;
};

/// All k-subsets of [n] in lexicographic order. Throws LimitError above cap.
SetFamily set_layer(Int n, Int k, std::uint64_t cap = 1'000'000);

/// Every k-subset of [n] containing core, in lexicographic order.
SetFamily set_star(Int n, Int k, SetMask core, std::uint64_t cap = 1'000'000);

// File format: a header line `n=<n> k=<k>`, then one member per line as
// comma-separated 1-based elements. Blank lines are skipped.

/// Throws ParseError (with line number) on malformed input or duplicates.
SetFamily parse_set_family(std::string_view text);
std::string format_set_family(const SetFamily& family);

}  // namespace wcross

#endif  // WCROSS_SET_FAMILY_HPP
