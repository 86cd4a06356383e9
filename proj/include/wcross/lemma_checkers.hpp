#ifndef WCROSS_LEMMA_CHECKERS_HPP
#define WCROSS_LEMMA_CHECKERS_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wcross/exact_arith.hpp"
#include "wcross/nat.hpp"

namespace wcross {

/// Exact nonnegative rational, kept unreduced. Comparisons cross-multiply.
struct Ratio {
    Nat num{0};
    Nat den{1};

    Ratio() = default;
    Ratio(Nat n) : num(std::move(n)) {}  // NOLINT(google-explicit-constructor)
    Ratio(Nat n, Nat d);

    Ratio reduced() const;
    bool is_integer() const { return (num % den).is_zero(); }
    std::string str() const;  // "a" or "a/b" in lowest terms

    friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
    friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
        return a.num * b.den <=> b.num * a.den;
    }
};

/// One inequality per id. The ".1"/".2" variants are the displayed inequality
/// and its copy with the roles of k and kp exchanged.
enum class LemmaId {
    SetMono,
    SetUpperBound1,
    SetUpperBound2,
    SetUpperBoundSum1,
    SetUpperBoundSum2,
    Mono,
    UpperBound1,
    UpperBound2,
    UpperBoundSum1,
    UpperBoundSum2,
};

std::string_view lemma_name(LemmaId id);

/// The lemma families a sweep can select; each expands to one or more LemmaIds.
enum class LemmaFamily { SetMono, SetUpperBound, SetUpperBoundSum, Mono, UpperBound, UpperBoundSum };

std::string_view family_name(LemmaFamily f);
std::optional<LemmaFamily> parse_family(std::string_view name);
bool family_uses_q(LemmaFamily f);
bool family_uses_m(LemmaFamily f);
bool family_uses_l(LemmaFamily f);

/// Smallest n for which the family's statement claims anything.
Nat family_min_n(LemmaFamily f, Int k, Int kp, Int l, Int t);

struct LemmaParams {
    Int n = 0;
    Int k = 0;
    Int kp = 0;
    Int t = 0;
    std::optional<Int> l;
    std::optional<Int> q;
    std::optional<Int> m;
    std::optional<Int> h;

    auto operator<=>(const LemmaParams&) const = default;
};

struct LemmaReport {
    LemmaId id{};
    LemmaParams params;
    Ratio lhs;
    Ratio rhs;
    bool holds = false;
    bool strict = false;  // the lemma demands a strict inequality
};

/// f(h) > f(h+1) for every h in [t, kp-1], f = set_profile(n,k,kp,·).
/// Requires n >= k^2 + 2k and k >= kp >= t+1.
std::vector<LemmaReport> check_setmono(Int n, Int k, Int kp, Int t);

/// The two "fixed m" set bounds. Requires k >= kp >= t+1, l >= 2,
/// 0 <= m <= kp-t-1 and 2(n-t) >= k^2 l^3 C(2k,t+1) C(k,t).
std::pair<LemmaReport, LemmaReport> check_setupperbound(Int n, Int k, Int kp, Int l, Int t, Int m);

/// The two set bounds against the neighbourhood sum; l^4 form of the n bound.
std::pair<LemmaReport, LemmaReport> check_setupperbound2(Int n, Int k, Int kp, Int l, Int t);

/// F(h) > F(h+1) for h in [t, kp-1], F = subspace_profile. Requires n >= k+kp-t.
std::vector<LemmaReport> check_mono(Int n, Int k, Int kp, Int t, Int q);

/// q-analogue of check_setupperbound. Requires n >= (2k-t)(t+1)+k+l+2.
std::pair<LemmaReport, LemmaReport> check_upperbound(Int n, Int k, Int kp, Int l, Int t, Int m, Int q);

/// q-analogue of check_setupperbound2. Requires n >= subspace_threshold(k,kp,l,t).
std::pair<LemmaReport, LemmaReport> check_upperbound2(Int n, Int k, Int kp, Int l, Int t, Int q);

// Closed forms the proofs give for the first inequality when k = kp = t+1.
// They are evaluated independently of the general checkers above.
Nat setupperbound_case1_lhs(Int kp, Int l, Int t);
Nat setupperbound_case1_rhs(Int n, Int t);
Ratio setupperbound2_case1_lhs(Int n, Int l, Int t);
Nat setupperbound2_case1_rhs(Int n, Int l, Int t);
Nat upperbound_case1_lhs(Int kp, Int l, Int t, Int q);
Nat upperbound_case1_rhs(Int n, Int t, Int q);
Ratio upperbound2_case1_lhs(Int n, Int l, Int t, Int q);
Nat upperbound2_case1_rhs(Int n, Int l, Int t, Int q);

/// Petals left in a sunflower with r = (1+kp)l petals after discarding those
/// that meet G_i \ K, when `containing` of the l chosen G members contain K.
Int residual_petals_set(Int kp, Int l, Int t, Int containing);

/// Subspace analogue with r = ([kp,1]+1)l.
Nat residual_petals_subspace(Int kp, Int l, Int t, Int containing, Int q);

// ---------------------------------------------------------------------------
// Sweeps

struct NPolicy {
    enum class Kind { AtThreshold, ThresholdPlus, Explicit };
    Kind kind = Kind::AtThreshold;
    std::vector<Int> offsets;   // ThresholdPlus
    std::vector<Int> explicit_n;  // Explicit
};

/// Cross product of parameter values. kp and m default to their full valid
/// ranges [t+1, k] and [0, kp-t-1]; explicit values outside those ranges are
/// skipped for the (t, k, kp) combinations where they do not apply.
struct SweepConfig {
    std::vector<Int> t;
    std::vector<Int> k;
    std::optional<std::vector<Int>> kp;
    std::vector<Int> l;
    std::vector<Int> q;
    std::optional<std::vector<Int>> m;
    NPolicy n_policy;
    std::vector<LemmaFamily> lemmas;  // empty selects every family

    /// Throws PreconditionError on values outside every lemma's domain.
    void validate() const;
};

/// Parses the JSON sweep configuration. Throws ParseError or PreconditionError.
SweepConfig parse_sweep_config(std::string_view text);

struct SweepSummary {
    std::size_t total = 0;
    std::size_t holds = 0;
    std::size_t violations = 0;
};

struct SweepResult {
    std::vector<LemmaReport> reports;  // sorted by (lemma, params)
    SweepSummary summary;
};

/// Evaluates every applicable checker over the grid. workers <= 1 runs inline.
/// A tuple below a lemma's bound (possible only with an explicit n list)
/// raises PreconditionError.
SweepResult run_sweep(const SweepConfig& config, unsigned workers = 1);

}  // namespace wcross

#endif  // WCROSS_LEMMA_CHECKERS_HPP
