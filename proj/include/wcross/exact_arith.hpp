#ifndef WCROSS_EXACT_ARITH_HPP
#define WCROSS_EXACT_ARITH_HPP

#include <cstdint>

#include "wcross/nat.hpp"

namespace wcross {

using Int = std::int64_t;

/// Parameters of a set-family problem: F ⊆ C([n],k), G ⊆ C([n],kp),
/// tuples of size l, intersection level t.
struct SetParams {
    Int n = 0;
    Int k = 0;
    Int kp = 0;
    Int t = 0;
    Int l = 1;

    /// Throws PreconditionError unless n >= k >= kp >= t+1 >= 2 and l >= 1.
    void validate() const;
};

/// SetParams over F_q^n. q only needs to be prime when subspaces are enumerated.
struct QParams : SetParams {
    Int q = 2;

    void validate() const;
};

/// C(m, i); zero when i < 0 or i > m.
Nat binomial(Int m, Int i);

/// Gaussian binomial [a, b]_q via the product formula with exact division.
/// [a, 0] = 1; zero when b < 0 or b > a. Throws PreconditionError if q < 2.
Nat gaussian_binomial(Int a, Int b, Int q);

/// q^e for e >= 0.
Nat q_power(Int q, Int e);

/// Number of kp-subsets of [n] meeting a fixed k-subset in exactly h points:
/// C(k,h) C(n-k, kp-h).
Nat set_profile(Int n, Int k, Int kp, Int h);

/// Number of m-subspaces of F_q^n meeting a fixed kw-subspace W in dimension h:
/// q^{(kw-h)(m-h)} [kw,h] [n-kw, m-h].
Nat count_subspaces_by_intersection(Int n, Int kw, Int m, Int h, Int q);

/// The subspace analogue of set_profile, F(h) = count_subspaces_by_intersection(n,k,kp,h,q).
Nat subspace_profile(Int n, Int k, Int kp, Int h, Int q);

/// l^2 t - l + 1, the tuple-sum threshold of the weak cross-intersection condition.
Nat condition_threshold(Int l, Int t);

/// k^2 l^p C(2k,t+1) C(k,t) for p = l_power. The set-version lower bounds on n
/// are this quantity halved plus t.
Nat set_bound_core(Int k, Int l, Int t, Int l_power);

/// True iff 2(n - t) >= set_bound_core(k,l,t,l_power), i.e. n meets the bound
/// without rounding.
bool meets_set_bound(Int n, Int k, Int l, Int t, Int l_power);

/// Smallest n with 2(n - t) >= set_bound_core(k,l,t,l_power).
Nat set_bound_min_n(Int k, Int l, Int t, Int l_power);

/// Smallest n satisfying the set-version theorem bound (the l^4 form).
Nat set_threshold(Int k, Int l, Int t);

/// (2k-t+1)(t+1) + (k-t+1)kp + k + 2l - 1.
Nat subspace_threshold(Int k, Int kp, Int l, Int t);

}  // namespace wcross

#endif  // WCROSS_EXACT_ARITH_HPP
