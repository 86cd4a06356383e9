#include "wcross/exact_arith.hpp"

#include <string>

#include "wcross/errors.hpp"

namespace wcross {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

}  // namespace

void SetParams::validate() const {
    require(t >= 1, "t >= 1 violated (t = " + std::to_string(t) + ")");
    require(kp >= t + 1, "kp >= t+1 violated (kp = " + std::to_string(kp) + ", t = " + std::to_string(t) + ")");
    require(k >= kp, "k >= kp violated (k = " + std::to_string(k) + ", kp = " + std::to_string(kp) + ")");
    require(n >= k, "n >= k violated (n = " + std::to_string(n) + ", k = " + std::to_string(k) + ")");
    require(l >= 1, "l >= 1 violated (l = " + std::to_string(l) + ")");
}

void QParams::validate() const {
    SetParams::validate();
    require(q >= 2, "q >= 2 violated (q = " + std::to_string(q) + ")");
}

Nat binomial(Int m, Int i) {
    if (m < 0) throw PreconditionError("binomial: m must be nonnegative");
    if (i < 0 || i > m) return Nat{0};
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(i));
    return Nat(r);
}

Nat q_power(Int q, Int e) {
    require(e >= 0, "q_power: negative exponent");
    return pow(Nat(static_cast<std::uint64_t>(q)), static_cast<std::uint64_t>(e));
}

Nat gaussian_binomial(Int a, Int b, Int q) {
    require(q >= 2, "gaussian_binomial: q >= 2 violated (q = " + std::to_string(q) + ")");
    require(a >= 0, "gaussian_binomial: a must be nonnegative");
    if (b < 0 || b > a) return Nat{0};
    if (b == 0) return Nat{1};
    // Accumulate numerator and denominator separately; their quotient is an
    // integer, so divide_exact checks that no remainder is ever produced.
    Nat num{1};
    Nat den{1};
    for (Int i = 0; i < b; ++i) {
        num *= q_power(q, a - i) - Nat{1};
        den *= q_power(q, b - i) - Nat{1};
    }
    return divide_exact(num, den);
}

Nat set_profile(Int n, Int k, Int kp, Int h) {
    require(0 <= k && k <= n && 0 <= kp && kp <= n, "set_profile: need 0 <= k, kp <= n");
    if (h < 0 || h > k || h > kp) return Nat{0};
    return binomial(k, h) * binomial(n - k, kp - h);
}

Nat count_subspaces_by_intersection(Int n, Int kw, Int m, Int h, Int q) {
    require(q >= 2, "count_subspaces_by_intersection: q >= 2 violated");
    require(0 <= kw && kw <= n && 0 <= m && m <= n, "count_subspaces_by_intersection: need 0 <= kw, m <= n");
    if (h < 0 || h > kw || h > m) return Nat{0};
    return q_power(q, (kw - h) * (m - h)) * gaussian_binomial(kw, h, q) * gaussian_binomial(n - kw, m - h, q);
}

Nat subspace_profile(Int n, Int k, Int kp, Int h, Int q) {
    return count_subspaces_by_intersection(n, k, kp, h, q);
}

Nat condition_threshold(Int l, Int t) {
    require(l >= 1 && t >= 1, "condition_threshold: need l >= 1 and t >= 1");
    return Nat(static_cast<std::uint64_t>(l)) * Nat(static_cast<std::uint64_t>(l)) *
               Nat(static_cast<std::uint64_t>(t)) +
           Nat{1} - Nat(static_cast<std::uint64_t>(l));
}

Nat set_bound_core(Int k, Int l, Int t, Int l_power) {
    require(t >= 1 && k >= t + 1 && l >= 1 && l_power >= 0, "set_bound_core: need k >= t+1 >= 2, l >= 1");
    const Nat kk(static_cast<std::uint64_t>(k));
    return kk * kk * pow(Nat(static_cast<std::uint64_t>(l)), static_cast<std::uint64_t>(l_power)) *
           binomial(2 * k, t + 1) * binomial(k, t);
}

bool meets_set_bound(Int n, Int k, Int l, Int t, Int l_power) {
    if (n < t) return false;
    return Nat{2} * Nat(static_cast<std::uint64_t>(n - t)) >= set_bound_core(k, l, t, l_power);
}

Nat set_bound_min_n(Int k, Int l, Int t, Int l_power) {
    const Nat core = set_bound_core(k, l, t, l_power);
    return (core + Nat{1}) / Nat{2} + Nat(static_cast<std::uint64_t>(t));
}

Nat set_threshold(Int k, Int l, Int t) {
    require(l >= 2, "set_threshold: l >= 2 violated");
    return set_bound_min_n(k, l, t, 4);
}

Nat subspace_threshold(Int k, Int kp, Int l, Int t) {
    require(t >= 1 && kp >= t + 1 && k >= kp && l >= 2, "subspace_threshold: need k >= kp >= t+1 >= 2 and l >= 2");
    const Int v = (2 * k - t + 1) * (t + 1) + (k - t + 1) * kp + k + 2 * l - 1;
    return Nat(static_cast<std::uint64_t>(v));
}

}  // namespace wcross
