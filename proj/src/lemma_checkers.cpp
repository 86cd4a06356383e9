#include "wcross/lemma_checkers.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>

#include "wcross/errors.hpp"

namespace wcross {

namespace {

Nat nat(Int v) {
    if (v < 0) throw std::domain_error("negative value where a count was expected");
    return Nat(static_cast<std::uint64_t>(v));
}

/// Collects violated preconditions so the error names every failing one.
class Preconditions {
public:
    explicit Preconditions(std::string op) : op_(std::move(op)) {}

    void need(bool ok, const std::string& what) {
        if (!ok) failed_.push_back(what);
    }

    void enforce() const {
        if (failed_.empty()) return;
        std::string msg = op_ + ": precondition violated:";
        for (const auto& f : failed_) msg += " [" + f + "]";
        throw PreconditionError(msg);
    }

private:
    std::string op_;
    std::vector<std::string> failed_;
};

std::string kv(const char* name, Int v) { return std::string(name) + "=" + std::to_string(v); }

void need_ordering(Preconditions& pre, Int k, Int kp, Int t) {
    pre.need(t >= 1, "t >= 1 (" + kv("t", t) + ")");
    pre.need(kp >= t + 1, "kp >= t+1 (" + kv("kp", kp) + ", " + kv("t", t) + ")");
    pre.need(k >= kp, "k >= kp (" + kv("k", k) + ", " + kv("kp", kp) + ")");
}

LemmaReport make_report(LemmaId id, LemmaParams params, Ratio lhs, Ratio rhs, bool strict) {
    LemmaReport r;
    r.id = id;
    r.params = std::move(params);
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.strict = strict;
    r.holds = strict ? (r.lhs < r.rhs) : (r.lhs >= r.rhs);
    return r;
}

// Shared left-hand side of the "fixed m" bounds, written once for both the
// set and the subspace version:
//   2l-2 + (a l + l - 1) C(l,2) c (big - small + 1) + (C(l,2) d + l e) f
Nat fixed_m_lhs(Int l, const Nat& a, const Nat& c, const Nat& big, const Nat& small, const Nat& d, const Nat& e,
                const Nat& f) {
    const Nat pairs = binomial(l, 2);
    return nat(2 * l - 2) + (a * nat(l) + nat(l - 1)) * pairs * c * (big - small + Nat{1}) +
           (pairs * d + nat(l) * e) * f;
}

// Denominator of the neighbourhood-sum bounds:
//   (C(l,2) c + 2)(l-1) + (C(l,2) d + l e) f
Nat neighbourhood_den(Int l, const Nat& c, const Nat& d, const Nat& e, const Nat& f) {
    const Nat pairs = binomial(l, 2);
    return (pairs * c + Nat{2}) * nat(l - 1) + (pairs * d + nat(l) * e) * f;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ratio

Ratio::Ratio(Nat n, Nat d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::domain_error("Ratio: zero denominator");
}

Ratio Ratio::reduced() const {
    if (num.is_zero()) return Ratio(Nat{0}, Nat{1});
    const Nat g = gcd(num, den);
    return Ratio(divide_exact(num, g), divide_exact(den, g));
}

std::string Ratio::str() const {
    const Ratio r = reduced();
    if (r.den == Nat{1}) return r.num.str();
    return r.num.str() + "/" + r.den.str();
}

// ---------------------------------------------------------------------------
// Names

std::string_view lemma_name(LemmaId id) {
    switch (id) {
        case LemmaId::SetMono: return "setmono";
        case LemmaId::SetUpperBound1: return "setupperbound.1";
        case LemmaId::SetUpperBound2: return "setupperbound.2";
        case LemmaId::SetUpperBoundSum1: return "setupperbound2.1";
        case LemmaId::SetUpperBoundSum2: return "setupperbound2.2";
        case LemmaId::Mono: return "mono";
        case LemmaId::UpperBound1: return "upperbound.1";
        case LemmaId::UpperBound2: return "upperbound.2";
        case LemmaId::UpperBoundSum1: return "upperbound2.1";
        case LemmaId::UpperBoundSum2: return "upperbound2.2";
    }
    return "?";
}

namespace {
constexpr std::array<std::pair<LemmaFamily, std::string_view>, 6> kFamilyNames{{
    {LemmaFamily::SetMono, "setmono"},
    {LemmaFamily::SetUpperBound, "setupperbound"},
    {LemmaFamily::SetUpperBoundSum, "setupperbound2"},
    {LemmaFamily::Mono, "mono"},
    {LemmaFamily::UpperBound, "upperbound"},
    {LemmaFamily::UpperBoundSum, "upperbound2"},
}};
}  // namespace

std::string_view family_name(LemmaFamily f) {
    for (const auto& [fam, name] : kFamilyNames) {
        if (fam == f) return name;
    }
    return "?";
}

std::optional<LemmaFamily> parse_family(std::string_view name) {
    for (const auto& [fam, n] : kFamilyNames) {
        if (n == name) return fam;
    }
    return std::nullopt;
}

bool family_uses_q(LemmaFamily f) {
    return f == LemmaFamily::Mono || f == LemmaFamily::UpperBound || f == LemmaFamily::UpperBoundSum;
}

bool family_uses_m(LemmaFamily f) { return f == LemmaFamily::SetUpperBound || f == LemmaFamily::UpperBound; }

bool family_uses_l(LemmaFamily f) { return f != LemmaFamily::SetMono && f != LemmaFamily::Mono; }

Nat family_min_n(LemmaFamily f, Int k, Int kp, Int l, Int t) {
    switch (f) {
        case LemmaFamily::SetMono: return nat(k * k + 2 * k);
        case LemmaFamily::SetUpperBound: return set_bound_min_n(k, l, t, 3);
        case LemmaFamily::SetUpperBoundSum: return set_bound_min_n(k, l, t, 4);
        case LemmaFamily::Mono: return nat(k + kp - t);
        case LemmaFamily::UpperBound: return nat((2 * k - t) * (t + 1) + k + l + 2);
        case LemmaFamily::UpperBoundSum: return subspace_threshold(k, kp, l, t);
    }
    throw std::logic_error("unknown lemma family");
}

// ---------------------------------------------------------------------------
// Set version

std::vector<LemmaReport> check_setmono(Int n, Int k, Int kp, Int t) {
    Preconditions pre("check_setmono");
    need_ordering(pre, k, kp, t);
    pre.need(n >= k * k + 2 * k, "n >= k^2+2k (" + kv("n", n) + ", " + kv("k", k) + ")");
    pre.enforce();

    std::vector<LemmaReport> out;
    for (Int h = t; h <= kp - 1; ++h) {
        LemmaParams p{n, k, kp, t, std::nullopt, std::nullopt, std::nullopt, h};
        // f(h) > f(h+1), reported as lhs = f(h+1) < rhs = f(h).
        out.push_back(make_report(LemmaId::SetMono, p, set_profile(n, k, kp, h + 1), set_profile(n, k, kp, h), true));
    }
    return out;
}

std::pair<LemmaReport, LemmaReport> check_setupperbound(Int n, Int k, Int kp, Int l, Int t, Int m) {
    Preconditions pre("check_setupperbound");
    need_ordering(pre, k, kp, t);
    pre.need(l >= 2, "l >= 2 (" + kv("l", l) + ")");
    pre.need(m >= 0 && m <= kp - t - 1, "0 <= m <= kp-t-1 (" + kv("m", m) + ")");
    if (t >= 1 && k >= t + 1 && l >= 1) {
        pre.need(meets_set_bound(n, k, l, t, 3),
                 "2(n-t) >= k^2 l^3 C(2k,t+1) C(k,t) (" + kv("n", n) + ", needs n >= " +
                     set_bound_min_n(k, l, t, 3).str() + ")");
    }
    pre.enforce();

    const LemmaParams p{n, k, kp, t, l, std::nullopt, m, std::nullopt};
    const Nat num = binomial(n - t, kp - t) * binomial(n - t, k - t);

    const Nat lhs1 = fixed_m_lhs(l, nat(kp), binomial(kp - 1, t), binomial(n - t, k - t), binomial(n - k, k - t),
                                 binomial(2 * kp, t + 1), binomial(kp, t + 1), binomial(n - t - 1, k - t - 1));
    const Nat lhs2 = fixed_m_lhs(l, nat(k), binomial(k - 1, t), binomial(n - t, kp - t), binomial(n - kp, kp - t),
                                 binomial(2 * k, t + 1), binomial(k, t + 1), binomial(n - t - 1, kp - t - 1));
    return {make_report(LemmaId::SetUpperBound1, p, lhs1, Ratio(num, binomial(n - t - m, kp - t - m)), true),
            make_report(LemmaId::SetUpperBound2, p, lhs2, Ratio(num, binomial(n - t - m, k - t - m)), true)};
}

std::pair<LemmaReport, LemmaReport> check_setupperbound2(Int n, Int k, Int kp, Int l, Int t) {
    Preconditions pre("check_setupperbound2");
    need_ordering(pre, k, kp, t);
    pre.need(l >= 2, "l >= 2 (" + kv("l", l) + ")");
    if (t >= 1 && k >= t + 1 && l >= 1) {
        pre.need(meets_set_bound(n, k, l, t, 4),
                 "2(n-t) >= k^2 l^4 C(2k,t+1) C(k,t) (" + kv("n", n) + ", needs n >= " +
                     set_bound_min_n(k, l, t, 4).str() + ")");
    }
    pre.enforce();

    const LemmaParams p{n, k, kp, t, l, std::nullopt, std::nullopt, std::nullopt};
    const Nat num = binomial(n - t, k - t) * binomial(n - t, kp - t);

    const Nat den1 = neighbourhood_den(l, binomial(kp - 1, t), binomial(2 * kp, t + 1), binomial(kp, t + 1),
                                       binomial(n - t - 1, k - t - 1));
    const Nat den2 = neighbourhood_den(l, binomial(k - 1, t), binomial(2 * k, t + 1), binomial(k, t + 1),
                                       binomial(n - t - 1, kp - t - 1));
    Nat sum1{0};
    Nat sum2{0};
    for (Int h = t; h <= kp; ++h) {
        sum1 += set_profile(n, k, kp, h);
        sum2 += set_profile(n, kp, k, h);
    }
    const Nat rhs1 = nat(l) * sum1 + nat(l);
    const Nat rhs2 = nat(l) * sum2 + nat(l);
    return {make_report(LemmaId::SetUpperBoundSum1, p, Ratio(num, den1), rhs1, false),
            make_report(LemmaId::SetUpperBoundSum2, p, Ratio(num, den2), rhs2, false)};
}

// ---------------------------------------------------------------------------
// Subspace version

std::vector<LemmaReport> check_mono(Int n, Int k, Int kp, Int t, Int q) {
    Preconditions pre("check_mono");
    need_ordering(pre, k, kp, t);
    pre.need(q >= 2, "q >= 2 (" + kv("q", q) + ")");
    pre.need(n >= k + kp - t, "n >= k+kp-t (" + kv("n", n) + ")");
    pre.enforce();

    std::vector<LemmaReport> out;
    for (Int h = t; h <= kp - 1; ++h) {
        LemmaParams p{n, k, kp, t, std::nullopt, q, std::nullopt, h};
        out.push_back(make_report(LemmaId::Mono, p, subspace_profile(n, k, kp, h + 1, q),
                                  subspace_profile(n, k, kp, h, q), true));
    }
    return out;
}

std::pair<LemmaReport, LemmaReport> check_upperbound(Int n, Int k, Int kp, Int l, Int t, Int m, Int q) {
    Preconditions pre("check_upperbound");
    need_ordering(pre, k, kp, t);
    pre.need(l >= 2, "l >= 2 (" + kv("l", l) + ")");
    pre.need(q >= 2, "q >= 2 (" + kv("q", q) + ")");
    pre.need(m >= 0 && m <= kp - t - 1, "0 <= m <= kp-t-1 (" + kv("m", m) + ")");
    pre.need(n >= (2 * k - t) * (t + 1) + k + l + 2,
             "n >= (2k-t)(t+1)+k+l+2 (" + kv("n", n) + ", needs n >= " +
                 std::to_string((2 * k - t) * (t + 1) + k + l + 2) + ")");
    pre.enforce();

    auto g = [q](Int a, Int b) { return gaussian_binomial(a, b, q); };
    const LemmaParams p{n, k, kp, t, l, q, m, std::nullopt};
    const Nat num = g(n - t, kp - t) * g(n - t, k - t);

    const Nat lhs1 = fixed_m_lhs(l, g(kp, 1), g(kp - 1, t), g(n - t, k - t),
                                 q_power(q, (k - t) * (k - t)) * g(n - k, k - t), g(2 * kp, t + 1), g(kp, t + 1),
                                 g(n - t - 1, k - t - 1));
    const Nat lhs2 = fixed_m_lhs(l, g(k, 1), g(k - 1, t), g(n - t, kp - t),
                                 q_power(q, (kp - t) * (kp - t)) * g(n - kp, kp - t), g(2 * k, t + 1), g(k, t + 1),
                                 g(n - t - 1, kp - t - 1));
    return {make_report(LemmaId::UpperBound1, p, lhs1, Ratio(num, g(n - t - m, kp - t - m)), true),
            make_report(LemmaId::UpperBound2, p, lhs2, Ratio(num, g(n - t - m, k - t - m)), true)};
}

std::pair<LemmaReport, LemmaReport> check_upperbound2(Int n, Int k, Int kp, Int l, Int t, Int q) {
    Preconditions pre("check_upperbound2");
    need_ordering(pre, k, kp, t);
    pre.need(l >= 2, "l >= 2 (" + kv("l", l) + ")");
    pre.need(q >= 2, "q >= 2 (" + kv("q", q) + ")");
    if (t >= 1 && kp >= t + 1 && k >= kp && l >= 2) {
        const Nat thr = subspace_threshold(k, kp, l, t);
        pre.need(nat(std::max<Int>(n, 0)) >= thr, "n >= (2k-t+1)(t+1)+(k-t+1)kp+k+2l-1 (" + kv("n", n) +
                                                      ", needs n >= " + thr.str() + ")");
    }
    pre.enforce();

    auto g = [q](Int a, Int b) { return gaussian_binomial(a, b, q); };
    const LemmaParams p{n, k, kp, t, l, q, std::nullopt, std::nullopt};
    const Nat num = g(n - t, k - t) * g(n - t, kp - t);

    const Nat den1 = neighbourhood_den(l, g(kp - 1, t), g(2 * kp, t + 1), g(kp, t + 1), g(n - t - 1, k - t - 1));
    const Nat den2 = neighbourhood_den(l, g(k - 1, t), g(2 * k, t + 1), g(k, t + 1), g(n - t - 1, kp - t - 1));
    Nat sum1{0};
    Nat sum2{0};
    for (Int h = t; h <= kp; ++h) {
        // Both sums carry the weight q^{(k-h)(kp-h)}, symmetric in k and kp.
        sum1 += subspace_profile(n, k, kp, h, q);
        sum2 += q_power(q, (k - h) * (kp - h)) * g(kp, h) * g(n - kp, k - h);
    }
    return {make_report(LemmaId::UpperBoundSum1, p, Ratio(num, den1), nat(l) * sum1 + nat(l), false),
            make_report(LemmaId::UpperBoundSum2, p, Ratio(num, den2), nat(l) * sum2 + nat(l), false)};
}

// ---------------------------------------------------------------------------
// k = t+1 closed forms

Nat setupperbound_case1_lhs(Int kp, Int l, Int t) {
    const Nat pairs = binomial(l, 2);
    return nat(3 * l - 2) + Nat{2} * nat(l + kp * l - 1) * pairs + pairs * binomial(2 * kp, t + 1);
}

Nat setupperbound_case1_rhs(Int n, Int t) { return nat(n - t); }

Ratio setupperbound2_case1_lhs(Int n, Int l, Int t) {
    const Nat pairs = binomial(l, 2);
    const Nat den = (pairs + Nat{2}) * nat(l - 1) + nat(l) + pairs * binomial(2 * t + 2, t + 1);
    return Ratio(nat(n - t) * nat(n - t), den);
}

Nat setupperbound2_case1_rhs(Int n, Int l, Int t) { return nat(l) * nat(t + 1) * nat(n - t - 1) + nat(2 * l); }

Nat upperbound_case1_lhs(Int kp, Int l, Int t, Int q) {
    const Nat pairs = binomial(l, 2);
    // (q^{t+1}-1)/(q-1) written out rather than taken from gaussian_binomial.
    const Nat qt = divide_exact(q_power(q, t + 1) - Nat{1}, nat(q - 1));
    return nat(3 * l - 2) + Nat{2} * (qt * nat(l) + nat(l - 1)) * pairs +
           pairs * gaussian_binomial(2 * kp, t + 1, q);
}

Nat upperbound_case1_rhs(Int n, Int t, Int q) { return divide_exact(q_power(q, n - t) - Nat{1}, nat(q - 1)); }

Ratio upperbound2_case1_lhs(Int n, Int l, Int t, Int q) {
    const Nat pairs = binomial(l, 2);
    const Nat line = upperbound_case1_rhs(n, t, q);
    const Nat den = (pairs + Nat{2}) * nat(l - 1) + nat(l) + pairs * gaussian_binomial(2 * t + 2, t + 1, q);
    return Ratio(line * line, den);
}

Nat upperbound2_case1_rhs(Int n, Int l, Int t, Int q) {
    const Nat qt = divide_exact(q_power(q, t + 1) - Nat{1}, nat(q - 1));
    const Nat rest = divide_exact(q_power(q, n - t - 1) - Nat{1}, nat(q - 1));
    return nat(q) * nat(l) * qt * rest + nat(2 * l);
}

Int residual_petals_set(Int kp, Int l, Int t, Int containing) {
    const Int r = (1 + kp) * l;
    return r - containing * (kp - t) - (l - containing) * kp;
}

Nat residual_petals_subspace(Int kp, Int l, Int t, Int containing, Int q) {
    const Nat lines_kp = gaussian_binomial(kp, 1, q);
    const Nat lines_t = gaussian_binomial(t, 1, q);
    const Nat r = (lines_kp + Nat{1}) * nat(l);
    return r - nat(containing) * (lines_kp - lines_t) - nat(l - containing) * lines_kp;
}

// ---------------------------------------------------------------------------
// Sweep

void SweepConfig::validate() const {
    Preconditions pre("sweep config");
    for (Int v : t) pre.need(v >= 1, "t >= 1 (" + kv("t", v) + ")");
    for (Int v : k) pre.need(v >= 2, "k >= 2 (" + kv("k", v) + ")");
    for (Int v : l) pre.need(v >= 2, "l >= 2 (" + kv("l", v) + ")");
    for (Int v : q) pre.need(v >= 2, "q >= 2 (" + kv("q", v) + ")");
    if (kp) {
        for (Int v : *kp) pre.need(v >= 2, "kp >= 2 (" + kv("kp", v) + ")");
    }
    if (m) {
        for (Int v : *m) pre.need(v >= 0, "m >= 0 (" + kv("m", v) + ")");
    }
    for (Int v : n_policy.offsets) pre.need(v >= 0, "threshold offsets >= 0 (" + kv("d", v) + ")");
    for (Int v : n_policy.explicit_n) pre.need(v >= 1, "n >= 1 (" + kv("n", v) + ")");
    if (n_policy.kind == NPolicy::Kind::ThresholdPlus) pre.need(!n_policy.offsets.empty(), "threshold_plus needs offsets");
    pre.enforce();
}

namespace {

struct SweepTask {
    LemmaFamily family;
    Int n, k, kp, t, l, q, m;  // unused fields are 0

    auto operator<=>(const SweepTask&) const = default;
};

std::vector<LemmaReport> evaluate(const SweepTask& task) {
    std::vector<LemmaReport> out;
    auto both = [&out](std::pair<LemmaReport, LemmaReport> p) {
        out.push_back(std::move(p.first));
        out.push_back(std::move(p.second));
    };
    switch (task.family) {
        case LemmaFamily::SetMono: return check_setmono(task.n, task.k, task.kp, task.t);
        case LemmaFamily::SetUpperBound:
            both(check_setupperbound(task.n, task.k, task.kp, task.l, task.t, task.m));
            break;
        case LemmaFamily::SetUpperBoundSum: both(check_setupperbound2(task.n, task.k, task.kp, task.l, task.t)); break;
        case LemmaFamily::Mono: return check_mono(task.n, task.k, task.kp, task.t, task.q);
        case LemmaFamily::UpperBound:
            both(check_upperbound(task.n, task.k, task.kp, task.l, task.t, task.m, task.q));
            break;
        case LemmaFamily::UpperBoundSum:
            both(check_upperbound2(task.n, task.k, task.kp, task.l, task.t, task.q));
            break;
    }
    return out;
}

std::vector<Int> n_values(const NPolicy& policy, const Nat& min_n) {
    if (policy.kind == NPolicy::Kind::Explicit) return policy.explicit_n;
    const Int base = static_cast<Int>(min_n.to_u64());
    if (policy.kind == NPolicy::Kind::AtThreshold) return {base};
    std::vector<Int> out;
    for (Int d : policy.offsets) out.push_back(base + d);
    return out;
}

std::vector<SweepTask> expand(const SweepConfig& cfg) {
    std::vector<LemmaFamily> families = cfg.lemmas;
    if (families.empty()) {
        for (const auto& [fam, name] : kFamilyNames) families.push_back(fam);
    }
    std::set<SweepTask> tasks;
    for (Int t : cfg.t) {
        for (Int k : cfg.k) {
            if (k < t + 1) continue;
            std::vector<Int> kps;
            if (cfg.kp) {
                for (Int v : *cfg.kp) {
                    if (v >= t + 1 && v <= k) kps.push_back(v);
                }
            } else {
                for (Int v = t + 1; v <= k; ++v) kps.push_back(v);
            }
            for (Int kp : kps) {
                std::vector<Int> ms;
                if (cfg.m) {
                    for (Int v : *cfg.m) {
                        if (v >= 0 && v <= kp - t - 1) ms.push_back(v);
                    }
                } else {
                    for (Int v = 0; v <= kp - t - 1; ++v) ms.push_back(v);
                }
                for (LemmaFamily fam : families) {
                    const std::vector<Int> ls = family_uses_l(fam) ? cfg.l : std::vector<Int>{0};
                    const std::vector<Int> qs = family_uses_q(fam) ? cfg.q : std::vector<Int>{0};
                    const std::vector<Int> mlist = family_uses_m(fam) ? ms : std::vector<Int>{0};
                    if (cfg.l.empty() || (family_uses_q(fam) && cfg.q.empty())) continue;
                    for (Int l : ls) {
                        const Nat min_n = family_min_n(fam, k, kp, family_uses_l(fam) ? l : 2, t);
                        for (Int n : n_values(cfg.n_policy, min_n)) {
                            for (Int q : qs) {
                                for (Int m : mlist) tasks.insert(SweepTask{fam, n, k, kp, t, l, q, m});
                            }
                        }
                    }
                }
            }
        }
    }
    return {tasks.begin(), tasks.end()};
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config, unsigned workers) {
    config.validate();
    const std::vector<SweepTask> tasks = expand(config);
    std::vector<std::vector<LemmaReport>> results(tasks.size());

    std::vector<std::exception_ptr> errors(tasks.size());
    auto run = [&](std::size_t i) {
        try {
            results[i] = evaluate(tasks[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (workers <= 1 || tasks.size() < 2) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < tasks.size(); i = next++) run(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    // Lowest failing task wins so the diagnostic does not depend on scheduling.
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    SweepResult out;
    for (auto& batch : results) {
        for (auto& r : batch) out.reports.push_back(std::move(r));
    }
    std::stable_sort(out.reports.begin(), out.reports.end(), [](const LemmaReport& a, const LemmaReport& b) {
        if (a.id != b.id) return a.id < b.id;
        return a.params < b.params;
    });
    out.summary.total = out.reports.size();
    for (const auto& r : out.reports) (r.holds ? out.summary.holds : out.summary.violations)++;
    return out;
}

}  // namespace wcross
