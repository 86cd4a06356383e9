#include "wcross/search_engine.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "wcross/errors.hpp"

namespace wcross {

bool CandidatePool::full_layers() const {
    if (kind == PoolKind::Sets) {
        return Nat(set_f.size()) == binomial(n, k) && Nat(set_g.size()) == binomial(n, kp);
    }
    return Nat(sub_f.size()) == gaussian_binomial(n, k, q) && Nat(sub_g.size()) == gaussian_binomial(n, kp, q);
}

CandidatePool set_layer_pool(Int n, Int k, Int kp) { return set_pool(set_layer(n, k), set_layer(n, kp)); }

CandidatePool subspace_layer_pool(Int q, Int n, Int k, Int kp, std::uint64_t cap) {
    return subspace_pool(enumerate_subspaces(n, k, q, cap), enumerate_subspaces(n, kp, q, cap));
}

CandidatePool set_pool(SetFamily f, SetFamily g) {
    f.validate();
    g.validate();
    if (f.n != g.n) throw PreconditionError("pool families over different universes");
    CandidatePool p;
    p.kind = PoolKind::Sets;
    p.n = f.n;
    p.k = f.k;
    p.kp = g.k;
    p.set_f = std::move(f);
    p.set_g = std::move(g);
    return p;
}

CandidatePool subspace_pool(SubspaceFamily f, SubspaceFamily g) {
    f.validate();
    g.validate();
    if (f.n != g.n || f.q != g.q) throw PreconditionError("pool families over different spaces");
    CandidatePool p;
    p.kind = PoolKind::Subspaces;
    p.n = f.n;
    p.q = f.q;
    p.k = f.k;
    p.kp = g.k;
    p.sub_f = std::move(f);
    p.sub_g = std::move(g);
    return p;
}

IntersectionMatrix pool_matrix(const CandidatePool& pool) {
    return pool.kind == PoolKind::Sets ? intersection_matrix(pool.set_f, pool.set_g)
                                       : intersection_matrix(pool.sub_f, pool.sub_g);
}

Nat star_lower_bound(Int n, Int k, Int kp, Int t) { return binomial(n - t, k - t) * binomial(n - t, kp - t); }

Nat star_lower_bound(Int n, Int k, Int kp, Int t, Int q) {
    return gaussian_binomial(n - t, k - t, q) * gaussian_binomial(n - t, kp - t, q);
}

Nat star_lower_bound(const CandidatePool& pool, Int t) {
    return pool.kind == PoolKind::Sets ? star_lower_bound(pool.n, pool.k, pool.kp, t)
                                       : star_lower_bound(pool.n, pool.k, pool.kp, t, pool.q);
}

namespace {

template <class Core, class Members, class Contains>
StarPair best_star(const std::vector<Core>& cores, const Members& f, const Members& g, Contains contains) {
    StarPair best;
    for (const Core& core : cores) {
        StarPair s;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (contains(f[i], core)) s.f.push_back(i);
        }
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (contains(g[j], core)) s.g.push_back(j);
        }
        s.product = Nat(s.f.size()) * Nat(s.g.size());
        if (s.product > best.product) best = std::move(s);
    }
    return best;
}

void require_lt(Int l, Int t) {
    if (l < 1 || t < 1) throw PreconditionError("search needs l >= 1 and t >= 1");
}

}  // namespace

StarPair best_star_in_pool(const CandidatePool& pool, Int t) {
    require_lt(1, t);
    if (pool.kind == PoolKind::Sets) {
        std::set<SetMask, decltype(&set_lex_less)> cores(&set_lex_less);
        for (SetMask m : pool.set_f.members) {
            if (set_size(m) < t) continue;
            for (SetMask c : set_star(set_size(m), t, 0).members) {
                // map the t-subset of positions onto the elements of m
                SetMask core = 0;
                const std::vector<Int> elems = set_elements(m);
                for (Int pos : set_elements(c)) core |= SetMask{1} << (elems[static_cast<std::size_t>(pos - 1)] - 1);
                cores.insert(core);
            }
        }
        const std::vector<SetMask> list(cores.begin(), cores.end());
        return best_star(list, pool.set_f.members, pool.set_g.members,
                         [](SetMask a, SetMask c) { return (a & c) == c; });
    }
    std::set<Subspace> cores;
    for (const auto& m : pool.sub_f.members) {
        if (m.dim() < t) continue;
        for (auto& c : subspaces_within(m, t)) cores.insert(std::move(c));
    }
    const std::vector<Subspace> list(cores.begin(), cores.end());
    return best_star(list, pool.sub_f.members, pool.sub_g.members,
                     [](const Subspace& a, const Subspace& c) { return contains(a, c); });
}

namespace {

using Mask = std::uint64_t;

std::vector<std::size_t> bits_of(Mask m) {
    std::vector<std::size_t> out;
    while (m) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

template <class Fn>
void for_each_subset(const std::vector<std::size_t>& items, std::size_t l, Fn&& fn) {
    const std::size_t m = items.size();
    if (l > m) return;
    std::vector<std::size_t> idx(l);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<std::size_t> pick(l);
    while (true) {
        for (std::size_t i = 0; i < l; ++i) pick[i] = items[idx[i]];
        if (!fn(pick)) return;
        std::size_t i = l;
        while (i > 0 && idx[i - 1] == m - l + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < l; ++j) idx[j] = idx[j - 1] + 1;
    }
}

void fill_star_fields(SearchResult& r, const CandidatePool& pool, Int t) {
    r.star_lower_bound = star_lower_bound(pool, t);
    r.star_in_pool = best_star_in_pool(pool, t).product;
}

}  // namespace

// ---------------------------------------------------------------------------
// Exhaustive oracle

SearchResult max_product_naive(const CandidatePool& pool, Int l, Int t, std::size_t guard) {
    require_lt(l, t);
    const std::size_t a = pool.size_f();
    const std::size_t b = pool.size_g();
    if (a + b > guard || a > 62 || b > 62) {
        throw LimitError("naive search: pool has " + std::to_string(a) + " + " + std::to_string(b) +
                         " candidates, guard is " + std::to_string(guard));
    }
    const IntersectionMatrix w = pool_matrix(pool);
    const Int threshold = l * l * t - l + 1;
    const auto ul = static_cast<std::size_t>(l);

    std::uint64_t best = 0;
    Mask best_s = 0, best_t = 0;
    std::uint64_t visited = 0;
    auto witness_less = [](Mask s1, Mask t1, Mask s2, Mask t2) {
        const auto a1 = bits_of(s1), a2 = bits_of(s2);
        if (a1 != a2) return a1 < a2;
        return bits_of(t1) < bits_of(t2);
    };

    std::vector<std::vector<Mask>> bad_by_low(b);
    for (Mask s = 1; s < (Mask{1} << a); ++s) {
        const auto size_s = static_cast<std::uint64_t>(std::popcount(s));
        if (size_s * b < best) continue;
        // Bad l-subsets of G: those forming a violating tuple with some l-subset of s.
        for (auto& v : bad_by_low) v.clear();
        if (size_s >= ul) {
            std::vector<std::size_t> all_g(b);
            std::iota(all_g.begin(), all_g.end(), std::size_t{0});
            std::set<Mask> bad;
            for_each_subset(bits_of(s), ul, [&](const std::vector<std::size_t>& rows) {
                for_each_subset(all_g, ul, [&](const std::vector<std::size_t>& cols) {
                    Int sum = 0;
                    for (std::size_t i : rows) {
                        for (std::size_t j : cols) sum += w.at(i, j);
                    }
                    if (sum < threshold) {
                        Mask m = 0;
                        for (std::size_t j : cols) m |= Mask{1} << j;
                        bad.insert(m);
                    }
                    return true;
                });
                return true;
            });
            for (Mask m : bad) bad_by_low[static_cast<std::size_t>(std::countr_zero(m))].push_back(m);
        }
        for (Mask tm = 1; tm < (Mask{1} << b); ++tm) {
            const auto size_t_ = static_cast<std::uint64_t>(std::popcount(tm));
            const std::uint64_t product = size_s * size_t_;
            if (product < best) continue;
            ++visited;
            bool ok = true;
            if (size_t_ >= ul) {
                for (Mask rest = tm; rest && ok; rest &= rest - 1) {
                    for (Mask m : bad_by_low[static_cast<std::size_t>(std::countr_zero(rest))]) {
                        if ((m & tm) == m) {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            if (!ok) continue;
            if (product > best || witness_less(s, tm, best_s, best_t)) {
                best = product;
                best_s = s;
                best_t = tm;
            }
        }
    }

    SearchResult r;
    r.best_product = Nat(best);
    r.best_f = bits_of(best_s);
    r.best_g = bits_of(best_t);
    r.nodes_explored = visited;
    r.optimal = true;
    r.vacuous = r.best_f.size() < ul || r.best_g.size() < ul;
    fill_star_fields(r, pool, t);
    return r;
}

// ---------------------------------------------------------------------------
// Branch and bound

namespace {

class BranchAndBound {
public:
    BranchAndBound(const IntersectionMatrix& w, Int l, Int t, const SearchOptions& opt)
        : w_(w), wt_(w.transposed()), l_(static_cast<std::size_t>(l)), t_(t), threshold_(l * l * t - l + 1),
          opt_(opt) {}

    void seed(const std::vector<std::size_t>& f, const std::vector<std::size_t>& g) {
        best_ = f.size() * g.size();
        for (std::size_t i : f) best_s_ |= Mask{1} << i;
        for (std::size_t j : g) best_t_ |= Mask{1} << j;
    }

    void run(std::optional<std::size_t> forced_f) {
        // Decreasing degree: F candidate i counts partners j with w(i,j) >= t.
        struct Item {
            bool is_f;
            std::size_t idx;
            std::size_t degree;
        };
        std::vector<Item> items;
        const Int t = t_;
        for (std::size_t i = 0; i < w_.rows; ++i) {
            std::size_t d = 0;
            for (std::size_t j = 0; j < w_.cols; ++j) d += w_.at(i, j) >= t;
            items.push_back({true, i, d});
        }
        for (std::size_t j = 0; j < w_.cols; ++j) {
            std::size_t d = 0;
            for (std::size_t i = 0; i < w_.rows; ++i) d += w_.at(i, j) >= t;
            items.push_back({false, j, d});
        }
        std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.degree > b.degree; });
        for (const auto& it : items) order_.emplace_back(it.is_f, it.idx);

        Mask uf = w_.rows == 64 ? ~Mask{0} : (Mask{1} << w_.rows) - 1;
        Mask ug = w_.cols == 64 ? ~Mask{0} : (Mask{1} << w_.cols) - 1;
        Mask s = 0;
        if (forced_f) {
            s = Mask{1} << *forced_f;
            uf &= ~s;
        }
        start_ = std::chrono::steady_clock::now();
        dfs(s, 0, uf, ug);
    }

    std::uint64_t best() const { return best_; }
    Mask best_s() const { return best_s_; }
    Mask best_t() const { return best_t_; }
    std::uint64_t nodes() const { return nodes_; }
    bool aborted() const { return aborted_; }

private:
    // Whether adding row x of m keeps (rows, cols) free of violating tuples.
    // Only tuples through x are new; for each choice of the other l-1 rows the
    // worst columns are the l smallest column sums.
    bool addable(const IntersectionMatrix& m, std::size_t x, Mask rows, Mask cols) const {
        const auto nr = static_cast<std::size_t>(std::popcount(rows)) + 1;
        const auto nc = static_cast<std::size_t>(std::popcount(cols));
        if (nr < l_ || nc < l_) return true;
        const std::vector<std::size_t> rl = bits_of(rows);
        const std::vector<std::size_t> cl = bits_of(cols);
        std::vector<Int> sums(cl.size());
        bool ok = true;
        for_each_subset(rl, l_ - 1, [&](const std::vector<std::size_t>& others) {
            for (std::size_t c = 0; c < cl.size(); ++c) {
                Int s = m.at(x, cl[c]);
                for (std::size_t i : others) s += m.at(i, cl[c]);
                sums[c] = s;
            }
            std::nth_element(sums.begin(), sums.begin() + static_cast<std::ptrdiff_t>(l_ - 1), sums.end());
            Int total = 0;
            for (std::size_t c = 0; c < l_; ++c) total += sums[c];
            ok = total >= threshold_;
            return ok;
        });
        return ok;
    }

    bool out_of_budget() {
        if (opt_.node_budget && nodes_ > *opt_.node_budget) return true;
        if (opt_.time_budget && (nodes_ & 255U) == 0 &&
            std::chrono::steady_clock::now() - start_ > *opt_.time_budget) {
            return true;
        }
        return false;
    }

    void dfs(Mask s, Mask t, Mask uf, Mask ug) {
        if (aborted_) return;
        ++nodes_;
        if (out_of_budget()) {
            aborted_ = true;
            return;
        }
        const auto ns = static_cast<std::uint64_t>(std::popcount(s));
        const auto nt = static_cast<std::uint64_t>(std::popcount(t));
        if (ns * nt > best_) {
            best_ = ns * nt;
            best_s_ = s;
            best_t_ = t;
        }
        auto bound = [&] {
            return (ns + static_cast<std::uint64_t>(std::popcount(uf))) *
                   (nt + static_cast<std::uint64_t>(std::popcount(ug)));
        };
        if (bound() <= best_) return;

        // Forward check: drop undecided candidates that can no longer be added.
        for (Mask r = uf; r; r &= r - 1) {
            const auto x = static_cast<std::size_t>(std::countr_zero(r));
            if (!addable(w_, x, s, t)) uf &= ~(Mask{1} << x);
        }
        for (Mask r = ug; r; r &= r - 1) {
            const auto y = static_cast<std::size_t>(std::countr_zero(r));
            if (!addable(wt_, y, t, s)) ug &= ~(Mask{1} << y);
        }
        if (bound() <= best_) return;

        // Next undecided candidate in branching order.
        for (const auto& [is_f, idx] : order_) {
            const Mask bit = Mask{1} << idx;
            if (is_f && (uf & bit)) {
                dfs(s | bit, t, uf & ~bit, ug);
                dfs(s, t, uf & ~bit, ug);
                return;
            }
            if (!is_f && (ug & bit)) {
                dfs(s, t | bit, uf, ug & ~bit);
                dfs(s, t, uf, ug & ~bit);
                return;
            }
        }
    }

    const IntersectionMatrix& w_;
    IntersectionMatrix wt_;
    std::size_t l_;
    Int t_;
    Int threshold_;
    SearchOptions opt_;
    std::vector<std::pair<bool, std::size_t>> order_;

    std::uint64_t best_ = 0;
    Mask best_s_ = 0;
    Mask best_t_ = 0;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

SearchResult max_product_bb(const CandidatePool& pool, Int l, Int t, const SearchOptions& options) {
    require_lt(l, t);
    const std::size_t a = pool.size_f();
    const std::size_t b = pool.size_g();
    const std::size_t limit = std::min<std::size_t>(options.max_pool_side, 64);
    if (a > limit || b > limit) {
        throw LimitError("branch and bound: pool has " + std::to_string(a) + " x " + std::to_string(b) +
                         " candidates, limit is " + std::to_string(limit) + " per side");
    }
    std::optional<std::size_t> forced;
    if (options.symmetry) {
        if (pool.kind != PoolKind::Sets || !pool.full_layers()) {
            throw PreconditionError("symmetry reduction needs full set layers on both sides");
        }
        if (pool.k >= 1) {
            const SetMask first = (SetMask{1} << pool.k) - 1;
            const auto it = std::find(pool.set_f.members.begin(), pool.set_f.members.end(), first);
            forced = static_cast<std::size_t>(it - pool.set_f.members.begin());
        }
    }

    const IntersectionMatrix w = pool_matrix(pool);
    const StarPair star = best_star_in_pool(pool, t);
    BranchAndBound bb(w, l, t, options);
    bb.seed(star.f, star.g);
    bb.run(forced);

    SearchResult r;
    r.best_product = Nat(bb.best());
    r.best_f = bits_of(bb.best_s());
    r.best_g = bits_of(bb.best_t());
    r.nodes_explored = bb.nodes();
    r.optimal = !bb.aborted();
    r.vacuous = r.best_f.size() < static_cast<std::size_t>(l) || r.best_g.size() < static_cast<std::size_t>(l);
    r.star_lower_bound = star_lower_bound(pool, t);
    r.star_in_pool = star.product;
    return r;
}

bool certify(const SearchResult& result, const CandidatePool& pool, Int l, Int t) {
    auto valid = [](const std::vector<std::size_t>& idx, std::size_t size) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] >= size || (i > 0 && idx[i] <= idx[i - 1])) return false;
        }
        return true;
    };
    if (!valid(result.best_f, pool.size_f()) || !valid(result.best_g, pool.size_g())) return false;
    if (Nat(result.best_f.size()) * Nat(result.best_g.size()) != result.best_product) return false;

    ConditionReport cond;
    if (pool.kind == PoolKind::Sets) {
        SetFamily f{pool.n, pool.k, {}}, g{pool.n, pool.kp, {}};
        for (std::size_t i : result.best_f) f.members.push_back(pool.set_f.members[i]);
        for (std::size_t j : result.best_g) g.members.push_back(pool.set_g.members[j]);
        cond = is_weakly_cross_intersecting(f, g, l, t);
    } else {
        SubspaceFamily f{pool.q, pool.n, pool.k, {}}, g{pool.q, pool.n, pool.kp, {}};
        for (std::size_t i : result.best_f) f.members.push_back(pool.sub_f.members[i]);
        for (std::size_t j : result.best_g) g.members.push_back(pool.sub_g.members[j]);
        cond = is_weakly_cross_intersecting(f, g, l, t);
    }
    return cond.satisfied && cond.vacuous == result.vacuous;
}

}  // namespace wcross
