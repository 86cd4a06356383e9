#include "wcross/family_analysis.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "wcross/errors.hpp"

namespace wcross {

namespace {

struct SetTraits {
    using Member = SetMask;
    static Int meet(SetMask a, SetMask b) { return set_size(a & b); }
    static SetMask intersect(SetMask a, SetMask b) { return a & b; }
    static bool contains(SetMask a, SetMask sub) { return (a & sub) == sub; }
    static Int size(SetMask a) { return set_size(a); }
    struct Less {
        bool operator()(SetMask a, SetMask b) const { return set_lex_less(a, b); }
    };
};

struct SubspaceTraits {
    using Member = Subspace;
    static Int meet(const Subspace& a, const Subspace& b) { return dim_intersection(a, b); }
    static Subspace intersect(const Subspace& a, const Subspace& b) { return wcross::intersect(a, b); }
    static bool contains(const Subspace& a, const Subspace& sub) { return wcross::contains(a, sub); }
    static Int size(const Subspace& a) { return a.dim(); }
    using Less = std::less<Subspace>;
};

void require_same_universe(const SetFamily& f, const SetFamily& g) {
    if (f.n != g.n) {
        throw PreconditionError("families over different universes (n = " + std::to_string(f.n) + " and " +
                                std::to_string(g.n) + ")");
    }
}

void require_same_universe(const SubspaceFamily& f, const SubspaceFamily& g) {
    if (f.n != g.n || f.q != g.q) {
        throw PreconditionError("families over different spaces (q=" + std::to_string(f.q) + ", n=" +
                                std::to_string(f.n) + " and q=" + std::to_string(g.q) + ", n=" +
                                std::to_string(g.n) + ")");
    }
}

template <class Traits, class Members>
IntersectionMatrix build_matrix(const Members& f, const Members& g) {
    IntersectionMatrix m{f.size(), g.size(), std::vector<Int>(f.size() * g.size())};
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) m.at(i, j) = Traits::meet(f[i], g[j]);
    }
    return m;
}

// Calls fn(subset) for every l-subset of [0, m) in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t m, std::size_t l, Fn&& fn) {
    if (l > m) return;
    std::vector<std::size_t> idx(l);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        fn(idx);
        std::size_t i = l;
        while (i > 0 && idx[i - 1] == m - l + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < l; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

IntersectionMatrix IntersectionMatrix::transposed() const {
    IntersectionMatrix t{cols, rows, std::vector<Int>(w.size())};
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    }
    return t;
}

IntersectionMatrix intersection_matrix(const SetFamily& f, const SetFamily& g) {
    require_same_universe(f, g);
    return build_matrix<SetTraits>(f.members, g.members);
}

IntersectionMatrix intersection_matrix(const SubspaceFamily& f, const SubspaceFamily& g) {
    require_same_universe(f, g);
    return build_matrix<SubspaceTraits>(f.members, g.members);
}

TupleMinimum min_tuple_sum(const IntersectionMatrix& w, Int l) {
    if (l < 1) throw PreconditionError("min_tuple_sum: l must be at least 1");
    const auto ul = static_cast<std::size_t>(l);
    if (ul > w.rows || ul > w.cols) {
        throw PreconditionError("min_tuple_sum: l = " + std::to_string(l) + " exceeds the matrix size " +
                                std::to_string(w.rows) + "x" + std::to_string(w.cols));
    }
    // Enumerate subsets of the smaller side ("outer"); the other side is chosen greedily.
    const bool flip = w.rows < w.cols;
    const IntersectionMatrix m = flip ? w.transposed() : w;

    std::optional<TupleMinimum> best;
    std::vector<Int> line(m.rows);
    std::vector<std::size_t> order(m.rows);
    for_each_subset(m.cols, ul, [&](const std::vector<std::size_t>& outer) {
        for (std::size_t i = 0; i < m.rows; ++i) {
            Int s = 0;
            for (std::size_t j : outer) s += m.at(i, j);
            line[i] = s;
        }
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(ul), order.end(),
                          [&](std::size_t a, std::size_t b) { return line[a] != line[b] ? line[a] < line[b] : a < b; });
        std::vector<std::size_t> inner(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(ul));
        std::sort(inner.begin(), inner.end());
        Int sum = 0;
        for (std::size_t i : inner) sum += line[i];

        TupleMinimum cand{sum, flip ? TupleWitness{outer, inner} : TupleWitness{inner, outer}};
        if (!best || cand.min_sum < best->min_sum ||
            (cand.min_sum == best->min_sum && cand.witness < best->witness)) {
            best = std::move(cand);
        }
    });
    return *best;
}

ConditionReport evaluate_condition(const IntersectionMatrix& w, Int l, Int t) {
    if (l < 1 || t < 1) throw PreconditionError("condition needs l >= 1 and t >= 1");
    ConditionReport r;
    r.threshold = l * l * t - l + 1;
    const auto ul = static_cast<std::size_t>(l);
    if (w.rows < ul || w.cols < ul) {
        r.vacuous = true;
        r.satisfied = true;
        return r;
    }
    TupleMinimum m = min_tuple_sum(w, l);
    r.min_sum = m.min_sum;
    r.witness = std::move(m.witness);
    r.satisfied = *r.min_sum >= r.threshold;
    return r;
}

ConditionReport is_weakly_cross_intersecting(const SetFamily& f, const SetFamily& g, Int l, Int t) {
    return evaluate_condition(intersection_matrix(f, g), l, t);
}

ConditionReport is_weakly_cross_intersecting(const SubspaceFamily& f, const SubspaceFamily& g, Int l, Int t) {
    return evaluate_condition(intersection_matrix(f, g), l, t);
}

// ---------------------------------------------------------------------------
// Sunflowers

namespace {

// Bron–Kerbosch with pivoting over an explicit adjacency matrix.
class CliqueLister {
public:
    CliqueLister(const std::vector<std::vector<bool>>& adj, std::size_t min_size)
        : adj_(adj), min_size_(min_size) {}

    std::vector<std::vector<std::size_t>> run() {
        std::vector<std::size_t> p(adj_.size());
        std::iota(p.begin(), p.end(), std::size_t{0});
        std::vector<std::size_t> r;
        expand(r, p, {});
        std::sort(out_.begin(), out_.end());
        return std::move(out_);
    }

private:
    void expand(std::vector<std::size_t>& r, std::vector<std::size_t> p, std::vector<std::size_t> x) {
        if (p.empty() && x.empty()) {
            if (r.size() >= min_size_) {
                std::vector<std::size_t> c = r;
                std::sort(c.begin(), c.end());
                out_.push_back(std::move(c));
            }
            return;
        }
        if (r.size() + p.size() < min_size_) return;
        // pivot: vertex of P ∪ X with most neighbours in P
        std::size_t pivot = p.empty() ? x.front() : p.front();
        std::size_t best = 0;
        for (const auto* side : {&p, &x}) {
            for (std::size_t u : *side) {
                std::size_t d = 0;
                for (std::size_t v : p) d += adj_[u][v];
                if (d > best) best = d, pivot = u;
            }
        }
        const std::vector<std::size_t> candidates = [&] {
            std::vector<std::size_t> c;
            for (std::size_t v : p) {
                if (!adj_[pivot][v]) c.push_back(v);
            }
            return c;
        }();
        for (std::size_t v : candidates) {
            std::vector<std::size_t> np, nx;
            for (std::size_t u : p) {
                if (adj_[v][u]) np.push_back(u);
            }
            for (std::size_t u : x) {
                if (adj_[v][u]) nx.push_back(u);
            }
            r.push_back(v);
            expand(r, std::move(np), std::move(nx));
            r.pop_back();
            p.erase(std::find(p.begin(), p.end(), v));
            x.push_back(v);
        }
    }

    const std::vector<std::vector<bool>>& adj_;
    std::size_t min_size_;
    std::vector<std::vector<std::size_t>> out_;
};

template <class Traits, class Family>
std::vector<Sunflower<typename Traits::Member>> sunflowers_impl(const Family& f, Int t, std::size_t u) {
    using Member = typename Traits::Member;
    f.validate();
    if (t < 0 || t >= f.k) throw PreconditionError("find_sunflowers: need 0 <= t < k");
    if (u < 2) throw PreconditionError("find_sunflowers: need u >= 2");

    const auto& ms = f.members;
    std::set<Member, typename Traits::Less> kernels;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        for (std::size_t j = i + 1; j < ms.size(); ++j) {
            if (Traits::meet(ms[i], ms[j]) == t) kernels.insert(Traits::intersect(ms[i], ms[j]));
        }
    }

    std::vector<Sunflower<Member>> out;
    for (const Member& kernel : kernels) {
        std::vector<std::size_t> verts;
        for (std::size_t i = 0; i < ms.size(); ++i) {
            if (Traits::contains(ms[i], kernel)) verts.push_back(i);
        }
        if (verts.size() < u) continue;
        // Both endpoints contain the kernel, so meeting in dimension t means
        // meeting exactly in the kernel.
        std::vector<std::vector<bool>> adj(verts.size(), std::vector<bool>(verts.size(), false));
        for (std::size_t a = 0; a < verts.size(); ++a) {
            for (std::size_t b = a + 1; b < verts.size(); ++b) {
                adj[a][b] = adj[b][a] = Traits::meet(ms[verts[a]], ms[verts[b]]) == t;
            }
        }
        for (const auto& clique : CliqueLister(adj, u).run()) {
            Sunflower<Member> s{kernel, {}};
            for (std::size_t v : clique) s.petal_indices.push_back(verts[v]);
            out.push_back(std::move(s));
        }
    }
    return out;
}

template <class Traits, class Family, class Tuple>
EPartition classify_impl(const Family& f, const Tuple& tuple, Int t) {
    if (tuple.empty()) throw PreconditionError("classify_e_partition: empty tuple");
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        for (std::size_t j = i + 1; j < tuple.size(); ++j) {
            if (tuple[i] == tuple[j]) throw PreconditionError("classify_e_partition: tuple members are not distinct");
        }
    }
    EPartition p;
    for (std::size_t idx = 0; idx < f.members.size(); ++idx) {
        std::size_t at_t = 0;
        bool above = false;
        for (const auto& g : tuple) {
            const Int a = Traits::meet(f.members[idx], g);
            if (a == t) ++at_t;
            if (a > t) above = true;
        }
        if (above) {
            p.e3.push_back(idx);
        } else if (at_t == 0) {
            p.e.push_back(idx);
        } else if (at_t == 1) {
            p.e1.push_back(idx);
        } else {
            p.e2.push_back(idx);
        }
    }
    return p;
}

}  // namespace

std::vector<SetSunflower> find_sunflowers(const SetFamily& f, Int t, std::size_t u) {
    return sunflowers_impl<SetTraits>(f, t, u);
}

std::vector<SubspaceSunflower> find_sunflowers(const SubspaceFamily& f, Int t, std::size_t u) {
    return sunflowers_impl<SubspaceTraits>(f, t, u);
}

EPartition classify_e_partition(const SetFamily& f, const std::vector<SetMask>& tuple, Int t) {
    for (SetMask g : tuple) {
        if (f.n < 64 && (g >> f.n) != 0) throw PreconditionError("classify_e_partition: tuple member outside [n]");
    }
    return classify_impl<SetTraits>(f, tuple, t);
}

EPartition classify_e_partition(const SubspaceFamily& f, const std::vector<Subspace>& tuple, Int t) {
    for (const auto& g : tuple) {
        if (g.q() != f.q || g.ambient_dim() != f.n) {
            throw PreconditionError("classify_e_partition: tuple member in a different space");
        }
    }
    return classify_impl<SubspaceTraits>(f, tuple, t);
}

std::optional<ExtremalStructure<SetMask>> extremal_structure(const SetFamily& f) {
    if (f.members.empty()) throw PreconditionError("extremal_structure: empty family");
    f.validate();
    SetMask core = f.members.front();
    for (SetMask m : f.members) core &= m;
    if (core == 0) return std::nullopt;
    const Int c = set_size(core);
    return ExtremalStructure<SetMask>{core, Nat(f.size()) == binomial(f.n - c, f.k - c)};
}

std::optional<ExtremalStructure<Subspace>> extremal_structure(const SubspaceFamily& f) {
    if (f.members.empty()) throw PreconditionError("extremal_structure: empty family");
    f.validate();
    Subspace core = f.members.front();
    for (const auto& m : f.members) {
        if (core.dim() == 0) break;
        core = intersect(core, m);
    }
    if (core.dim() == 0) return std::nullopt;
    const Int c = core.dim();
    const bool full = Nat(f.size()) == gaussian_binomial(f.n - c, f.k - c, f.q);
    return ExtremalStructure<Subspace>{std::move(core), full};
}

namespace {

template <class Traits, class Family>
KernelContainment<typename Traits::Member> containment_impl(const Family& f, const Family& g, Int l, Int t,
                                                            std::size_t r) {
    const ConditionReport cond = is_weakly_cross_intersecting(f, g, l, t);
    if (cond.vacuous) {
        throw PreconditionError("verify_kernel_containment: g has fewer than l members, nothing to check");
    }
    if (!cond.satisfied) {
        throw PreconditionError("verify_kernel_containment: the pair is not l-weakly cross t-intersecting");
    }
    auto flowers = sunflowers_impl<Traits>(f, t, r);
    if (flowers.empty()) {
        throw PreconditionError("verify_kernel_containment: f has no sunflower with kernel size t and at least " +
                                std::to_string(r) + " petals");
    }
    KernelContainment<typename Traits::Member> out{std::move(flowers.front()), r, {}};
    for (std::size_t j = 0; j < g.members.size(); ++j) {
        if (!Traits::contains(g.members[j], out.sunflower.kernel)) out.violating.push_back(j);
    }
    return out;
}

}  // namespace

KernelContainment<SetMask> verify_kernel_containment(const SetFamily& f, const SetFamily& g, Int l, Int t) {
    const auto r = static_cast<std::size_t>((1 + g.k) * l);
    return containment_impl<SetTraits>(f, g, l, t, r);
}

KernelContainment<Subspace> verify_kernel_containment(const SubspaceFamily& f, const SubspaceFamily& g, Int l,
                                                      Int t) {
    const Nat r = (gaussian_binomial(g.k, 1, g.q) + Nat(1)) * Nat(static_cast<std::uint64_t>(l));
    return containment_impl<SubspaceTraits>(f, g, l, t, static_cast<std::size_t>(r.to_u64()));
}

}  // namespace wcross
