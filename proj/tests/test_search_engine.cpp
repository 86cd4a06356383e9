#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "wcross/errors.hpp"
#include "wcross/search_engine.hpp"

using namespace wcross;

namespace {

CandidatePool random_subspace_subpool(std::mt19937_64& rng, std::size_t max_side) {
    const auto layer = enumerate_subspaces(4, 2, 2);
    std::uniform_int_distribution<std::size_t> sz(0, max_side);
    auto draw = [&] {
        std::vector<Subspace> all = layer.members;
        std::shuffle(all.begin(), all.end(), rng);
        all.erase(all.begin() + static_cast<std::ptrdiff_t>(sz(rng)), all.end());
        std::sort(all.begin(), all.end());
        return SubspaceFamily{2, 4, 2, all};
    };
    return subspace_pool(draw(), draw());
}

}  // namespace

TEST_CASE("star lower bound") {
    CHECK(star_lower_bound(4, 2, 2, 1) == Nat(9));
    CHECK(star_lower_bound(5, 2, 2, 1) == Nat(16));
    CHECK(star_lower_bound(4, 2, 2, 1, 2) == Nat(49));
    const auto core = Subspace::coordinate(2, 4, {0});
    CHECK(Nat(build_star(4, 2, 2, core).size() * build_star(4, 2, 2, core).size()) == Nat(49));
    const auto sp = best_star_in_pool(set_layer_pool(5, 3, 2), 1);
    CHECK(sp.product == star_lower_bound(5, 3, 2, 1));
}

TEST_CASE("naive oracle") {
    const auto r = max_product_naive(set_layer_pool(4, 2, 2), 1, 1);
    CHECK(r.best_product == Nat(9));
    CHECK(r.optimal);
    CHECK(certify(r, set_layer_pool(4, 2, 2), 1, 1));

    const auto empty = set_pool(SetFamily{4, 2, {}}, SetFamily{4, 2, {}});
    const auto e = max_product_naive(empty, 1, 1);
    CHECK(e.best_product == Nat(0));
    CHECK(e.vacuous);

    const auto single = set_pool(SetFamily{4, 2, {make_set({1, 2})}}, SetFamily{4, 2, {make_set({2, 3})}});
    CHECK(max_product_naive(single, 1, 1).best_product == Nat(1));

    CHECK_THROWS_AS(max_product_naive(set_layer_pool(6, 2, 2), 1, 1), LimitError);
    CHECK_THROWS_AS(max_product_naive(set_layer_pool(4, 2, 2), 0, 1), PreconditionError);
}

TEST_CASE("branch and bound matches the oracle on every set sub-pool of [4]") {
    const auto layer = set_layer(4, 2);
    const std::size_t m = layer.size();
    // every pair of sub-pools would be 2^12 pairs; take all sub-pools for F
    // against the full layer and against its complement-free halves
    for (std::uint32_t fm = 0; fm < (1U << m); ++fm) {
        for (std::uint32_t gm : {0x3FU, 0x15U, 0x2AU, fm}) {
            SetFamily f{4, 2, {}}, g{4, 2, {}};
            for (std::size_t i = 0; i < m; ++i) {
                if (fm >> i & 1U) f.members.push_back(layer.members[i]);
                if (gm >> i & 1U) g.members.push_back(layer.members[i]);
            }
            const auto pool = set_pool(f, g);
            for (Int l : {1, 2}) {
                const auto naive = max_product_naive(pool, l, 1);
                const auto bb = max_product_bb(pool, l, 1);
                CHECK(bb.best_product == naive.best_product);
                CHECK(bb.optimal);
                CHECK(certify(bb, pool, l, 1));
                CHECK(certify(naive, pool, l, 1));
                if (bb.full_star_in_pool()) CHECK(bb.best_product >= bb.star_lower_bound);
            }
        }
    }
}

TEST_CASE("branch and bound on full layers") {
    const auto p4 = set_layer_pool(4, 2, 2);
    CHECK(max_product_bb(p4, 1, 1).best_product == Nat(9));
    const auto p5 = set_layer_pool(5, 2, 2);
    const auto r5 = max_product_bb(p5, 1, 1);
    CHECK(r5.best_product == Nat(16));
    CHECK(r5.optimal);
    CHECK(max_product_naive(p5, 1, 1).best_product == Nat(16));
    const auto sym = max_product_bb(p5, 1, 1, SearchOptions{.symmetry = true});
    CHECK(sym.best_product == Nat(16));
    CHECK(certify(sym, p5, 1, 1));
    CHECK_THROWS_AS(max_product_bb(set_pool(set_layer(4, 2), SetFamily{4, 2, {}}), 1, 1, SearchOptions{.symmetry = true}),
                    PreconditionError);

    const auto l2 = max_product_bb(p4, 2, 1);
    CHECK(l2.best_product >= Nat(9));
    CHECK(l2.best_product == max_product_naive(p4, 2, 1).best_product);
}

TEST_CASE("budgets") {
    const auto pool = set_layer_pool(6, 3, 3);
    SearchOptions opt;
    opt.node_budget = 5;
    const auto r = max_product_bb(pool, 2, 1, opt);
    CHECK_FALSE(r.optimal);
    CHECK(r.best_product >= r.star_in_pool);
    CHECK(certify(r, pool, 2, 1));
    opt.max_pool_side = 10;
    CHECK_THROWS_AS(max_product_bb(pool, 2, 1, opt), LimitError);
}

TEST_CASE("random subspace sub-pools") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 15; ++trial) {
        const auto pool = random_subspace_subpool(rng, 8);
        for (Int l : {1, 2}) {
            const auto naive = max_product_naive(pool, l, 1);
            const auto bb = max_product_bb(pool, l, 1);
            CHECK(bb.best_product == naive.best_product);
            CHECK(certify(bb, pool, l, 1));
        }
    }
}

TEST_CASE("certify rejects tampering") {
    const auto pool = set_layer_pool(4, 2, 2);
    auto r = max_product_bb(pool, 1, 1);
    REQUIRE(certify(r, pool, 1, 1));
    auto dropped = r;
    dropped.best_f.pop_back();
    CHECK_FALSE(certify(dropped, pool, 1, 1));

    // {1,2} and {3,4} are disjoint: a violating pair with a consistent product
    SearchResult bad;
    bad.best_f = {0};  // {1,2}
    bad.best_g = {5};  // {3,4}
    bad.best_product = Nat(1);
    CHECK_FALSE(certify(bad, pool, 1, 1));
    bad.best_g = {9};
    CHECK_FALSE(certify(bad, pool, 1, 1));
}

TEST_CASE("results are deterministic") {
    const auto pool = set_layer_pool(5, 2, 2);
    const auto a = max_product_bb(pool, 2, 1);
    const auto b = max_product_bb(pool, 2, 1);
    CHECK(a.best_f == b.best_f);
    CHECK(a.best_g == b.best_g);
    CHECK(a.nodes_explored == b.nodes_explored);
}
