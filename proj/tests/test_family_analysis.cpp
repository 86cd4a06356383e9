#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "wcross/errors.hpp"
#include "wcross/family_analysis.hpp"

using namespace wcross;

namespace {

SetFamily fam(Int n, Int k, std::initializer_list<std::vector<Int>> members) {
    SetFamily f{n, k, {}};
    for (const auto& m : members) f.members.push_back(make_set(m));
    return f;
}

bool cross_t_intersecting(const SetFamily& f, const SetFamily& g, Int t) {
    for (SetMask a : f.members) {
        for (SetMask b : g.members) {
            if (std::popcount(a & b) < t) return false;
        }
    }
    return true;
}

// Is `members` (indices into f) a sunflower with kernel of size t?
bool is_sunflower(const SetFamily& f, const std::vector<std::size_t>& idx, Int t, SetMask& kernel) {
    if (idx.size() < 2) return false;
    kernel = f.members[idx[0]] & f.members[idx[1]];
    if (std::popcount(kernel) != t) return false;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            if ((f.members[idx[a]] & f.members[idx[b]]) != kernel) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("set family basics and file format") {
    CHECK(set_str(make_set({5, 1, 3})) == "1,3,5");
    CHECK(set_elements(make_set({2, 64})) == std::vector<Int>{2, 64});
    CHECK(set_layer(5, 2).size() == 10);
    CHECK(set_layer(4, 2).members.front() == make_set({1, 2}));
    CHECK(set_layer(4, 2).members.back() == make_set({3, 4}));
    CHECK(set_star(5, 3, make_set({2})).size() == 6);

    const auto f = parse_set_family("n=5 k=2\n1,2\n\n 3 , 5\n");
    CHECK(f.members == std::vector<SetMask>{make_set({1, 2}), make_set({3, 5})});
    CHECK(parse_set_family(format_set_family(f)).members == f.members);

    auto line_of = [](const std::string& bad) -> std::size_t {
        try {
            parse_set_family(bad);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("n=5 k=2\n1,2\n2,1\n") == 3);
    CHECK(line_of("n=5 k=2\n1,2,3\n") == 2);
    CHECK(line_of("n=5 k=2\n1,6\n") == 2);
    CHECK(line_of("n=5 k=2\n1,1\n") == 2);
    CHECK(line_of("n=5 k=2\n1,a\n") == 2);
    CHECK(line_of("n=5\n") == 1);
    CHECK(line_of("n=65 k=2\n") == 1);
    CHECK(line_of("") == 0);
}

TEST_CASE("intersection matrix") {
    const auto one = fam(5, 3, {{1, 2, 3}});
    const auto m = intersection_matrix(one, one);
    CHECK(m.rows == 1);
    CHECK(m.at(0, 0) == 3);
    const auto z = intersection_matrix(fam(6, 2, {{1, 2}, {3, 4}}), fam(6, 2, {{5, 6}}));
    CHECK(z.w == std::vector<Int>{0, 0});
    CHECK_THROWS_AS(intersection_matrix(fam(5, 2, {{1, 2}}), fam(6, 2, {{1, 2}})), PreconditionError);

    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = oracle::random_set_family(rng, 9, 3, 6);
        const auto g = oracle::random_set_family(rng, 9, 4, 6);
        const auto w = intersection_matrix(f, g);
        for (std::size_t i = 0; i < f.size(); ++i) {
            for (std::size_t j = 0; j < g.size(); ++j) {
                Int common = 0;
                for (Int e : set_elements(f.members[i])) {
                    const auto ge = set_elements(g.members[j]);
                    common += std::count(ge.begin(), ge.end(), e);
                }
                CHECK(w.at(i, j) == common);
            }
        }
    }
}

TEST_CASE("min_tuple_sum") {
    const IntersectionMatrix ones{3, 3, std::vector<Int>(9, 1)};
    const auto r = min_tuple_sum(ones, 2);
    CHECK(r.min_sum == 4);
    CHECK(r.witness.rows == std::vector<std::size_t>{0, 1});
    CHECK(r.witness.cols == std::vector<std::size_t>{0, 1});
    CHECK(min_tuple_sum(IntersectionMatrix{2, 2, {1, 0, 0, 1}}, 1).min_sum == 0);
    CHECK_THROWS_AS(min_tuple_sum(ones, 4), PreconditionError);
    CHECK_THROWS_AS(min_tuple_sum(ones, 0), PreconditionError);

    SUBCASE("agrees with exhaustive enumeration, witness included") {
        std::mt19937_64 rng(2024);
        for (int trial = 0; trial < 300; ++trial) {
            for (Int l : {2, 3}) {
                const auto m = oracle::random_matrix(rng, 7, 7, 4);
                const auto fast = min_tuple_sum(m, l);
                const auto slow = oracle::min_tuple_sum(m, l);
                CHECK(fast.min_sum == slow.min_sum);
                CHECK(fast.witness == slow.witness);
            }
        }
        std::uniform_int_distribution<std::size_t> dim(1, 8);
        for (int trial = 0; trial < 300; ++trial) {
            const auto m = oracle::random_matrix(rng, dim(rng), dim(rng), 2);
            for (Int l = 1; l <= 3 && static_cast<std::size_t>(l) <= std::min(m.rows, m.cols); ++l) {
                const auto fast = min_tuple_sum(m, l);
                const auto slow = oracle::min_tuple_sum(m, l);
                CHECK(fast.min_sum == slow.min_sum);
                CHECK(fast.witness == slow.witness);
            }
        }
    }
}

TEST_CASE("condition checker") {
    const auto f = set_star(6, 3, make_set({1}));
    const auto g = set_star(6, 2, make_set({1}));
    for (Int l = 1; l <= 4; ++l) {
        const auto r = is_weakly_cross_intersecting(f, g, l, 1);
        CHECK(r.satisfied);
        CHECK_FALSE(r.vacuous);
        CHECK(r.threshold == l * l - l + 1);
        CHECK(*r.min_sum >= l * l);
    }
    const auto tiny = fam(6, 2, {{1, 2}});
    const auto v = is_weakly_cross_intersecting(tiny, g, 2, 1);
    CHECK(v.vacuous);
    CHECK(v.satisfied);
    CHECK_FALSE(v.min_sum.has_value());
    CHECK_FALSE(v.witness.has_value());
    CHECK_THROWS_AS(is_weakly_cross_intersecting(f, g, 0, 1), PreconditionError);

    SUBCASE("l = 1 is cross t-intersection") {
        std::mt19937_64 rng(9);
        for (int trial = 0; trial < 300; ++trial) {
            const auto a = oracle::random_set_family(rng, 7, 3, 5);
            const auto b = oracle::random_set_family(rng, 7, 3, 5);
            for (Int t : {1, 2}) CHECK(is_weakly_cross_intersecting(a, b, 1, t).satisfied == cross_t_intersecting(a, b, t));
        }
    }
    SUBCASE("removing members never breaks the condition") {
        std::mt19937_64 rng(10);
        for (int trial = 0; trial < 200; ++trial) {
            auto a = oracle::random_set_family(rng, 6, 3, 8);
            auto b = oracle::random_set_family(rng, 6, 3, 8);
            for (Int l : {1, 2, 3}) {
                if (!is_weakly_cross_intersecting(a, b, l, 1).satisfied) continue;
                auto a2 = a;
                if (!a2.members.empty()) a2.members.pop_back();
                CHECK(is_weakly_cross_intersecting(a2, b, l, 1).satisfied);
            }
        }
    }
    SUBCASE("subspace stars satisfy it") {
        const Subspace core = Subspace::coordinate(2, 4, {0});
        const auto s = build_star(4, 2, 2, core);
        for (Int l = 1; l <= 3; ++l) CHECK(is_weakly_cross_intersecting(s, s, l, 1).satisfied);
    }
}

TEST_CASE("sunflowers") {
    // kernel {1}, petals {2,3}, {4,5}, {6,7}
    const auto f = fam(8, 3, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}});
    const auto s = find_sunflowers(f, 1, 3);
    REQUIRE(s.size() == 1);
    CHECK(s[0].kernel == make_set({1}));
    CHECK(s[0].petal_indices == std::vector<std::size_t>{0, 1, 2});
    CHECK(find_sunflowers(f, 1, 4).empty());
    CHECK_THROWS_AS(find_sunflowers(f, 3, 2), PreconditionError);
    CHECK_THROWS_AS(find_sunflowers(f, 1, 1), PreconditionError);

    SUBCASE("maximal sunflowers match a subfamily oracle") {
        std::mt19937_64 rng(4);
        std::vector<SetFamily> cases{set_layer(4, 3), set_layer(5, 4)};
        for (int i = 0; i < 30; ++i) cases.push_back(oracle::random_set_family(rng, 7, 3, 10));
        for (const auto& f2 : cases) {
            const Int t = f2.n == 7 ? 1 : f2.k - 1;
            const std::size_t m = f2.size();
            // every subfamily that is a sunflower with >= 2 petals, keep the maximal ones
            std::vector<std::pair<SetMask, std::vector<std::size_t>>> flowers;
            for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
                std::vector<std::size_t> idx;
                for (std::size_t i = 0; i < m; ++i) {
                    if (mask >> i & 1U) idx.push_back(i);
                }
                SetMask kernel = 0;
                if (is_sunflower(f2, idx, t, kernel)) flowers.emplace_back(kernel, idx);
            }
            std::vector<std::pair<SetMask, std::vector<std::size_t>>> maximal;
            for (const auto& a : flowers) {
                bool dominated = false;
                for (const auto& b : flowers) {
                    if (a.first == b.first && b.second.size() > a.second.size() &&
                        std::includes(b.second.begin(), b.second.end(), a.second.begin(), a.second.end())) {
                        dominated = true;
                        break;
                    }
                }
                if (!dominated) maximal.push_back(a);
            }
            std::sort(maximal.begin(), maximal.end(), [](const auto& a, const auto& b) {
                if (a.first != b.first) return set_lex_less(a.first, b.first);
                return a.second < b.second;
            });
            const auto got = find_sunflowers(f2, t, 2);
            REQUIRE(got.size() == maximal.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].kernel == maximal[i].first);
                CHECK(got[i].petal_indices == maximal[i].second);
            }
        }
    }
    SUBCASE("subspace sunflower") {
        // kernel span{e1}; petals span{e1, e_i} for i = 2..5 in F_2^5
        SubspaceFamily sf{2, 5, 2, {}};
        for (Int i = 1; i < 5; ++i) sf.members.push_back(Subspace::coordinate(2, 5, {0, i}));
        sf.members.push_back(Subspace::span(2, 5, {{1, 0, 0, 0, 0}, {0, 1, 1, 1, 1}}));
        const auto found = find_sunflowers(sf, 1, 5);
        REQUIRE(found.size() == 1);
        CHECK(found[0].kernel == Subspace::coordinate(2, 5, {0}));
        CHECK(found[0].u() == 5);
        for (std::size_t a : found[0].petal_indices) {
            for (std::size_t b : found[0].petal_indices) {
                if (a != b) CHECK(intersect(sf.members[a], sf.members[b]) == found[0].kernel);
            }
        }
    }
}

TEST_CASE("E-partition") {
    const auto g1 = make_set({1, 2});
    const auto g2 = make_set({3, 4});
    const auto f = fam(8, 2, {{5, 6}, {1, 5}, {1, 3}, {1, 2}});
    const auto p = classify_e_partition(f, {g1, g2}, 1);
    CHECK(p.e == std::vector<std::size_t>{0});
    CHECK(p.e1 == std::vector<std::size_t>{1});
    CHECK(p.e2 == std::vector<std::size_t>{2});
    CHECK(p.e3 == std::vector<std::size_t>{3});
    CHECK_THROWS_AS(classify_e_partition(f, {g1, g1}, 1), PreconditionError);

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto fr = oracle::random_set_family(rng, 8, 3, 12);
        const auto gr = oracle::random_set_family(rng, 8, 3, 4);
        if (gr.members.empty()) continue;
        for (Int t : {1, 2}) {
            const auto part = classify_e_partition(fr, gr.members, t);
            std::vector<std::size_t> all;
            for (const auto* c : {&part.e, &part.e1, &part.e2, &part.e3}) all.insert(all.end(), c->begin(), c->end());
            std::sort(all.begin(), all.end());
            CHECK(all.size() == fr.size());
            CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
            for (std::size_t i : part.e1) {
                Int at = 0;
                for (SetMask g : gr.members) at += std::popcount(fr.members[i] & g) == t;
                CHECK(at == 1);
            }
        }
    }
}

TEST_CASE("extremal structure") {
    const auto star = set_star(6, 3, make_set({2, 4}));
    const auto s = extremal_structure(star);
    REQUIRE(s);
    CHECK(s->core == make_set({2, 4}));
    CHECK(s->full_star);
    auto partial = star;
    partial.members.pop_back();
    CHECK_FALSE(extremal_structure(partial)->full_star);
    CHECK_FALSE(extremal_structure(set_layer(4, 2)));
    CHECK_THROWS_AS(extremal_structure(SetFamily{4, 2, {}}), PreconditionError);

    const auto sub = extremal_structure(build_star(4, 2, 2, Subspace::coordinate(2, 4, {0})));
    REQUIRE(sub);
    CHECK(sub->core == Subspace::coordinate(2, 4, {0}));
    CHECK(sub->full_star);
    CHECK_FALSE(extremal_structure(enumerate_subspaces(3, 2, 2)));
}

TEST_CASE("kernel containment") {
    // k = kp = 2, t = 1, l = 2: six petals {1, i}, n = 7
    SetFamily f{7, 2, {}};
    for (Int i = 2; i <= 7; ++i) f.members.push_back(make_set({1, i}));
    SetFamily g{7, 2, {make_set({1, 2}), make_set({1, 5}), make_set({1, 7})}};
    const auto r = verify_kernel_containment(f, g, 2, 1);
    CHECK(r.all_contain());
    CHECK(r.required_petals == 6);
    CHECK(r.sunflower.kernel == make_set({1}));

    auto bad = g;
    bad.members.push_back(make_set({2, 3}));
    CHECK_FALSE(is_weakly_cross_intersecting(f, bad, 2, 1).satisfied);
    CHECK_THROWS_AS(verify_kernel_containment(f, bad, 2, 1), PreconditionError);

    SetFamily small{7, 2, {make_set({1, 2}), make_set({1, 3})}};
    CHECK_THROWS_AS(verify_kernel_containment(small, g, 2, 1), PreconditionError);

    SUBCASE("random partners missing the kernel are refuted") {
        std::mt19937_64 rng(12);
        SetFamily f9{9, 2, {}};
        for (Int i = 2; i <= 7; ++i) f9.members.push_back(make_set({1, i}));
        for (int trial = 0; trial < 100; ++trial) {
            SetFamily g9{9, 2, {}};
            std::set<SetMask> seen;
            std::uniform_int_distribution<Int> sz(1, 4);
            const Int extra = sz(rng);
            while (static_cast<Int>(g9.size()) < extra) {
                const SetMask m = oracle::random_set(rng, 9, 2);
                if (seen.insert(m).second) g9.members.push_back(m);
            }
            SetMask miss = 0;
            do {
                miss = oracle::random_set(rng, 9, 2);
            } while ((miss & 1U) || seen.count(miss));
            g9.members.push_back(miss);
            CHECK_FALSE(is_weakly_cross_intersecting(f9, g9, 2, 1).satisfied);
        }
    }
}
