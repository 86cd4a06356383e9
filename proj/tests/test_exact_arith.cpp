#include "doctest.h"

#include "oracles.hpp"
#include "wcross/errors.hpp"
#include "wcross/exact_arith.hpp"

using namespace wcross;

TEST_CASE("Nat arithmetic is exact and refuses negatives") {
    const Nat big = Nat::parse("123456789012345678901234567890");
    CHECK((big * big).str() == "15241578753238836750495351562536198787501905199875019052100");
    CHECK((big + Nat(10)) - Nat(10) == big);
    CHECK_THROWS_AS(Nat(3) - Nat(4), std::domain_error);
    CHECK_THROWS_AS(Nat(3) / Nat(0), std::domain_error);
    CHECK(divide_exact(Nat(35), Nat(7)) == Nat(5));
    CHECK_THROWS_AS(divide_exact(Nat(35), Nat(6)), std::logic_error);
    CHECK(gcd(Nat(12), Nat(18)) == Nat(6));
    CHECK(pow(Nat(2), 100).str() == "1267650600228229401496703205376");
    CHECK_FALSE(pow(Nat(2), 64).fits_u64());
    CHECK(Nat(~std::uint64_t{0}).to_u64() == ~std::uint64_t{0});
}

TEST_CASE("binomial") {
    CHECK(binomial(5, 0) == Nat(1));
    CHECK(binomial(5, 2) == Nat(10));
    CHECK(binomial(4, 7) == Nat(0));
    CHECK(binomial(4, -1) == Nat(0));
    CHECK(binomial(100, 50).str() == "100891344545564193334812497256");

    SUBCASE("matches Pascal's triangle") {
        for (Int m = 0; m <= 40; ++m) {
            for (Int i = -1; i <= m + 1; ++i) CHECK(binomial(m, i) == oracle::pascal(m, i));
        }
    }
    SUBCASE("symmetry, unimodality, growth") {
        for (Int m = 0; m <= 30; ++m) {
            for (Int i = 0; i <= m; ++i) {
                CHECK(binomial(m, i) == binomial(m, m - i));
                if (m > i) CHECK(binomial(m + 1, i + 1) > binomial(m, i));
            }
            if (m >= 2) {
                for (Int i = 0; i < m / 2; ++i) CHECK(binomial(m, i) < binomial(m, i + 1));
            }
        }
    }
}

TEST_CASE("gaussian binomial") {
    CHECK(gaussian_binomial(4, 0, 2) == Nat(1));
    CHECK(gaussian_binomial(4, 2, 2) == Nat(35));
    CHECK(gaussian_binomial(4, 2, 3) == Nat(130));
    CHECK(gaussian_binomial(5, 2, 2) == Nat(155));
    CHECK(gaussian_binomial(4, -1, 2) == Nat(0));
    CHECK(gaussian_binomial(4, 5, 2) == Nat(0));
    CHECK_THROWS_AS(gaussian_binomial(4, 2, 1), PreconditionError);
    // q need not be prime for the counting formula
    CHECK(gaussian_binomial(3, 1, 4) == Nat(21));

    SUBCASE("q-Pascal recurrence") {
        for (Int q : {2, 3, 4, 5, 7}) {
            for (Int a = 0; a <= 12; ++a) {
                for (Int b = -1; b <= a + 1; ++b) CHECK(gaussian_binomial(a, b, q) == oracle::q_pascal(a, b, q));
            }
        }
    }
    SUBCASE("column relation and bounds") {
        for (Int q : {2, 3, 5}) {
            for (Int m = 1; m <= 10; ++m) {
                for (Int i = 1; i <= m; ++i) {
                    const Nat g = gaussian_binomial(m, i, q);
                    CHECK(g * (q_power(q, i) - Nat(1)) == (q_power(q, m) - Nat(1)) * gaussian_binomial(m - 1, i - 1, q));
                    const Nat lo = q_power(q, i * (m - i));
                    if (i < m) {
                        CHECK(lo < g);
                    } else {
                        CHECK(lo == g);
                    }
                    CHECK(g < q_power(q, i * (m - i + 1)));
                }
            }
        }
    }
}

TEST_CASE("profiles and subspace counts") {
    CHECK(set_profile(5, 2, 2, 1) == Nat(6));
    CHECK(set_profile(5, 2, 2, 2) == Nat(1));
    CHECK(set_profile(6, 3, 2, 0) == Nat(3));
    CHECK(count_subspaces_by_intersection(4, 2, 2, 2, 2) == Nat(1));
    CHECK(count_subspaces_by_intersection(4, 2, 2, 1, 2) == Nat(18));
    CHECK(count_subspaces_by_intersection(4, 2, 2, 0, 2) == Nat(16));
    CHECK(subspace_profile(4, 2, 2, 2, 2) == Nat(1));
    CHECK(subspace_profile(5, 2, 2, 1, 2) == Nat(42));
    CHECK(subspace_profile(4, 2, 2, 0, 3) == Nat(81));
    CHECK_THROWS_AS(count_subspaces_by_intersection(4, 2, 2, 1, 1), PreconditionError);

    SUBCASE("Vandermonde") {
        for (Int n = 0; n <= 12; ++n) {
            for (Int k = 0; k <= n; ++k) {
                for (Int kp = 0; kp <= n; ++kp) {
                    Nat sum(0);
                    for (Int h = 0; h <= kp; ++h) sum += set_profile(n, k, kp, h);
                    CHECK(sum == oracle::pascal(n, kp));
                }
            }
        }
    }
    SUBCASE("q-Vandermonde") {
        for (Int q : {2, 3, 5}) {
            for (Int n = 0; n <= 8; ++n) {
                for (Int kw = 0; kw <= n; ++kw) {
                    for (Int m = 0; m <= n; ++m) {
                        Nat sum(0);
                        for (Int h = 0; h <= std::min(kw, m); ++h) sum += count_subspaces_by_intersection(n, kw, m, h, q);
                        CHECK(sum == oracle::q_pascal(n, m, q));
                    }
                }
            }
        }
    }
}

TEST_CASE("thresholds") {
    CHECK(condition_threshold(1, 5) == Nat(5));
    CHECK(condition_threshold(2, 1) == Nat(3));
    CHECK(condition_threshold(3, 2) == Nat(16));
    CHECK(set_threshold(2, 2, 1) == Nat(385));
    CHECK(set_threshold(3, 2, 1) == Nat(3241));
    CHECK(subspace_threshold(2, 2, 2, 1) == Nat(17));
    CHECK(subspace_threshold(3, 2, 2, 1) == Nat(24));

    SUBCASE("set threshold is the least n meeting the bound") {
        for (Int t = 1; t <= 3; ++t) {
            for (Int k = t + 1; k <= 5; ++k) {
                for (Int l = 2; l <= 4; ++l) {
                    const Int n = static_cast<Int>(set_threshold(k, l, t).to_u64());
                    CHECK(meets_set_bound(n, k, l, t, 4));
                    CHECK_FALSE(meets_set_bound(n - 1, k, l, t, 4));
                    // ceil(core / 2) + t, recomputed from the oracle binomials
                    const Nat core = Nat(static_cast<std::uint64_t>(k * k * l * l * l * l)) *
                                     oracle::pascal(2 * k, t + 1) * oracle::pascal(k, t);
                    CHECK(set_threshold(k, l, t) == (core + Nat(1)) / Nat(2) + Nat(static_cast<std::uint64_t>(t)));
                }
            }
        }
    }
    SUBCASE("subspace threshold is monotone") {
        for (Int t = 1; t <= 3; ++t) {
            for (Int k = t + 1; k <= 6; ++k) {
                for (Int kp = t + 1; kp <= k; ++kp) {
                    for (Int l = 2; l <= 5; ++l) {
                        const Nat v = subspace_threshold(k, kp, l, t);
                        CHECK(subspace_threshold(k + 1, kp, l, t) >= v);
                        if (kp < k) CHECK(subspace_threshold(k, kp + 1, l, t) >= v);
                        CHECK(subspace_threshold(k, kp, l + 1, t) >= v);
                    }
                }
            }
        }
    }
    CHECK_THROWS_AS(subspace_threshold(2, 3, 2, 1), PreconditionError);
}

TEST_CASE("parameter validation names the failing constraint") {
    SetParams p{5, 2, 3, 1, 2};
    try {
        p.validate();
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("k") != std::string::npos);
    }
    QParams qp;
    qp.n = 5;
    qp.k = 2;
    qp.kp = 2;
    qp.t = 1;
    qp.q = 1;
    CHECK_THROWS_AS(qp.validate(), PreconditionError);
    qp.q = 4;
    CHECK_NOTHROW(qp.validate());
}
