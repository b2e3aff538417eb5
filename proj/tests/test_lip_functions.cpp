#include <doctest.h>

#include "lipfree/generators.hpp"
#include "lipfree/lip_function.hpp"

using namespace lipfree;

namespace {

SpacePtr<double> pair_space(double d) {
    return share(MetricSpace::make({"e", "p"}, {{0, d}, {d, 0}}, 0));
}

// {0, 1/2, 1} with the line metric, base 0.
SpacePtr<double> half_grid() {
    return share(interval_grid<double>(1.0, 0.5));
}

}  // namespace

TEST_CASE("lipschitz_number basics") {
    auto g = half_grid();
    CHECK(lipschitz_number(LipFunction(g, {2.5, 2.5, 2.5})) == 0.0);  // constants are flat
    CHECK(lipschitz_number(LipFunction(pair_space(1.0), {0, 3})) == 3.0);

    // Brute force over the three pairs: slopes 0, 2, 1.
    CHECK(lipschitz_number(LipFunction(g, {0, 0, 1})) == 2.0);

    auto single = share(MetricSpace::make({"p"}, {{0}}));
    CHECK(lipschitz_number(LipFunction(single, {7.0})) == 0.0);  // empty sup
}

TEST_CASE("sup_norm and lip_norm") {
    auto s = share(MetricSpace::make({"a", "b", "c"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
    CHECK(sup_norm(LipFunction(s, {0, 3, -4})) == 4.0);
    CHECK(sup_norm(LipFunction(s, {0, 0, 0})) == 0.0);
    CHECK(sup_norm(LipFunction(s, {1, 1, 1})) == 1.0);

    // Two-term max by hand: slope 3/5 vs sup 3.
    CHECK(lip_norm(LipFunction(pair_space(5.0), {3, 0})) == 3.0);
    CHECK(lip_norm(LipFunction(s, {1, 1, 1})) == 1.0);
    CHECK(lip_norm(LipFunction(half_grid(), {0, 0, 1})) == 2.0);
}

TEST_CASE("norm axioms hold on random functions") {
    Rng rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        auto x = share(random_space<double>(rng, static_cast<int>(rng.range(2, 8)), false));
        auto f = random_function<double>(rng, x, -3, 3);
        auto g = random_function<double>(rng, x, -3, 3);
        const double alpha = rng.uniform(-2, 2);

        std::vector<double> sum(f.size()), scaled(f.size());
        for (int i = 0; i < f.size(); ++i) {
            sum[i] = f(i) + g(i);
            scaled[i] = alpha * f(i);
        }
        CHECK(lipschitz_number(f.with_values(sum)) <= lipschitz_number(f) + lipschitz_number(g) + 1e-12);
        CHECK(lipschitz_number(f.with_values(scaled)) ==
              doctest::Approx(std::fabs(alpha) * lipschitz_number(f)).epsilon(1e-12));
        CHECK(lip_norm(f.with_values(sum)) <= lip_norm(f) + lip_norm(g) + 1e-12);
        if (lip_norm(f) == 0.0) {
            for (int i = 0; i < f.size(); ++i) CHECK(f(i) == 0.0);
        }
    }
}

TEST_CASE("join and meet are pointwise with the lattice norm bound") {
    auto g = half_grid();
    LipFunction f(g, {0, 1, -1});
    CHECK(join(f, f).values() == f.values());

    std::vector<double> negated(f.size()), expect(f.size());
    for (int i = 0; i < f.size(); ++i) {
        negated[i] = -f(i);
        expect[i] = -std::fabs(f(i));
    }
    CHECK(meet(f, f.with_values(negated)).values() == expect);  // meet(f,-f) = -|f|

    CHECK_THROWS_AS(join(f, LipFunction(pair_space(1), {0, 1})), InvalidInput);
    CHECK_THROWS_AS(family_join<double>({}), InvalidInput);

    Rng rng(43);
    for (int trial = 0; trial < 2000; ++trial) {
        auto x = share(random_space<double>(rng, static_cast<int>(rng.range(2, 7)), false));
        auto a = random_function<double>(rng, x, -3, 3);
        auto b = random_function<double>(rng, x, -3, 3);
        const double bound = std::max(lipschitz_number(a), lipschitz_number(b)) + 1e-12;
        CHECK(lipschitz_number(join(a, b)) <= bound);
        CHECK(lipschitz_number(meet(a, b)) <= bound);
    }
}

TEST_CASE("family_join agrees with folding join") {
    Rng rng(47);
    auto x = share(random_space<double>(rng, 5, false));
    std::vector<LipFunction> fam;
    for (int k = 0; k < 6; ++k) fam.push_back(random_function<double>(rng, x, -2, 2));
    auto all = family_join(fam);
    for (int i = 0; i < all.size(); ++i) {
        double expect = fam[0](i);
        for (const auto& fk : fam) expect = std::max(expect, fk(i));
        CHECK(all(i) == expect);
    }
}

TEST_CASE("extend_by_zero lands in Lip0 of the amalgam") {
    auto x = MetricSpace::make({"p", "q"}, {{0, 5}, {5, 0}});
    auto xp = share(x);
    auto y = share(augment_base(x));
    LipFunction f(xp, {3, 0});
    auto ext = extend_by_zero(f, y);
    CHECK(ext.values() == std::vector<double>{3, 0, 0});
    CHECK(vanishes_at_base(ext, Tolerance{}));

    auto zero = extend_by_zero(f.with_values({0, 0}), y);
    CHECK(zero.values() == std::vector<double>{0, 0, 0});

    auto other = share(augment_base(MetricSpace::make({"p", "q"}, {{0, 1}, {1, 0}})));
    CHECK_THROWS_AS(extend_by_zero(f, other), InvalidInput);  // wrong amalgam
}

TEST_CASE("rebase shifts values and preserves the Lipschitz number") {
    auto g = half_grid();
    LipFunction f(g, {0, 1, 2});
    CHECK(rebase(f, 0).values() == f.values());  // already vanishes there
    CHECK(rebase(LipFunction(g, {1, 2, 3}), 1).values() == std::vector<double>{-1, 0, 1});
    CHECK_THROWS_AS(rebase(f, 9), InvalidInput);

    Rng rng(53);
    for (int trial = 0; trial < 2000; ++trial) {
        auto x = share(random_space<double>(rng, static_cast<int>(rng.range(2, 7)), true));
        auto h = random_function<double>(rng, x, -3, 3);
        const int to = static_cast<int>(rng.below(x->size()));
        const auto moved = rebase(h, to);
        CHECK(moved(to) == 0.0);
        CHECK(lipschitz_number(moved) == doctest::Approx(lipschitz_number(h)).epsilon(1e-12));
    }
}

TEST_CASE("liminf_limit on the named families") {
    auto g = half_grid();
    LipFunction f(g, {0.5, -1, 2});
    CHECK(liminf_limit<double>({f, f, f}).values() == f.values());

    LipFunction a(g, {1, 0, 3});
    LipFunction b(g, {0, 2, 1});
    // Alternating a,b,...,b: suffix minima are min(a,b) except the final b,
    // so the join collapses to b.
    auto alt = liminf_limit<double>({a, b, a, b});
    CHECK(alt.values() == b.values());

    // Direct-evaluation oracle on a random sequence.
    Rng rng(59);
    std::vector<LipFunction> seq;
    for (int k = 0; k < 9; ++k) seq.push_back(random_function<double>(rng, g, -2, 2));
    auto lim = liminf_limit(seq);
    for (int i = 0; i < lim.size(); ++i) {
        double best = -1e300;
        for (size_t n = 0; n < seq.size(); ++n) {
            double tail = 1e300;
            for (size_t k = n; k < seq.size(); ++k) tail = std::min(tail, seq[k](i));
            best = std::max(best, tail);
        }
        CHECK(lim(i) == best);
    }

    // Monotone increasing: the last element wins.
    std::vector<LipFunction> mono{LipFunction(g, {0, 0, 0}), LipFunction(g, {1, 1, 1}), LipFunction(g, {1, 2, 3})};
    CHECK(liminf_limit(mono).values() == mono.back().values());

    CHECK_THROWS_AS(liminf_limit<double>({}), InvalidInput);
}

TEST_CASE("h_function clips the distance to the base point") {
    auto g = share(interval_grid<double>(4.0, 1.0));
    auto h = h_function(g, 2.0);
    CHECK(h.values() == std::vector<double>{0, 1, 2, 2, 2});
    CHECK(lipschitz_number(h) == 1.0);

    auto unsaturated = h_function(g, 99.0);
    for (int i = 0; i < g->size(); ++i) CHECK(unsaturated(i) == g->dist(i, 0));

    CHECK_THROWS_AS(h_function(g, 0.0), InvalidInput);
    CHECK_THROWS_AS(h_function(g, -1.0), InvalidInput);

    Rng rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = share(random_space<double>(rng, static_cast<int>(rng.range(2, 9)), true));
        const double n = rng.uniform(0.05, 3.0);
        auto hh = h_function(x, n);
        CHECK(hh(x->base_index()) == 0.0);
        for (int i = 0; i < hh.size(); ++i) {
            CHECK(hh(i) >= 0.0);
            CHECK(hh(i) <= n);
        }
        CHECK(lipschitz_number(hh) <= 1.0 + 1e-12);
    }
}

TEST_CASE("ideal_membership vanishing test") {
    auto g = share(interval_grid<double>(4.0, 1.0));
    const Tolerance tol;
    std::vector<int> ball{0, 1, 2};

    CHECK(ideal_membership(LipFunction(g, {0, 0, 0, 0, 0}), ball, tol));
    CHECK_FALSE(ideal_membership(h_function(g, 2.0), ball, tol));  // h > 0 off the base

    LipFunction outside(g, {0, 0, 0, 1, 2});
    CHECK(ideal_membership(outside, ball, tol));

    std::vector<int> no_base{1, 2};
    CHECK_THROWS_AS(ideal_membership(outside, no_base, tol), InvalidInput);
}

TEST_CASE("sup norm off the base is dominated by the Lipschitz number on amalgams") {
    Rng rng(67);
    for (int trial = 0; trial < 500; ++trial) {
        auto x = random_space<double>(rng, static_cast<int>(rng.range(1, 6)), false);
        auto y = share(augment_base(x));
        auto f = random_lip0_unit_ball<double>(rng, y);
        double sup_off_base = 0;
        for (int i = 0; i + 1 < f.size(); ++i) sup_off_base = std::max(sup_off_base, std::fabs(f(i)));
        CHECK(sup_off_base <= lipschitz_number(f));  // slope through e equals |f(p)| exactly
    }
}

TEST_CASE("mcshane_extend extends without raising the Lipschitz constant") {
    Rng rng(71);
    for (int trial = 0; trial < 300; ++trial) {
        auto x = share(random_space<double>(rng, static_cast<int>(rng.range(3, 8)), false));
        const int k = static_cast<int>(rng.range(1, x->size() - 1));
        std::vector<int> K;
        for (int i = 0; i < k; ++i) K.push_back(i);
        std::vector<double> vals(K.size());
        for (auto& v : vals) v = rng.uniform(-2, 2);

        double L = 0;  // Lipschitz constant of the partial data
        for (size_t a = 0; a < K.size(); ++a)
            for (size_t b = a + 1; b < K.size(); ++b)
                L = std::max(L, std::fabs(vals[a] - vals[b]) / x->dist(K[a], K[b]));
        L = std::max(L, 0.1) * 1.0000001;

        auto ext = mcshane_extend(x, K, vals, L);
        for (size_t a = 0; a < K.size(); ++a) CHECK(ext(K[a]) == doctest::Approx(vals[a]).epsilon(1e-12));
        CHECK(lipschitz_number(ext) <= L + 1e-9);
    }
}
