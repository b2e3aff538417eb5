#include <doctest.h>

#include "lipfree/generators.hpp"
#include "lipfree/metric_space.hpp"
#include "lipfree/rng.hpp"

using namespace lipfree;

namespace {

MetricSpace two_points(double d) {
    return MetricSpace::make({"p", "q"}, {{0, d}, {d, 0}});
}

MetricSpace line3() {
    return MetricSpace::make({"a", "b", "c"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
}

MetricDiagnostic expect_diag(std::vector<std::string> labels, MetricSpace::Matrix m) {
    auto v = MetricSpace::validated(std::move(labels), std::move(m));
    REQUIRE(std::holds_alternative<MetricDiagnostic>(v));
    return std::get<MetricDiagnostic>(v);
}

}  // namespace

TEST_CASE("validate accepts the smallest metric space") {
    auto v = MetricSpace::validated({"p", "q"}, {{0, 1}, {1, 0}});
    CHECK(std::holds_alternative<MetricSpace>(v));
}

TEST_CASE("validate reports each axiom violation distinctly") {
    auto asym = expect_diag({"p", "q"}, {{0, 1}, {2, 0}});
    CHECK(asym.axiom == MetricAxiom::Asymmetry);
    CHECK(asym.i == 0);
    CHECK(asym.j == 1);

    auto tri = expect_diag({"a", "b", "c"}, {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    CHECK(tri.axiom == MetricAxiom::TriangleViolation);
    // 3 > 1 + 1 witnessed through the middle point.
    CHECK(tri.i == 0);
    CHECK(tri.j == 1);
    CHECK(tri.k == 2);

    CHECK(expect_diag({"p"}, {{0, 1}}).axiom == MetricAxiom::NonSquare);
    CHECK(expect_diag({"p", "q"}, {{0, -1}, {-1, 0}}).axiom == MetricAxiom::NegativeEntry);
    CHECK(expect_diag({"p", "q"}, {{0, 0}, {0, 0}}).axiom == MetricAxiom::ZeroOffDiagonal);
    CHECK(expect_diag({"p", "q"}, {{1, 1}, {1, 0}}).axiom == MetricAxiom::NonzeroDiagonal);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK(expect_diag({"p", "q"}, {{0, nan}, {nan, 0}}).axiom == MetricAxiom::NonFinite);
}

TEST_CASE("validate fuzz: single-entry corruption flips acceptance with the right axiom") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = random_space<double>(rng, static_cast<int>(rng.range(3, 8)), false);
        auto m = x.matrix();
        const int n = x.size();
        const int i = static_cast<int>(rng.below(n));
        int j = static_cast<int>(rng.below(n));
        if (j == i) j = (j + 1) % n;

        switch (rng.below(3)) {
            case 0:  // break symmetry
                m[i][j] += 0.125;
                CHECK(expect_diag(x.labels(), m).axiom == MetricAxiom::Asymmetry);
                break;
            case 1:  // negate one edge
                m[i][j] = m[j][i] = -m[i][j];
                CHECK(expect_diag(x.labels(), m).axiom == MetricAxiom::NegativeEntry);
                break;
            default:  // inflate one edge past the two-hop bound
                double detour = std::numeric_limits<double>::infinity();
                for (int k = 0; k < n; ++k)
                    if (k != i && k != j) detour = std::min(detour, m[i][k] + m[k][j]);
                m[i][j] = m[j][i] = detour * 2 + 1;
                CHECK(expect_diag(x.labels(), m).axiom == MetricAxiom::TriangleViolation);
                break;
        }
    }
}

TEST_CASE("truncate caps long distances and keeps short ones") {
    auto far = two_points(5);
    CHECK(truncate(far, 2.0).dist(0, 1) == 2.0);
    CHECK(truncate(two_points(1), 2.0).dist(0, 1) == 1.0);
    CHECK_THROWS_AS(truncate(far, 0.0), InvalidInput);
}

TEST_CASE("truncate keeps the space valid and is idempotent") {
    auto t = truncate(line3(), 1.5);
    CHECK(t.dist(0, 2) == 1.5);
    auto v = MetricSpace::validated(t.labels(), t.matrix(), t.base());
    CHECK(std::holds_alternative<MetricSpace>(v));

    auto tt = truncate(t, 1.5);
    CHECK(tt.matrix() == t.matrix());

    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = random_space<double>(rng, 6, false);
        const double cap = rng.uniform(0.3, 3.0);
        auto once = truncate(x, cap);
        CHECK(truncate(once, cap).matrix() == once.matrix());
        CHECK(std::holds_alternative<MetricSpace>(MetricSpace::validated(once.labels(), once.matrix())));
    }
}

TEST_CASE("augment_base builds the amalgam") {
    auto y = augment_base(two_points(5));
    REQUIRE(y.size() == 3);
    CHECK(y.pointed());
    CHECK(y.base_index() == 2);
    CHECK(y.dist(0, 1) == 2.0);  // truncated at 2
    CHECK(y.dist(0, 2) == 1.0);
    CHECK(y.dist(1, 2) == 1.0);

    auto tiny = augment_base(MetricSpace::make({"p"}, {{0}}));
    CHECK(tiny.size() == 2);
    CHECK(tiny.dist(0, 1) == 1.0);

    auto near = augment_base(two_points(0.5));
    CHECK(near.dist(0, 1) == 0.5);
    CHECK(std::holds_alternative<MetricSpace>(MetricSpace::validated(near.labels(), near.matrix(), near.base())));

    CHECK_THROWS_AS(augment_base(near), InvalidInput);  // already pointed
}

TEST_CASE("augment_base avoids label collisions") {
    auto y = augment_base(MetricSpace::make({"e", "p"}, {{0, 1}, {1, 0}}));
    CHECK(y.base_label() == "e'");
}

TEST_CASE("rescale multiplies distances and preserves the base") {
    auto x = line3().with_base(1);
    auto half = rescale(x, 0.5);
    CHECK(half.dist(0, 1) == 0.5);
    CHECK(half.dist(0, 2) == 1.0);
    CHECK(half.base_index() == 1);
    CHECK(rescale(x, 1.0).matrix() == x.matrix());
    CHECK_THROWS_AS(rescale(x, -2.0), InvalidInput);

    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = random_space<double>(rng, 5, true);
        const double r = rng.uniform(0.1, 8.0);
        auto back = rescale(rescale(s, r), 1.0 / r);
        for (int i = 0; i < s.size(); ++i)
            for (int j = 0; j < s.size(); ++j)
                CHECK(back.dist(i, j) == doctest::Approx(s.dist(i, j)).epsilon(1e-14));
    }
}

TEST_CASE("closed_ball restricts to the base-centred ball") {
    auto grid = interval_grid<double>(3.0, 1.0);  // {0,1,2,3}, base 0
    auto ball = closed_ball(grid, 2.0);
    CHECK(ball.space.size() == 3);
    CHECK(ball.parent_index == std::vector<int>{0, 1, 2});
    CHECK(ball.space.base_index() == 0);

    CHECK(closed_ball(grid, 99.0).space.size() == grid.size());
    auto just_base = closed_ball(grid, 0.0);
    CHECK(just_base.space.size() == 1);
    CHECK(just_base.space.base_label() == "0");
}

TEST_CASE("interval_grid lays out evenly spaced points") {
    CHECK(interval_grid<double>(1.0, 0.25).size() == 5);
    auto g = interval_grid<double>(2.0, 1.0);
    CHECK(g.size() == 3);
    CHECK(g.dist(0, 2) == 2.0);
    CHECK(g.base_index() == 0);
    CHECK(g.label(1) == "1");

    auto v = interval_grid<double>(3.0, 0.5);
    CHECK(std::holds_alternative<MetricSpace>(MetricSpace::validated(v.labels(), v.matrix(), v.base())));

    CHECK_THROWS_AS(interval_grid<double>(1.0, 0.3), InvalidInput);
    CHECK_THROWS_AS(interval_grid<double>(-1.0, 0.5), InvalidInput);
}

TEST_CASE("convexity_defect distinguishes geodesic grids from generic spaces") {
    auto line = convexity_defect(interval_grid<double>(2.0, 1.0));
    CHECK(line.has_witness);
    CHECK(line.defect == 0.0);

    auto equilateral = convexity_defect(
        MetricSpace::make({"p", "q", "s"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
    CHECK(equilateral.has_witness);
    CHECK(equilateral.defect == doctest::Approx(1.0));

    CHECK(convexity_defect(interval_grid<double>(2.0, 0.5)).defect == 0.0);

    auto pair = convexity_defect(two_points(1));
    CHECK_FALSE(pair.has_witness);  // no third point can witness anything

    CHECK_THROWS_AS(convexity_defect(MetricSpace::make({"p"}, {{0}})), InvalidInput);
}

TEST_CASE("interval grids of three or more points are metrically convex") {
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const long steps = rng.range(2, 12);
        const double spacing = 0.25 * static_cast<double>(rng.range(1, 8));
        auto g = interval_grid<double>(spacing * static_cast<double>(steps), spacing);
        CHECK(convexity_defect(g).defect == 0.0);
    }
}

TEST_CASE("generated random spaces validate") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_space<double>(rng, static_cast<int>(rng.range(2, 12)), trial % 2 == 0);
        auto v = MetricSpace::validated(x.labels(), x.matrix(), x.base());
        CHECK(std::holds_alternative<MetricSpace>(v));
    }
}
