#include <doctest.h>

#include <random>

#include "starred/chart.hpp"

using namespace starred;

namespace {

// two variables: x = var 0, y = var 1 (y plays wbar in barswap tests)
MPoly X() { return MPoly::variable(2, 0); }
MPoly Y() { return MPoly::variable(2, 1); }
MPoly C2(long v) { return MPoly::constant(2, GaussianRational(v)); }

MPoly rand_mpoly(std::mt19937_64& rng, size_t nv, unsigned maxdeg, int nterms) {
    MPoly p(nv);
    for (int t = 0; t < nterms; ++t) {
        MPoly::Exps e(nv, 0);
        for (size_t k = 0; k < nv; ++k) e[k] = rng() % (maxdeg + 1);
        p.add(e, GaussianRational(make_rat((long)(rng() % 9) - 4, 1 + (long)(rng() % 3)),
                                  make_rat((long)(rng() % 5) - 2)));
    }
    return p;
}

} // namespace

TEST_CASE("MPoly arithmetic and exact division") {
    MPoly a = X() + Y();               // x + y
    MPoly b = X() - Y();               // x - y
    MPoly prod = a * b;                // x^2 - y^2
    MPoly want = X() * X() - Y() * Y();
    CHECK(prod == want);

    auto q = MPoly::try_divide(prod, a);
    REQUIRE(q);
    CHECK(*q == b);
    CHECK_FALSE(MPoly::try_divide(prod + C2(1), a));

    std::mt19937_64 rng(5);
    for (int it = 0; it < 20; ++it) {
        MPoly u = rand_mpoly(rng, 3, 3, 4);
        MPoly v = rand_mpoly(rng, 3, 2, 3);
        if (v.is_zero()) continue;
        auto w = MPoly::try_divide(u * v, v);
        REQUIRE(w);
        CHECK(*w == u);
    }
}

TEST_CASE("MPoly derivative and barswap") {
    MPoly f = X() * X() * Y() + C2(3) * X(); // x^2 y + 3x
    CHECK(f.derivative(0) == C2(2) * (X() * Y()) + C2(3));
    CHECK(f.derivative(1) == X() * X());

    MPoly g = GaussianRational::unit_i() * (X() * X()) + Y();
    MPoly gs = g.barswap(1);
    CHECK(gs == GaussianRational(Rat(0), Rat(-1)) * (Y() * Y()) + X());
    CHECK(gs.barswap(1) == g); // involution
}

TEST_CASE("ChartFunction arithmetic keeps factored denominators reduced") {
    // f = x / (1 + xy), g = y / (1 + xy)^2
    MPoly one_plus = C2(1) + X() * Y();
    ChartFunction f(X(), {{one_plus, 1}});
    ChartFunction g(Y(), {{one_plus, 2}});

    ChartFunction s = f + g;
    // s = (x(1+xy) + y) / (1+xy)^2
    CHECK(s.den.size() == 1);
    CHECK(s.den[0].second == 2);
    CHECK(s.num == X() + X() * X() * Y() + Y());

    // product cancels completely against a matching numerator
    ChartFunction h(one_plus * one_plus * X(), {});
    ChartFunction p = g * h; // y x (1+xy)^2 / (1+xy)^2 = xy
    CHECK(p.den.empty());
    CHECK(p.num == X() * Y());

    // division introduces the divisor's numerator as a factor
    ChartFunction q = f / g; // x(1+xy)^2 / ((1+xy) y) = x(1+xy)/y
    CHECK(q == ChartFunction(X() * one_plus, {{Y(), 1}}));
}

TEST_CASE("ChartFunction equality is cross-multiplied") {
    MPoly one_plus = C2(1) + X() * Y();
    ChartFunction a(X() * one_plus, {{one_plus, 2}});
    ChartFunction b(X(), {{one_plus, 1}});
    CHECK(a == b);
    ChartFunction c(X(), {{one_plus, 2}});
    CHECK(a != c);
}

TEST_CASE("ChartFunction derivative: quotient rule") {
    // d/dx [ x / (1+xy) ] = (1+xy - xy) / (1+xy)^2 = 1/(1+xy)^2
    MPoly one_plus = C2(1) + X() * Y();
    ChartFunction f(X(), {{one_plus, 1}});
    ChartFunction df = f.derivative(0);
    CHECK(df == ChartFunction(C2(1), {{one_plus, 2}}));

    // derivative of a pure power: d/dx (1+xy)^{-2} = -2y (1+xy)^{-3}
    ChartFunction g(C2(1), {{one_plus, 2}});
    CHECK(g.derivative(0) == ChartFunction(C2(-2) * Y(), {{one_plus, 3}}));
}

TEST_CASE("ChartFunction field laws on random rational functions") {
    std::mt19937_64 rng(11);
    auto rand_cf = [&]() {
        MPoly n = rand_mpoly(rng, 2, 2, 3);
        MPoly d = rand_mpoly(rng, 2, 1, 2);
        if (d.is_zero()) d = C2(1) + X();
        return ChartFunction(n, {{d, 1}});
    };
    for (int it = 0; it < 15; ++it) {
        ChartFunction a = rand_cf(), b = rand_cf(), c = rand_cf();
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        if (!c.is_zero()) CHECK((a * c) / c == a);
    }
}

TEST_CASE("ChartFunction exact evaluation matches structure") {
    MPoly one_plus = C2(1) + X() * Y();
    ChartFunction f(X() * X(), {{one_plus, 2}});
    std::vector<GaussianRational> pt{GaussianRational(make_rat(1, 2)), GaussianRational(make_rat(1, 3))};
    // x^2/(1+xy)^2 at (1/2, 1/3) = (1/4)/(49/36) = 9/49
    CHECK(f.eval(pt) == GaussianRational(make_rat(9, 49)));
    std::vector<GaussianRational> pole{GaussianRational(make_rat(-1)), GaussianRational(make_rat(1))};
    CHECK_THROWS_AS(f.eval(pole), PoleError);
}
