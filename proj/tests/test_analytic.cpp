#include <doctest.h>

#include <random>

#include "starred/analytic.hpp"

using namespace starred;

namespace {

MultiIndex mi(std::vector<unsigned> v) { return MultiIndex(std::move(v)); }

} // namespace

TEST_CASE("contour coefficient of the constant function") {
    Signature sig(1, 1);
    auto one = ReducedPolyQ::one(sig);
    auto c = contour_coefficient(lift_sampler(one), mi({0}), mi({0}), sig, 0.5, 64);
    CHECK(std::abs(c - std::complex<double>(1.0, 0.0)) < 1e-10);
}

TEST_CASE("contour recovers monomial coefficients and rejects bad parameters") {
    Signature sig(1, 1);
    auto z11 = ReducedPolyQ::monomial(sig, mi({1}), mi({1}));
    auto sampler = lift_sampler(z11);
    CHECK(std::abs(contour_coefficient(sampler, mi({1}), mi({1}), sig, 0.5, 64) - 1.0) < 1e-8);
    CHECK(std::abs(contour_coefficient(sampler, mi({2}), mi({2}), sig, 0.5, 64)) < 1e-8);

    CHECK_THROWS_AS(contour_coefficient(sampler, mi({1}), mi({1}), sig, 1.5, 64),
                    std::invalid_argument);
    CHECK_THROWS_AS(contour_coefficient(sampler, mi({1}), mi({1}), sig, 0.0, 64),
                    std::invalid_argument);
    CHECK_THROWS_AS(contour_coefficient(sampler, mi({1}), mi({1}), sig, 0.5, 4),
                    std::invalid_argument);
}

TEST_CASE("contour recovers a mixed linear combination") {
    Signature sig(1, 2);
    auto f = GaussianRational(2) * ReducedPolyQ::monomial(sig, mi({2}), mi({1})) +
             GaussianRational(Rat(0), Rat(-1)) * ReducedPolyQ::monomial(sig, mi({0}), mi({1}));
    auto sampler = lift_sampler(f);
    auto c21 = contour_coefficient(sampler, mi({2}), mi({1}), sig, 0.5, 64);
    auto c01 = contour_coefficient(sampler, mi({0}), mi({1}), sig, 0.5, 64);
    CHECK(std::abs(c21 - std::complex<double>(2.0, 0.0)) < 1e-8);
    CHECK(std::abs(c01 - std::complex<double>(0.0, -1.0)) < 1e-8);
    CHECK(std::abs(contour_coefficient(sampler, mi({1}), mi({1}), sig, 0.5, 64)) < 1e-8);
}

TEST_CASE("contour round trip in two variables") {
    Signature sig(2, 3);
    auto f = GaussianRational(make_rat(3, 2)) * ReducedPolyQ::monomial(sig, mi({1, 1}), mi({0, 2})) +
             GaussianRational(make_rat(-1, 3)) * ReducedPolyQ::monomial(sig, mi({1, 0}), mi({1, 0}));
    auto sampler = lift_sampler(f);
    double radius = 1.0 / (2.0 * std::sqrt(2.0));
    auto a = contour_coefficient(sampler, mi({1, 1}), mi({0, 2}), sig, radius, 32);
    auto b = contour_coefficient(sampler, mi({1, 0}), mi({1, 0}), sig, radius, 32);
    auto z = contour_coefficient(sampler, mi({0, 0}), mi({0, 0}), sig, radius, 32);
    CHECK(std::abs(a - std::complex<double>(1.5, 0.0)) < 1e-8);
    CHECK(std::abs(b - std::complex<double>(-1.0 / 3.0, 0.0)) < 1e-8);
    CHECK(std::abs(z) < 1e-8);
}

TEST_CASE("quadrature error decays with the node count") {
    Signature sig(1, 1);
    auto z11 = ReducedPolyQ::monomial(sig, mi({1}), mi({1}));
    auto sampler = lift_sampler(z11);
    double prev = 1.0;
    for (unsigned m : {16u, 32u, 64u}) {
        double err = std::abs(contour_coefficient(sampler, mi({1}), mi({1}), sig, 0.5, m) - 1.0);
        CHECK((err <= prev * 0.51 || err < 1e-12));
        prev = err;
    }
}

TEST_CASE("positivity probe pinned value at the origin") {
    Signature sig(1, 1);
    auto f = ReducedPolyQ::monomial(sig, mi({1}), mi({0}));
    std::vector<std::vector<std::complex<double>>> pts{{std::complex<double>(0.0, 0.0)}};
    auto rep = positivity_probe(f, make_rat(-1), pts, 1e-12);
    CHECK(rep.values.size() == 1);
    CHECK(rep.values[0].real() == doctest::Approx(1.0)); // -hbar
    CHECK(std::abs(rep.values[0].imag()) < 1e-14);
    CHECK(rep.all_above(1e-12));

    CHECK_THROWS_AS(positivity_probe(f, make_rat(1, 3), pts, 1e-12), OmegaError);
}

TEST_CASE("positivity holds empirically on the disc") {
    Signature sig(1, 1);
    std::mt19937_64 rng(77);
    for (Rat h : {make_rat(-1, 4), make_rat(-1, 2), make_rat(-1)}) {
        for (int it = 0; it < 5; ++it) {
            ReducedPolyQ f(sig);
            for (int t = 0; t < 3; ++t) {
                MultiIndex P = MultiIndex::zero(1), Q = MultiIndex::zero(1);
                P[0] = rng() % 4;
                Q[0] = rng() % 4;
                f = f + GaussianRational(make_rat((long)(rng() % 7) - 3, 1 + (long)(rng() % 2)),
                                         make_rat((long)(rng() % 5) - 2)) *
                            ReducedPolyQ::monomial(sig, P, Q);
            }
            std::vector<std::vector<std::complex<double>>> pts;
            for (int p = 0; p < 40; ++p) {
                double re = ((double)(rng() % 2000) / 1000.0 - 1.0) * 0.7;
                double im = ((double)(rng() % 2000) / 1000.0 - 1.0) * 0.7;
                pts.push_back({std::complex<double>(re, im)});
            }
            auto rep = positivity_probe(f, h, pts, 1e-12);
            CHECK(rep.all_above(1e-12));
        }
    }
}

TEST_CASE("the defect sum is exactly 1 + hbar and goes negative below -1") {
    ReducedPolyH defect = cp1_defect_sum();
    REQUIRE(defect.terms.size() == 1);
    auto& [key, coeff] = *defect.terms.begin();
    CHECK(key.P.total() == 0);
    CHECK(key.Q.total() == 0);
    CHECK(coeff ==
          HRational(HPoly(std::vector<GaussianRational>{GaussianRational(1), GaussianRational(1)})));
    CHECK(coeff.eval(GaussianRational(make_rat(-2))) == GaussianRational(-1));
}
