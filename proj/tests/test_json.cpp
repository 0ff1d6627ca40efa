#include <doctest.h>

#include "starred/json_io.hpp"

using namespace starred;
using nlohmann::json;

namespace {

MultiIndex mi(std::vector<unsigned> v) { return MultiIndex(std::move(v)); }

} // namespace

TEST_CASE("gaussian document round trip, both bases") {
    Signature sig(2, 2);
    ReducedPolyQ f(sig);
    f.add({mi({1, 0}), mi({0, 2})}, GaussianRational(make_rat(3, 4), make_rat(-1, 2)));
    f.add({mi({0, 0}), mi({0, 0})}, GaussianRational(5));
    json doc = poly_document(f);
    auto back = parse_poly_document(doc);
    REQUIRE(std::holds_alternative<ReducedPolyQ>(back));
    CHECK(std::get<ReducedPolyQ>(back) == f);
    // canonical re-serialization is stable
    CHECK(poly_document(std::get<ReducedPolyQ>(back)) == doc);

    AmbientPolyQ g(sig);
    g.add({mi({1, 0, 2}), mi({0, 0, 0})}, GaussianRational(make_rat(-2, 7)));
    json gdoc = poly_document(g);
    auto gback = parse_poly_document(gdoc);
    REQUIRE(std::holds_alternative<AmbientPolyQ>(gback));
    CHECK(std::get<AmbientPolyQ>(gback) == g);
}

TEST_CASE("hbar_rational document round trip through a symbolic product") {
    Signature sig(1, 2);
    auto f = ReducedPolyQ::monomial(sig, mi({1}), mi({0}));
    auto g = ReducedPolyQ::monomial(sig, mi({0}), mi({1}));
    ReducedPolyH prod = star_red_symbolic(g, f); // has a pure-hbar coefficient
    json doc = poly_document(prod);
    CHECK(doc["coeff_mode"] == "hbar_rational");
    auto back = parse_poly_document(doc);
    REQUIRE(std::holds_alternative<ReducedPolyH>(back));
    CHECK(std::get<ReducedPolyH>(back) == prod);
}

TEST_CASE("document validation errors") {
    json doc;
    doc["n"] = 1;
    doc["s"] = 2;
    doc["basis"] = "fundamental";
    doc["coeff_mode"] = "gaussian";
    doc["terms"] = json::array({json{{"P", {1}}, {"Q", {0}}, {"re", "1"}, {"im", "0"}}});
    CHECK_NOTHROW(parse_poly_document(doc));

    json bad = doc;
    bad["s"] = 3; // out of range for n=1
    CHECK_THROWS_AS(parse_poly_document(bad), ParseError);

    bad = doc;
    bad["terms"][0]["P"] = {1, 0}; // wrong length for fundamental basis at n=1
    CHECK_THROWS_AS(parse_poly_document(bad), ParseError);

    bad = doc;
    bad["basis"] = "spherical";
    CHECK_THROWS_AS(parse_poly_document(bad), ParseError);

    bad = doc;
    bad["terms"][0]["re"] = "1/0";
    CHECK_THROWS_AS(parse_poly_document(bad), ParseError);

    bad = doc;
    bad["terms"][0]["P"] = {-1};
    CHECK_THROWS_AS(parse_poly_document(bad), ParseError);

    bad = doc;
    bad.erase("n");
    CHECK_THROWS_AS(parse_poly_document(bad), ParseError);
}

TEST_CASE("ambient document with hbar_rational coefficients") {
    Signature sig(1, 1);
    auto f = AmbientPolyQ::monomial(sig, mi({0, 1}), mi({0, 1}));
    AmbientPolyH h = s_scale_on_levelset(f);
    json doc = poly_document(h);
    auto back = parse_poly_document(doc);
    REQUIRE(std::holds_alternative<AmbientPolyH>(back));
    CHECK(std::get<AmbientPolyH>(back) == h);
}
