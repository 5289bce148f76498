#include <catch_amalgamated.hpp>

#include "adsing/ball_complex.hpp"
#include "adsing/io.hpp"
#include "adsing/subdivision.hpp"

using namespace adsing;

namespace
{

long binomial(int n, int k)
{
    long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Oracle: rank over Q of the d-th boundary matrix, assembled from the raw incidences.
std::size_t boundary_rank(const BallComplex& k, int d)
{
    auto rows = k.cells_of_dim(d - 1);
    auto cols = k.cells_of_dim(d);
    std::vector<std::vector<mpq_class>> a(rows.size(), std::vector<mpq_class>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& e : k.boundary(cols[j]))
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (rows[i] == e.face)
                    a[i][j] += e.sign;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols.size() && rank < rows.size(); ++col)
    {
        std::size_t p = rank;
        while (p < rows.size() && a[p][col] == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && a[i][col] != 0)
            {
                mpq_class f = a[i][col] / a[rank][col];
                for (std::size_t j = col; j < cols.size(); ++j)
                    a[i][j] -= f * a[rank][j];
            }
        ++rank;
    }
    return rank;
}

std::size_t betti(const BallComplex& k, int d)
{
    std::size_t cells = k.cells_of_dim(d).size();
    std::size_t out = cells - (d > 0 ? boundary_rank(k, d) : 0);
    return out - boundary_rank(k, d + 1);
}

BallComplex circle() { return boundary_subcomplex(simplex(2), "[0,1,2]"); }

std::vector<std::size_t> dimension_counts(const BallComplex& k)
{
    std::vector<std::size_t> out(static_cast<std::size_t>(k.max_dim() + 1));
    for (const auto& c : k.cells())
        ++out[static_cast<std::size_t>(c.dim)];
    return out;
}

} // namespace

TEST_CASE("simplices have binomial cell counts and valid incidences", "[complexes]")
{
    for (int n = 0; n <= 5; ++n)
    {
        BallComplex s = simplex(n);
        CHECK(validate_complex(s).ok());
        auto counts = dimension_counts(s);
        REQUIRE(counts.size() == static_cast<std::size_t>(n + 1));
        for (int d = 0; d <= n; ++d)
            CHECK(static_cast<long>(counts[static_cast<std::size_t>(d)]) == binomial(n + 1, d + 1));
    }
    BallComplex p = simplex(0);
    CHECK(p.size() == 1);
    CHECK(p.dim(0) == 0);
}

TEST_CASE("edge boundary signs follow the alternating convention", "[complexes]")
{
    BallComplex e = simplex(1);
    std::size_t edge = e.index_of("[0,1]");
    CHECK(e.incidence(edge, e.index_of("[1]")) == 1);
    CHECK(e.incidence(edge, e.index_of("[0]")) == -1);
}

TEST_CASE("a flipped incidence sign breaks the double boundary", "[complexes]")
{
    BallComplex tri = simplex(2);
    auto entries = tri.incidence_entries();
    for (auto& e : entries)
        if (e.of == "[0,1,2]" && e.face == "[0,1]")
            e.sign = -e.sign;
    BallComplex bad(tri.cells(), entries);
    auto rep = validate_complex(bad);
    REQUIRE_FALSE(rep.ok());
    // By hand: ([2] - [1]) - ([2] - [0]) - ([1] - [0]) = 2[0] - 2[1].
    bool at_vertex_0 = false, at_vertex_1 = false, at_vertex_2 = false;
    for (const auto& v : rep.violations)
    {
        at_vertex_0 = at_vertex_0 || v == "∂∂≠0 at ([0,1,2], [0])";
        at_vertex_1 = at_vertex_1 || v == "∂∂≠0 at ([0,1,2], [1])";
        at_vertex_2 = at_vertex_2 || v == "∂∂≠0 at ([0,1,2], [2])";
    }
    CHECK(at_vertex_0);
    CHECK(at_vertex_1);
    CHECK_FALSE(at_vertex_2);
}

TEST_CASE("empty complex is valid with no homology", "[complexes]")
{
    BallComplex empty;
    CHECK(validate_complex(empty).ok());
    CHECK(empty.max_dim() == -1);
    CHECK(cellular_chain_complex(empty).homology(0).is_trivial());
}

TEST_CASE("malformed incidence data is refused at construction", "[complexes]")
{
    std::vector<Cell> cells{{"a", 0, {}}, {"b", 0, {}}, {"e", 1, {}}};
    CHECK_THROWS_AS(BallComplex(cells, {{"e", "a", 2}}), ComplexError);
    CHECK_THROWS_AS(BallComplex(cells, {{"e", "z", 1}}), ComplexError);
    CHECK_THROWS_AS(BallComplex(cells, {{"e", "a", 1}, {"e", "a", -1}}), ComplexError);
    CHECK_THROWS_AS(BallComplex({{"a", 0, {}}, {"a", 0, {}}}, {}), ComplexError);
    CHECK_THROWS_AS(BallComplex({{"a", -1, {}}}, {}), ComplexError);
}

TEST_CASE("an edge with a single endpoint is rejected", "[complexes]")
{
    BallComplex k({{"a", 0, {}}, {"e", 1, {}}}, {{"e", "a", 1}});
    CHECK_FALSE(validate_complex(k).ok());
}

TEST_CASE("products multiply cell counts and Euler characteristics", "[complexes]")
{
    BallComplex sq = product(simplex(1), simplex(1));
    CHECK(validate_complex(sq).ok());
    CHECK(dimension_counts(sq) == std::vector<std::size_t>{4, 4, 1});

    BallComplex tri = simplex(2);
    BallComplex unit = product(tri, point());
    CHECK(validate_complex(unit).ok());
    CHECK(dimension_counts(unit) == dimension_counts(tri));

    std::vector<BallComplex> pieces{point(), simplex(1), simplex(2), circle(), boundary_subcomplex(simplex(3), "[0,1,2,3]")};
    for (const auto& a : pieces)
        for (const auto& b : pieces)
        {
            BallComplex p = product(a, b);
            CHECK(validate_complex(p).ok());
            CHECK(p.size() == a.size() * b.size());
            CHECK(p.euler_characteristic() == a.euler_characteristic() * b.euler_characteristic());
        }

    BallComplex torus = product(circle(), circle());
    long alternating = 0;
    auto counts = dimension_counts(torus);
    for (std::size_t d = 0; d < counts.size(); ++d)
        alternating += (d % 2 == 0 ? 1 : -1) * static_cast<long>(counts[d]);
    CHECK(alternating == 0);
    CHECK(torus.euler_characteristic() == 0);
}

TEST_CASE("boundary subcomplexes", "[complexes]")
{
    BallComplex c = circle();
    CHECK(dimension_counts(c) == std::vector<std::size_t>{3, 3});
    CHECK(validate_complex(c).ok());

    BallComplex ends = boundary_subcomplex(simplex(1), "[0,1]");
    CHECK(ends.size() == 2);
    CHECK(ends.max_dim() == 0);

    CHECK(boundary_subcomplex(simplex(2), "[1]").empty());
}

TEST_CASE("cellular homology matches the rational rank oracle", "[complexes][homology]")
{
    std::vector<std::pair<std::string, BallComplex>> cases{
        {"point", point()},
        {"triangle", simplex(2)},
        {"circle", circle()},
        {"sphere", boundary_subcomplex(simplex(3), "[0,1,2,3]")},
        {"torus", product(circle(), circle())},
        {"cylinder", product(circle(), simplex(1))},
        {"square", product(simplex(1), simplex(1))},
    };
    for (const auto& [name, k] : cases)
    {
        INFO(name);
        ChainComplexZ cc = cellular_chain_complex(k);
        for (int d = 0; d <= k.max_dim(); ++d)
        {
            FgAbGroup h = cc.homology(d);
            CHECK(h.divisors().empty());
            CHECK(h.rank() == betti(k, d));
        }
    }
    ChainComplexZ circle_cc = cellular_chain_complex(circle());
    CHECK(circle_cc.homology(0).to_string() == "Z^1");
    CHECK(circle_cc.homology(1).to_string() == "Z^1");
    ChainComplexZ tri = cellular_chain_complex(simplex(2));
    CHECK(tri.homology(0).to_string() == "Z^1");
    CHECK(tri.homology(1).is_trivial());
    CHECK(tri.homology(2).is_trivial());
}

TEST_CASE("interval subdivisions", "[complexes][subdivision]")
{
    Subdivision p = interval_subdivide(point());
    CHECK(dimension_counts(*p.fine) == std::vector<std::size_t>{3, 2});
    CHECK(check_subdivision(p).ok());

    Subdivision e = interval_subdivide(simplex(1));
    CHECK(e.fine->cells_of_dim(2).size() == 2);
    CHECK(e.coarse->cells_of_dim(2).size() == 1);
    CHECK(check_subdivision(e).ok());
    CHECK(validate_complex(*e.fine).ok());

    for (int n = 0; n <= 2; ++n)
        CHECK(check_subdivision(interval_subdivide(simplex(n))).ok());
    CHECK(check_subdivision(interval_subdivide(product(simplex(1), simplex(1)))).ok());

    // Reversing one half of the split square breaks its fundamental chain.
    Subdivision broken = e;
    for (std::size_t f = 0; f < broken.fine->size(); ++f)
        if (broken.fine->dim(f) == 2)
        {
            broken.orientation_sign[f] = -1;
            break;
        }
    CHECK_FALSE(check_subdivision(broken).ok());
}

TEST_CASE("complex json round trip and rejection of bad input", "[complexes][io]")
{
    std::vector<BallComplex> pieces{point(), simplex(2), product(simplex(1), simplex(2)), circle()};
    for (const auto& k : pieces)
    {
        BallComplex back = complex_from_json(io::parse_json(complex_to_json(k).dump()));
        REQUIRE(back.size() == k.size());
        for (std::size_t i = 0; i < k.size(); ++i)
        {
            CHECK(back.id(i) == k.id(i));
            CHECK(back.dim(i) == k.dim(i));
            for (std::size_t j = 0; j < k.size(); ++j)
                CHECK(back.incidence(i, j) == k.incidence(i, j));
        }
    }
    Json bad_sign = complex_to_json(simplex(1));
    bad_sign["incidence"][0]["sign"] = 3;
    CHECK_THROWS_AS(complex_from_json(bad_sign), ParseError);
    Json dangling = complex_to_json(simplex(1));
    dangling["incidence"][0]["face"] = "[7]";
    CHECK_THROWS_AS(complex_from_json(dangling), ParseError);
    CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"cells": 3, "incidence": []})")), ParseError);
    CHECK_THROWS_AS(io::parse_json("{not json"), ParseError);

    CHECK(complex_spec(Json("simplex:3")).size() == 15);
    CHECK(complex_spec(Json("boundary:2")).size() == 6);
    CHECK(complex_spec(Json("product:1,1")).size() == 9);
    CHECK_THROWS_AS(complex_spec(Json("simplex:x")), ParseError);
}
