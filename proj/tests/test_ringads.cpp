#include <catch_amalgamated.hpp>

#include <random>

#include "adsing/ad_axioms.hpp"
#include "adsing/io.hpp"
#include "axiom_violations.hpp"

using namespace adsing;

namespace
{

PreAd on(const BallComplex& k, int degree, std::vector<std::pair<std::string, long>> values,
         const RingSpec& ring = RingSpec())
{
    PreAd m(share(k), degree, ring);
    for (const auto& [id, v] : values)
        m.set(id, Integer(v));
    return m;
}

// Oracle: rank over Q of the (k+1)-boundary, so degree-k ads (cocycles) have
// rank #k-cells minus it.
std::size_t cocycle_rank(const BallComplex& k, int degree)
{
    auto rows = k.cells_of_dim(degree);
    auto cols = k.cells_of_dim(degree + 1);
    std::vector<std::vector<mpq_class>> a(cols.size(), std::vector<mpq_class>(rows.size()));
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (const auto& e : k.boundary(cols[i]))
            for (std::size_t j = 0; j < rows.size(); ++j)
                if (rows[j] == e.face)
                    a[i][j] = e.sign;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < rows.size() && rank < cols.size(); ++col)
    {
        std::size_t p = rank;
        while (p < cols.size() && a[p][col] == 0)
            ++p;
        if (p == cols.size())
            continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (i != rank && a[i][col] != 0)
            {
                mpq_class f = a[i][col] / a[rank][col];
                for (std::size_t j = col; j < rows.size(); ++j)
                    a[i][j] -= f * a[rank][j];
            }
        ++rank;
    }
    return rows.size() - rank;
}

} // namespace

TEST_CASE("empty pre-ads are ads", "[ringads]")
{
    for (int n = 0; n <= 3; ++n)
        for (int d = -1; d <= n + 1; ++d)
            CHECK(is_ad(PreAd(share(simplex(n)), d, RingSpec())).ok());
}

TEST_CASE("edge ad condition by hand", "[ringads]")
{
    BallComplex e = simplex(1);
    CHECK(is_ad(on(e, 0, {{"[0]", 7}, {"[1]", 7}})).ok());
    auto bad = is_ad(on(e, 0, {{"[0]", 1}, {"[1]", 0}}));
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.violations.front().find("[0,1]") != std::string::npos);
    // Over Z/3 the values 1 and 4 agree.
    CHECK(is_ad(on(e, 0, {{"[0]", 1}, {"[1]", 4}}, RingSpec{Integer(3)})).ok());
    // An empty endpoint contributes nothing, so r on one end alone fails unless r = 0.
    CHECK(is_ad(on(e, 0, {{"[0]", 0}})).ok());
    CHECK_FALSE(is_ad(on(e, 0, {{"[0]", 2}})).ok());
}

TEST_CASE("values live only in the pre-ad's degree", "[ringads]")
{
    PreAd m(share(simplex(1)), 0, RingSpec());
    CHECK_THROWS_AS(m.set("[0,1]", Integer(1)), AdError);
    CHECK_NOTHROW(m.set("[0,1]", Value()));
}

TEST_CASE("cylinders", "[ringads]")
{
    PreAd empty(share(simplex(2)), 1, RingSpec());
    CHECK(cylinder(empty).is_empty());

    PreAd p = on(point(), 0, {{"[0]", 5}});
    PreAd cyl = cylinder(p);
    REQUIRE(cyl.complex().size() == 3);
    CHECK(cyl.value(interval_cells::end0) == Value(Integer(5)));
    CHECK(cyl.value(interval_cells::end1) == Value(Integer(5)));
    CHECK_FALSE(cyl.value(interval_cells::edge));
    CHECK(is_ad(cyl).ok());

    PreAd constant = on(simplex(1), 0, {{"[0]", 3}, {"[1]", 3}});
    PreAd c2 = cylinder(constant);
    CHECK(is_ad(c2).ok());
    CHECK(restrict_end(c2, constant.complex_ptr(), 0) == constant);
    CHECK(restrict_end(c2, constant.complex_ptr(), 1) == constant);

    CHECK_THROWS_AS(cylinder(on(simplex(1), 0, {{"[0]", 1}})), AdError);
}

TEST_CASE("gluing the split interval", "[ringads][subdivision]")
{
    Subdivision s = interval_subdivide(point());
    PreAd fine(s.fine, 1, RingSpec());
    fine.set("([0],[0,m])", Integer(4));
    fine.set("([0],[m,1])", Integer(4));
    PreAd coarse = glue(s, fine);
    // Both halves are carried by the single edge with orientation +1.
    CHECK(coarse.value(interval_cells::edge) == Value(Integer(8)));

    CHECK(glue(s, PreAd(s.fine, 1, RingSpec())).is_empty());

    Subdivision sq = interval_subdivide(simplex(1));
    PreAd mismatched(sq.fine, 0, RingSpec());
    mismatched.set(0, Integer(1));
    REQUIRE_FALSE(is_ad(mismatched).ok());
    CHECK_THROWS_AS(glue(sq, mismatched), AdError);
}

TEST_CASE("glue undoes refinement on random ads", "[ringads][subdivision][property]")
{
    std::mt19937 rng(5);
    for (int n = 0; n <= 2; ++n)
    {
        Subdivision s = interval_subdivide(simplex(n));
        for (int d = 0; d <= s.coarse->max_dim(); ++d)
            for (int rep = 0; rep < 3; ++rep)
            {
                PreAd m = detail::random_ad(s.coarse, d, RingSpec(), rng);
                PreAd fine = refine(s, m);
                CHECK(is_ad(fine).ok());
                CHECK(glue(s, fine) == m);
            }
    }
}

TEST_CASE("transport along identity and collapse", "[ringads][transport]")
{
    PreAd m = on(simplex(1), 0, {{"[0]", 2}, {"[1]", 2}});
    CHECK(transport(CellIsomorphism::identity(m.complex_ptr()), m) == m);

    auto pt = share(point());
    CellIsomorphism c = collapse_isomorphism(pt, 1u, 1);
    REQUIRE(validate_isomorphism(c).ok());
    PreAd v(c.target, 0, RingSpec());
    v.set(0, Integer(9));
    PreAd moved = transport(c, v);
    CHECK(moved.degree() == 1);
    std::size_t edge = c.source->index_of("([0],[0,1])");
    CHECK(moved.value(edge) == Value(Integer(9)));

    CellIsomorphism broken = collapse_isomorphism(share(simplex(1)), 1u, 1);
    for (std::size_t cell = 0; cell < broken.source->size(); ++cell)
        if (!broken.source_rel[cell] && broken.source->dim(cell) == 2)
            broken.signs[cell] = -broken.signs[cell];
    CHECK_FALSE(validate_isomorphism(broken).ok());
    CHECK_THROWS_AS(transport(broken, PreAd(broken.target, 0, RingSpec())), AdError);
}

TEST_CASE("ad groups are the cocycle lattices", "[ringads][property]")
{
    CHECK(ad_group(simplex(1), 0, RingSpec()).group().to_string() == "Z^1");
    std::vector<BallComplex> pieces{point(), simplex(1), simplex(2), simplex(3),
                                    boundary_subcomplex(simplex(2), "[0,1,2]"),
                                    product(simplex(1), simplex(1)),
                                    product(boundary_subcomplex(simplex(2), "[0,1,2]"), simplex(1))};
    for (const auto& k : pieces)
        for (int d = 0; d <= k.max_dim(); ++d)
        {
            FgAbGroup g = ad_group(k, d, RingSpec()).group();
            CHECK(g.divisors().empty());
            CHECK(g.rank() == cocycle_rank(k, d));
        }
}

TEST_CASE("plain bordism is the coefficient ring in degree 0", "[ringads][bordism]")
{
    for (int k = -2; k <= 4; ++k)
        CHECK(bordism_group(k, RingSpec()).isomorphic(k == 0 ? FgAbGroup::free(1) : FgAbGroup()));
    CHECK(bordism_group(0, RingSpec{Integer(6)}).to_string() == "Z/6");
    for (long m : {2L, 4L, 5L, 12L})
    {
        CHECK(bordism_group(0, RingSpec{Integer(m)}).isomorphic(FgAbGroup::cyclic(Integer(m))));
        CHECK(bordism_group(1, RingSpec{Integer(m)}).is_trivial());
    }
}

TEST_CASE("ring model passes every axiom validator", "[ringads][axioms]")
{
    for (long m : {0L, 6L})
    {
        RingSpec ring{Integer(m)};
        AxiomCorpus corpus = standard_corpus(ring, 2024);
        AdTheoryModel model = ring_model();
        auto rep = check_all_axioms(model, corpus);
        INFO("modulus " << m);
        CHECK(rep.pointed.ok());
        CHECK(rep.full.ok());
        CHECK(rep.local.ok());
        CHECK(rep.gluing.ok());
        CHECK(rep.cylinder.ok());
        CHECK(rep.stable.ok());
        CHECK_FALSE(corpus.non_ads.empty());
        CHECK_FALSE(corpus.broken_isomorphisms.empty());
    }
}

TEST_CASE("each validator rejects its ten broken models", "[ringads][axioms]")
{
    AxiomCorpus corpus = standard_corpus();
    for (const auto& axiom : violations::all_axioms())
    {
        INFO(axiom.name);
        CHECK(axiom.broken.size() == 10);
        auto missed = violations::missed(axiom, corpus);
        for (const auto& name : missed)
            UNSCOPED_INFO("accepted: " << name);
        CHECK(missed.empty());
    }
}

TEST_CASE("ad json round trip", "[ringads][io]")
{
    std::mt19937 rng(3);
    auto k = share(product(simplex(1), simplex(1)));
    for (int d = 0; d <= 2; ++d)
    {
        PreAd m = detail::random_ad(k, d, RingSpec{Integer(5)}, rng);
        PreAd back = ad_from_json(io::parse_json(ad_to_json(m).dump()));
        CHECK(back == m);
    }
    Json wrong_degree = ad_to_json(on(simplex(1), 0, {{"[0]", 1}, {"[1]", 1}}));
    wrong_degree["values"][0]["cell"] = "[0,1]";
    CHECK_THROWS_AS(ad_from_json(wrong_degree), ParseError);
    Json unknown = ad_to_json(on(simplex(1), 0, {{"[0]", 1}}));
    unknown["values"][0]["cell"] = "[5]";
    CHECK_THROWS_AS(ad_from_json(unknown), ParseError);
}
