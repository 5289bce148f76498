#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "adsing/koszul.hpp"
#include "adsing/singular/koszul_comparison.hpp"

using namespace adsing;

namespace
{

SingularitySequence seq(const std::string& s) { return SingularitySequence::parse(s); }

// Z in degree 0 with the given scalars.
GradedModule integers_with(const std::vector<long>& xs)
{
    GradedModule m = GradedModule::concentrated(FgAbGroup::free(1), 0, 0, 0);
    for (long x : xs)
        m.add_scalar(Integer(x));
    return m;
}

long binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Oracle for nonzero integer sequences with gcd g: H_e = (Z/g)^C(n-1, e).
// Follows from K(a_1..a_n) being quasi-isomorphic to K(g, 0, .., 0) and the
// tensor decomposition of K(0) as Z in exterior degrees 0 and 1.
FgAbGroup expected_scalar_homology(const std::vector<long>& xs, int e)
{
    Integer g = 0;
    for (long x : xs)
        g = gcd(g, Integer(x));
    const int n = static_cast<int>(xs.size());
    if (n == 0)
        return e == 0 ? FgAbGroup::free(1) : FgAbGroup();
    std::vector<Integer> d(static_cast<std::size_t>(binomial(n - 1, e)), g);
    return FgAbGroup::from_invariants(0, d);
}

} // namespace

TEST_CASE("one scalar: H_0 = Z/p and H_1 = 0", "[koszul]")
{
    for (long p : {2L, 3L, 5L, 12L})
    {
        KoszulHomology h = koszul_homology(build_koszul(integers_with({p})));
        CHECK(h.at(0, 0)->isomorphic(FgAbGroup::cyclic(Integer(p))));
        CHECK(h.at(1, 0)->is_trivial());
        CHECK_FALSE(h.higher_nonvanishing());
    }
    KoszulHomology unit = koszul_homology(build_koszul(integers_with({1})));
    CHECK(unit.at(0, 0)->is_trivial());
    CHECK(unit.at(1, 0)->is_trivial());
}

TEST_CASE("the sequence (2,2) has H_1 = Z/2", "[koszul]")
{
    KoszulHomology h = koszul_homology(build_koszul(integers_with({2, 2})));
    CHECK(h.at(0, 0)->to_string() == "Z/2");
    CHECK(h.at(1, 0)->to_string() == "Z/2");
    CHECK(h.at(2, 0)->is_trivial());
    CHECK(h.higher_nonvanishing());
}

TEST_CASE("complex of (2,3) in exterior degree 1", "[koszul]")
{
    KoszulComplex k = build_koszul(integers_with({2, 3}));
    CHECK(k.component(1, 0)->isomorphic(FgAbGroup::free(2)));
    CHECK(k.component(2, 0)->isomorphic(FgAbGroup::free(1)));
    auto d1 = k.differential(1, 0);
    REQUIRE(d1);
    REQUIRE(d1->matrix().rows() == 1);
    REQUIRE(d1->matrix().cols() == 2);
    CHECK(d1->matrix()(0, 0) == 2);
    CHECK(d1->matrix()(0, 1) == 3);
    auto d2 = k.differential(2, 0);
    REQUIRE(d2);
    CHECK(compose(*d1, *d2).is_zero());
    KoszulHomology h = koszul_homology(k);
    for (int e = 0; e <= 2; ++e)
        CHECK(h.at(e, 0)->is_trivial());
}

TEST_CASE("length zero is the module in exterior degree 0", "[koszul]")
{
    std::map<int, FgAbGroup> comps{{0, FgAbGroup::free(1)}, {1, FgAbGroup::cyclic(Integer(4))}};
    KoszulHomology h = koszul_homology(build_koszul(GradedModule(-1, 2, comps)));
    CHECK(h.n == 0);
    for (int d = -1; d <= 2; ++d)
    {
        auto it = comps.find(d);
        CHECK(h.at(0, d)->isomorphic(it == comps.end() ? FgAbGroup() : it->second));
    }
    CHECK_FALSE(h.higher_nonvanishing());
}

TEST_CASE("scalar sequences against the gcd oracle", "[koszul][property]")
{
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> entry(-12, 12);
    std::uniform_int_distribution<int> length(1, 4);
    for (int rep = 0; rep < 60; ++rep)
    {
        std::vector<long> xs(static_cast<std::size_t>(length(rng)));
        for (auto& x : xs)
            do
                x = entry(rng);
            while (x == 0);
        KoszulHomology h = koszul_homology(build_koszul(integers_with(xs)));
        for (int e = 0; e <= static_cast<int>(xs.size()); ++e)
        {
            INFO("entries " << Catch::Detail::stringify(xs) << ", e = " << e);
            CHECK(h.at(e, 0)->isomorphic(expected_scalar_homology(xs, e)));
        }
    }
}

TEST_CASE("zero scalars give the exterior algebra", "[koszul]")
{
    for (int n = 0; n <= 4; ++n)
    {
        KoszulHomology h = koszul_homology(build_koszul(integers_with(std::vector<long>(static_cast<std::size_t>(n), 0))));
        for (int e = 0; e <= n; ++e)
            CHECK(h.at(e, 0)->isomorphic(FgAbGroup::free(static_cast<std::size_t>(binomial(n, e)))));
    }
}

TEST_CASE("dd = 0 and rational Euler characteristic vanishes", "[koszul][property]")
{
    std::mt19937 rng(41);
    std::uniform_int_distribution<long> entry(-6, 6);
    for (int rep = 0; rep < 30; ++rep)
    {
        const int rank = 1 + rep % 3;
        GradedModule m = GradedModule::concentrated(FgAbGroup::free(static_cast<std::size_t>(rank)), 0, 0, 0);
        // Polynomials in one random matrix commute with each other.
        IntMatrix a(static_cast<std::size_t>(rank), static_cast<std::size_t>(rank));
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                a(i, j) = entry(rng);
        IntMatrix b = a * a;
        const long c = entry(rng);
        for (std::size_t i = 0; i < b.rows(); ++i)
            b(i, i) += c;
        for (const IntMatrix& x : {a, b})
        {
            Endomorphism e;
            e.maps.emplace(0, AbMap(m.component(0), m.component(0), x));
            m.add_endomorphism(e);
        }
        KoszulComplex k = build_koszul(m);
        CHECK(compose(*k.differential(1, 0), *k.differential(2, 0)).is_zero());
        KoszulHomology h = koszul_homology(k);
        long chi = 0;
        for (int e = 0; e <= 2; ++e)
            chi += (e % 2 == 0 ? 1 : -1) * static_cast<long>(h.at(e, 0)->rank());
        CHECK(chi == 0);
    }
}

TEST_CASE("noncommuting endomorphisms are refused", "[koszul]")
{
    GradedModule m = GradedModule::concentrated(FgAbGroup::free(2), 0, 0, 0);
    IntMatrix a(2, 2), b(2, 2);
    a(0, 0) = 1, a(0, 1) = 1, a(1, 1) = 1;
    b(0, 0) = 1, b(1, 0) = 1, b(1, 1) = 1;
    for (const IntMatrix& x : {a, b})
    {
        Endomorphism e;
        e.maps.emplace(0, AbMap(m.component(0), m.component(0), x));
        m.add_endomorphism(e);
    }
    CHECK_THROWS_AS(m.check_commuting(), std::domain_error);
    CHECK_THROWS_AS(build_koszul(m), std::domain_error);

    Endomorphism missing;
    missing.shift = 0;
    CHECK_THROWS_AS(m.add_endomorphism(missing), std::invalid_argument);
}

TEST_CASE("homology does not depend on the order of the sequence", "[koszul][property]")
{
    std::vector<std::vector<long>> cases{{2, 3, 4}, {6, 4, 0}, {2, 2, 5}, {0, 3, 9}};
    for (auto xs : cases)
    {
        KoszulHomology base = koszul_homology(build_koszul(integers_with(xs)));
        std::sort(xs.begin(), xs.end());
        do
        {
            KoszulHomology h = koszul_homology(build_koszul(integers_with(xs)));
            for (int e = 0; e <= 3; ++e)
                CHECK(h.at(e, 0)->isomorphic(*base.at(e, 0)));
        } while (std::next_permutation(xs.begin(), xs.end()));
    }
}

TEST_CASE("a shifted endomorphism and window indeterminacy", "[koszul]")
{
    // Truncated Z[t] on degrees 0..3, t of degree 1.
    std::map<int, FgAbGroup> comps;
    for (int d = 0; d <= 3; ++d)
        comps[d] = FgAbGroup::free(1);
    GradedModule m(0, 3, comps);
    Endomorphism t;
    t.shift = 1;
    for (int d = 0; d <= 2; ++d)
        t.maps.emplace(d, AbMap::identity(comps[d]));
    m.add_endomorphism(t);
    KoszulHomology h = koszul_homology(build_koszul(m));
    CHECK_FALSE(h.at(0, 0));
    for (int d = 1; d <= 3; ++d)
    {
        CHECK(h.at(0, d)->is_trivial());
        CHECK(h.at(1, d)->is_trivial());
    }
    auto rep = regularity_report(m);
    REQUIRE(rep.size() == 1);
    CHECK(rep[0].regular == std::optional<bool>(true));
}

TEST_CASE("regularity by hand", "[koszul][regularity]")
{
    CHECK(is_regular_sequence(integers_with({2, 3})));
    CHECK(is_regular_sequence(integers_with({5})));

    auto twice = regularity_report(integers_with({2, 2}));
    REQUIRE(twice.size() == 2);
    CHECK(twice[0].regular == std::optional<bool>(true));
    CHECK(twice[1].regular == std::optional<bool>(false));
    CHECK(twice[1].detail.find("Z/2") != std::string::npos);

    auto zero = regularity_report(integers_with({0}));
    CHECK(zero[0].regular == std::optional<bool>(false));
    CHECK_FALSE(is_regular_sequence(integers_with({0})));
}

TEST_CASE("regular sequences have no higher homology", "[koszul][regularity][property]")
{
    std::mt19937 rng(8);
    std::uniform_int_distribution<long> entry(-9, 9);
    for (int rep = 0; rep < 40; ++rep)
    {
        std::vector<long> xs{entry(rng), entry(rng)};
        GradedModule m = integers_with(xs);
        if (is_regular_sequence(m))
            CHECK_FALSE(koszul_homology(build_koszul(m)).higher_nonvanishing());
    }
}

TEST_CASE("bordism module carries the coefficient multiplications", "[koszul][comparison]")
{
    GradedModule m = bordism_module(RingSpec(), seq("2,3"), 2, -1, 3);
    REQUIRE(m.length() == 2);
    CHECK(m.component(0).isomorphic(FgAbGroup::free(1)));
    for (int d : {-1, 1, 2, 3})
        CHECK(m.component(d).is_trivial());
    const IntMatrix& x1 = m.endomorphisms()[0].maps.at(0).matrix();
    const IntMatrix& x2 = m.endomorphisms()[1].maps.at(0).matrix();
    CHECK(abs(x1(0, 0)) == 2);
    CHECK(abs(x2(0, 0)) == 3);
}

TEST_CASE("Koszul total degrees match bordism mod S", "[koszul][comparison]")
{
    for (const std::string s : {"2", "3", "2,3", "5,7"})
    {
        INFO("sequence " << s);
        SingularitySequence p = seq(s);
        KoszulComparison c = compare_koszul_bordism(RingSpec(), p, static_cast<int>(p.size()), -1, 4);
        CHECK(c.all_match());
        CHECK(c.regular());
        CHECK_FALSE(c.homology.higher_nonvanishing());
    }
    KoszulComparison coprime = compare_koszul_bordism(RingSpec(), seq("2,3"), 2, -1, 4);
    CHECK(coprime.vacuous);

    KoszulComparison one = compare_koszul_bordism(RingSpec(), seq("2"), 1, -1, 4);
    REQUIRE(one.shift);
    CHECK(one.verdicts.at(1) == ComparisonVerdict::match);
    CHECK(one.bordism.at(1).to_string() == "Z/2");
}

TEST_CASE("a nonregular sequence is flagged", "[koszul][comparison]")
{
    KoszulComparison c = compare_koszul_bordism(RingSpec(), seq("2,2"), 2, -1, 4);
    CHECK_FALSE(c.regular());
    CHECK(c.homology.higher_nonvanishing());
    CHECK(c.to_string().find("not regular") != std::string::npos);
    CHECK(c.to_string().find("nonvanishing higher Koszul homology") != std::string::npos);
    CHECK_THROWS_AS(compare_koszul_bordism(RingSpec(), seq("2"), 2, -1, 4), std::invalid_argument);
}
