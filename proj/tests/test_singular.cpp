#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "adsing/io.hpp"
#include "adsing/singular/bordism.hpp"
#include "adsing/singular/cubical.hpp"
#include "adsing/singular/exact_sequence.hpp"

using namespace adsing;

namespace
{

SingularitySequence seq(const std::string& s) { return SingularitySequence::parse(s); }

// Oracle from the Bockstein sequence, worked out by hand: over Z/m with one
// ring singularity p, coker(p) = Z/gcd(p, m) sits in degree 1 and
// ker(p) in degree 0.  Over Z the kernel vanishes unless p = 0.
std::map<int, FgAbGroup> one_singularity_oracle(long p, long m)
{
    FgAbGroup coker = FgAbGroup::cyclic(Integer(std::gcd(p, m)));
    FgAbGroup ker = m == 0 ? (p == 0 ? FgAbGroup::free(1) : FgAbGroup()) : FgAbGroup::cyclic(Integer(std::gcd(p, m)));
    return {{0, ker}, {1, coker}};
}

// Oracle for two nonzero ring singularities over Z: applying the same
// argument to multiplication by b on Z/a gives Z/gcd(a, b) in degrees 1 and 2.
std::map<int, FgAbGroup> two_singularity_oracle(long a, long b)
{
    FgAbGroup piece = FgAbGroup::cyclic(Integer(std::gcd(a, b)));
    return {{1, piece}, {2, piece}};
}

FgAbGroup at(const std::map<int, FgAbGroup>& groups, int k)
{
    auto it = groups.find(k);
    return it == groups.end() ? FgAbGroup() : it->second;
}

} // namespace

TEST_CASE("singularity sequences parse and print", "[singular]")
{
    SingularitySequence s = seq("2,empty,3");
    REQUIRE(s.size() == 3);
    CHECK(s.entry(1) == Value(Integer(2)));
    CHECK_FALSE(s.entry(2));
    CHECK(s.to_string() == "(2,empty,3)");
    CHECK(seq("").size() == 0);
    CHECK_THROWS_AS(seq("2,x"), std::invalid_argument);
    CHECK(s.prefix(1).to_string() == "(2)");
}

TEST_CASE("is_ad_mod_S examples over the point", "[singular]")
{
    auto pt = share(point());
    auto faces = make_faces(pt, 1);
    for (long a : {-3L, 0L, 1L, 5L})
    {
        SingAd m(faces, RingSpec(), seq("2"), 1);
        m.set(3u, 0, 3u, Integer(a));
        CHECK(is_ad_mod_S(m).ok());
    }
    CHECK(is_ad_mod_S(SingAd(faces, RingSpec(), seq("2"), 0)).ok());

    // Degree 0: M_{0} = r forces the {0} vertex of M_{01} to be 2r.
    SingAd m(faces, RingSpec(), seq("2"), 0);
    m.set(1u, 0, 1u, Integer(0));
    m.set(3u, 0, 1u, Integer(0));
    CHECK(is_ad_mod_S(m).ok());
    m.set(1u, 0, 1u, Integer(1));
    m.set(3u, 0, 1u, Integer(1));
    auto rep = is_ad_mod_S(m);
    REQUIRE_FALSE(rep.ok());
    bool face_condition = false;
    for (const auto& v : rep.violations)
        face_condition = face_condition || v.find("face 1 condition") != std::string::npos;
    CHECK(face_condition);

    // A value on a cell missing the vertex 0 breaks the d_0 condition.
    SingAd d0(faces, RingSpec(), seq("2"), 0);
    d0.set(3u, 0, 2u, Integer(0));
    CHECK_FALSE(is_ad_mod_S(d0).ok());
}

TEST_CASE("isomorphism signs and the hexagon", "[singular]")
{
    auto faces = make_faces(share(point()), 2);
    SingAd m(faces, RingSpec(), seq("2,3"), 2);
    CHECK(m.has_default_signs());
    m.set_iso_sign(1u, 1, -1);
    CHECK(m.iso_sign(1u, 1) == -1);
    CHECK_FALSE(is_ad_mod_S(m).ok());
    // Flipping the opposite pair as well restores eps(02,1) eps(0,2) = eps(01,2) eps(0,1).
    m.set_iso_sign(1u | 4u, 1, -1);
    CHECK(is_ad_mod_S(m).ok());
    CHECK_THROWS_AS(m.set_iso_sign(3u, 1, -1), AdError);
    CHECK_THROWS_AS(m.set_iso_sign(1u, 1, 2), AdError);

    // Nondefault signs change the face condition: M_{01} = -2 M_{0}.
    auto f1 = make_faces(share(point()), 1);
    SingAd s(f1, RingSpec(), seq("2"), 1);
    s.set_iso_sign(1u, 1, -1);
    CHECK(is_ad_mod_S(s).ok());
}

TEST_CASE("adjoint and unadjoint are inverse", "[singular][property]")
{
    std::mt19937 rng(17);
    std::vector<ComplexPtr> bases{share(point()), share(simplex(1)), share(product(simplex(1), simplex(1)))};
    for (const auto& base : bases)
        for (const auto& s : {seq("2"), seq("2,3"), seq("empty,2")})
            for (int d = 0; d <= 2; ++d)
            {
                const int n = static_cast<int>(s.size());
                SingAd m = random_sing_ad(base, RingSpec(), s, n, d, rng);
                REQUIRE(is_ad_mod_S(m).ok());
                CHECK(adjoint(unadjoint(m)) == m);
            }
    SingAd on_point = random_sing_ad(share(point()), RingSpec(), seq("2"), 1, 1, rng);
    CellwiseFamily f = unadjoint(on_point);
    REQUIRE(f.objects.size() == 1);
    CHECK(f.objects[0].members[1] == on_point.member(3u));
}

TEST_CASE("mu pi delta on small families", "[singular]")
{
    auto pt = share(point());
    PreAd one(pt, 0, RingSpec());
    one.set(0, Integer(1));
    SingAd m = from_plain(one, seq("2"));

    SingAd doubled = mu(m);
    CHECK(doubled.value(1u, 0, 1u) == Value(Integer(2)));
    CHECK(mu(from_plain(one, seq("empty"))).is_empty());

    SingAd p = pi(m);
    CHECK(p.n() == 1);
    CHECK(p.degree() == 1);
    CHECK(p.value(3u, 0, 3u) == Value(Integer(1)));
    CHECK(p.member(1u).is_empty());
    CHECK(is_ad_mod_S(p).ok());

    SingAd empty(make_faces(pt, 0), RingSpec(), seq("2"), 0);
    CHECK(pi(empty).is_empty());

    SingAd back = delta(p);
    CHECK(back.n() == 0);
    CHECK(back.is_empty());
    SingAd none(make_faces(pt, 1), RingSpec(), seq("2"), 1);
    CHECK(delta(none).is_empty());
    CHECK_THROWS_AS(delta(m), AdError);
}

TEST_CASE("pi and mu keep ads valid", "[singular][property]")
{
    std::mt19937 rng(23);
    std::vector<ComplexPtr> bases{share(point()), share(simplex(1)), share(simplex(2))};
    for (const auto& base : bases)
        for (const auto& s : {seq("2,3"), seq("3,empty"), seq("empty,2"), seq("4,6")})
            for (int d = 0; d <= 2; ++d)
                for (int rep = 0; rep < 3; ++rep)
                {
                    SingAd m = random_sing_ad(base, RingSpec(), s, 1, d, rng);
                    CHECK(is_ad_mod_S(pi(m)).ok());
                    CHECK(is_ad_mod_S(mu(m)).ok());
                    CHECK(is_ad_mod_S(delta(pi(m))).ok());
                    CHECK(delta(pi(m)).is_empty());
                }
}

TEST_CASE("S = (empty): delta reaches every plain ad", "[singular]")
{
    auto pt = share(point());
    for (long r : {-2L, 1L, 7L})
    {
        auto faces = make_faces(pt, 1);
        SingAd m(faces, RingSpec(), seq("empty"), 0);
        m.set(1u, 0, 1u, Integer(r));
        REQUIRE(is_ad_mod_S(m).ok());
        CHECK(delta(m).value(1u, 0, 1u) == Value(Integer(r)));
    }
}

TEST_CASE("bordism with no singularities is plain bordism", "[singular][bordism]")
{
    for (int k = -1; k <= 3; ++k)
    {
        CHECK(bordism_group_mod_S(RingSpec(), seq(""), 0, k).isomorphic(bordism_group(k, RingSpec())));
        CHECK(bordism_group_mod_S(RingSpec{Integer(6)}, seq(""), 0, k)
                  .isomorphic(bordism_group(k, RingSpec{Integer(6)})));
    }
}

TEST_CASE("one ring singularity matches the Bockstein oracle", "[singular][bordism]")
{
    for (long m : {0L, 4L, 6L, 9L})
        for (long p : {0L, 1L, 2L, 3L, 4L})
        {
            if (m == 0 && p == 0)
                continue;
            INFO("modulus " << m << ", P = " << p);
            auto oracle = one_singularity_oracle(p, m);
            for (int k = -1; k <= 3; ++k)
                CHECK(bordism_group_mod_S(RingSpec{Integer(m)}, seq(std::to_string(p)), 1, k).isomorphic(at(oracle, k)));
        }
}

TEST_CASE("P = 0 over Z gives Z in two adjacent degrees", "[singular][bordism]")
{
    CHECK(bordism_group_mod_S(RingSpec(), seq("0"), 1, 0).to_string() == "Z^1");
    CHECK(bordism_group_mod_S(RingSpec(), seq("0"), 1, 1).to_string() == "Z^1");
    CHECK(bordism_group_mod_S(RingSpec(), seq("0"), 1, 2).is_trivial());
}

TEST_CASE("two ring singularities match the iterated Bockstein oracle", "[singular][bordism]")
{
    for (long a : {1L, 2L, 3L, 4L})
        for (long b : {1L, 2L, 3L, 6L})
        {
            INFO("S = (" << a << "," << b << ")");
            auto oracle = two_singularity_oracle(a, b);
            SingularitySequence s = seq(std::to_string(a) + "," + std::to_string(b));
            for (int k = -1; k <= 3; ++k)
                CHECK(bordism_group_mod_S(RingSpec(), s, 2, k).isomorphic(at(oracle, k)));
        }
}

TEST_CASE("empty singularities give 2^n copies of the plain theory", "[singular][bordism]")
{
    // S = (empty): mu = 0, so each degree of the sequence is 0 -> Om_k -> Om^S_(k+1) -> Om_(k+1) -> 0.
    CHECK(bordism_group_mod_S(RingSpec(), seq("empty"), 1, 0).to_string() == "Z^1");
    CHECK(bordism_group_mod_S(RingSpec(), seq("empty"), 1, 1).to_string() == "Z^1");
    CHECK(bordism_group_mod_S(RingSpec(), seq("empty"), 1, 2).is_trivial());
    // Iterating once more doubles the total rank: 1, 2, 1 in degrees 0, 1, 2.
    std::size_t total = 0;
    std::vector<std::size_t> ranks;
    for (int k = -1; k <= 3; ++k)
    {
        FgAbGroup g = bordism_group_mod_S(RingSpec(), seq("empty,empty"), 2, k);
        CHECK(g.divisors().empty());
        ranks.push_back(g.rank());
        total += g.rank();
    }
    CHECK(ranks == std::vector<std::size_t>{0, 1, 2, 1, 0});
    CHECK(total == 4);
}

TEST_CASE("exact sequence is exact on the acceptance configurations", "[singular][exactness]")
{
    struct Case
    {
        long modulus;
        std::string sequence;
        int n;
    };
    std::vector<Case> cases{{0, "2", 0},      {0, "3", 0},    {0, "empty", 0},   {4, "2", 0},
                            {0, "2,3", 1},    {0, "2,2", 1},  {0, "empty,empty", 1}, {6, "3", 0},
                            {0, "2,empty", 1}, {0, "empty,3", 1}};
    for (const auto& c : cases)
    {
        INFO("modulus " << c.modulus << ", S = " << c.sequence << ", n = " << c.n);
        auto rep = exact_sequence_check(RingSpec{Integer(c.modulus)}, seq(c.sequence), c.n, -1, 3);
        CHECK(rep.all_exact());
        CHECK(rep.determinate_count() > 0);
        for (const auto& s : rep.slots)
            if (s.verdict == SlotVerdict::indeterminate)
                CHECK(s.degree == 3);
    }
}

TEST_CASE("Bockstein core over Z", "[singular][exactness]")
{
    auto rep = exact_sequence_check(RingSpec(), seq("2"), 0, -1, 3);
    CHECK(rep.lower.at(0).to_string() == "Z^1");
    CHECK(rep.upper.at(1).to_string() == "Z/2");
    SingBordism b0 = sing_bordism(RingSpec(), seq("2"), 0, 0);
    AbMap times2 = mu_map(b0, Integer(2));
    CHECK(times2.equals(AbMap::scalar(b0.group(), Integer(2))));
    SingBordism b1 = sing_bordism(RingSpec(), seq("2"), 1, 1);
    AbMap p = pi_map(b0, b1);
    CHECK(is_surjective(p));
    CHECK(check_exact(times2, p).exact);
}

TEST_CASE("Z/4 with P = 2: delta detects ker(2) one degree down", "[singular][exactness]")
{
    RingSpec z4{Integer(4)};
    SingBordism upper0 = sing_bordism(z4, seq("2"), 1, 0);
    SingBordism lower0 = sing_bordism(z4, seq("2"), 0, 0);
    CHECK(upper0.group().to_string() == "Z/2");
    AbMap d = delta_map(upper0, lower0);
    AbMap twice = mu_map(lower0, Integer(2));
    // Image of delta = kernel of multiplication by 2 on Z/4, which is {0, 2}.
    CHECK(is_injective(d));
    CHECK(check_exact(d, twice).exact);
    CHECK(image(d).group.isomorphic(kernel(twice).group));
}

TEST_CASE("S = (empty) splits into short exact sequences", "[singular][exactness]")
{
    auto rep = exact_sequence_check(RingSpec(), seq("empty"), 0, -1, 3);
    CHECK(rep.all_exact());
    for (auto [k, split] : split_check(rep))
        CHECK(split);
    auto rep2 = exact_sequence_check(RingSpec(), seq("empty,empty"), 1, -1, 3);
    CHECK(rep2.all_exact());
    for (auto [k, split] : split_check(rep2))
        CHECK(split);
}

TEST_CASE("report formatting", "[singular][exactness]")
{
    auto rep = exact_sequence_check(RingSpec(), seq("2"), 0, 0, 1);
    std::string text = rep.to_string();
    CHECK(text.find("slot μ→π: EXACT") != std::string::npos);
    CHECK(text.find("Ω^{S_1} = Z/2") != std::string::npos);
    CHECK(text.find("INDETERMINATE (outside window)") != std::string::npos);
}

TEST_CASE("cubical vertices and face maps", "[singular][cubical]")
{
    for (const auto& s : {seq("2,3"), seq("2,2"), seq("3,empty"), seq("empty,2")})
        for (int d = -1; d <= 2; ++d)
        {
            INFO("S = " << s.to_string() << ", degree " << d);
            QuotientGroup plain = plain_bordism(d, RingSpec());
            for (unsigned t : {0u, 2u, 4u, 6u})
            {
                bool has_empty = false;
                for (int i = 1; i <= 2; ++i)
                    has_empty = has_empty || ((t >> i & 1u) && !s.entry(static_cast<std::size_t>(i)));
                CubicalVertex v = cubical_vertex(RingSpec(), s, t, d);
                AbMap iso = cubical_vertex_iso(v, plain);
                if (!has_empty)
                    CHECK(is_isomorphism(iso));
            }
            for (int k = 1; k <= 2; ++k)
            {
                if (!s.entry(static_cast<std::size_t>(k)))
                    continue;
                AbMap face = cubical_face_on_plain(RingSpec(), s, 1u << k, k, d);
                CHECK(face.equals(multiplication_on_plain(RingSpec(), s.entry(static_cast<std::size_t>(k)), d)));
            }
        }
    CubicalVertex v0 = cubical_vertex(RingSpec(), seq("2"), 0u, 0);
    CHECK(is_isomorphism(cubical_vertex_iso(v0, plain_bordism(0, RingSpec()))));
    CHECK(multiplication_on_plain(RingSpec(), Value(), 0).is_zero());
    CHECK_THROWS_AS(cubical_vertex(RingSpec(), seq("2"), 1u, 0), std::invalid_argument);
}

TEST_CASE("constraint systems beyond the bound raise WindowOverflow", "[singular][bordism]")
{
    CHECK_THROWS_AS(sing_bordism(RingSpec(), seq("2,3"), 2, 1, {}, 3), WindowOverflow);
    CHECK_NOTHROW(sing_bordism(RingSpec(), seq("2,3"), 2, 1));
}

TEST_CASE("singular ad json round trip", "[singular][io]")
{
    std::mt19937 rng(29);
    for (const auto& s : {seq("2"), seq("2,3"), seq("empty,5")})
    {
        SingAd m = random_sing_ad(share(simplex(1)), RingSpec(), s, static_cast<int>(s.size()), 1, rng);
        SingAd back = sing_ad_from_json(io::parse_json(sing_ad_to_json(m).dump()));
        CHECK(back == m);
        CHECK(back.sequence() == m.sequence());
    }
    auto faces = make_faces(share(point()), 2);
    SingAd signed_ad(faces, RingSpec(), seq("2,3"), 2);
    signed_ad.set_iso_sign(1u, 1, -1);
    signed_ad.set_iso_sign(5u, 1, -1);
    CHECK(sing_ad_from_json(sing_ad_to_json(signed_ad)) == signed_ad);

    Json bad = sing_ad_to_json(signed_ad);
    bad["members"][0]["face"] = Json::array({1});
    CHECK_THROWS_AS(sing_ad_from_json(bad), ParseError);
}
