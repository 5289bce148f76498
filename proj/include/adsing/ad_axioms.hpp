/**
 * Validators for the ad-theory axioms (pointed, full, local, gluing,
 * cylinder, stable) run against a model of the theory on a finite corpus.
 *
 * A model bundles the operations the axioms talk about, so deliberately
 * broken models can be fed to the validators as well as the ring model.
 */
#ifndef ADSING_AD_AXIOMS_HPP
#define ADSING_AD_AXIOMS_HPP

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ad_group.hpp"

namespace adsing
{

struct AdTheoryModel
{
    std::string name;
    std::function<ValidationReport(const PreAd&)> is_ad;
    std::function<PreAd(const PreAd&)> cylinder;
    std::function<PreAd(const Subdivision&, const PreAd&)> glue;
    std::function<PreAd(const CellIsomorphism&, const PreAd&)> transport;
    std::function<PreAd(const PreAd&, const std::vector<std::size_t>&)> restrict;
};

inline AdTheoryModel ring_model()
{
    return {"ring", [](const PreAd& m) { return is_ad(m); },
            [](const PreAd& m) { return cylinder(m); },
            [](const Subdivision& s, const PreAd& m) { return glue(s, m); },
            [](const CellIsomorphism& t, const PreAd& m) { return transport(t, m); },
            [](const PreAd& m, const std::vector<std::size_t>& cells) { return restrict_to(m, cells); }};
}

struct AxiomCorpus
{
    std::vector<ComplexPtr> complexes;
    /// Ads (under the ring model) on corpus complexes.
    std::vector<PreAd> ads;
    /// Pre-ads that fail the ring-model ad condition.
    std::vector<PreAd> non_ads;
    std::vector<Subdivision> subdivisions;
    /// Valid cell isomorphisms, each with ads on its target.
    std::vector<std::pair<CellIsomorphism, PreAd>> transports;
    /// Cell isomorphisms that do not preserve incidences.
    std::vector<CellIsomorphism> broken_isomorphisms;
};

namespace detail
{

/// Random ad drawn from the lattice of degree-k ads on K that are empty on the excluded cells.
inline PreAd random_ad(const ComplexPtr& k, int degree, const RingSpec& ring, std::mt19937& rng,
                       const std::vector<bool>& excluded = {})
{
    std::vector<std::size_t> all;
    LinearAdSystem full = ad_system(*k, degree, ring, &all);
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < all.size(); ++v)
        if (excluded.empty() || !excluded[all[v]])
            keep.push_back(v);
    LinearAdSystem s{keep.size(), IntMatrix(full.constraints.rows(), keep.size()), ring.modulus};
    for (std::size_t r = 0; r < full.constraints.rows(); ++r)
        for (std::size_t j = 0; j < keep.size(); ++j)
            s.constraints(r, j) = full.constraints(r, keep[j]);
    Lattice ads = solution_lattice(s);
    std::uniform_int_distribution<int> coef(-3, 3);
    IntVector c(ads.rank());
    for (auto& x : c)
        x = coef(rng);
    IntVector x = ads.basis() * c;
    PreAd m(k, degree, ring);
    for (std::size_t j = 0; j < keep.size(); ++j)
        m.set(all[keep[j]], x[j]);
    return m;
}

/// Same complex with the cells listed in reverse order under fresh ids.
inline PreAd relabel(const PreAd& m)
{
    const BallComplex& k = m.complex();
    std::vector<Cell> cells;
    for (std::size_t i = k.size(); i-- > 0;)
        cells.push_back({"r" + k.id(i), k.dim(i), k.cell(i).label});
    std::vector<IncidenceEntry> inc;
    for (const auto& e : k.incidence_entries())
        inc.push_back({"r" + e.of, "r" + e.face, e.sign});
    auto copy = share(BallComplex(std::move(cells), inc));
    PreAd out(copy, m.degree(), m.ring());
    for (std::size_t i = 0; i < k.size(); ++i)
        out.set(k.size() - 1 - i, m.value(i));
    return out;
}

inline std::string describe(const PreAd& m)
{
    return "degree-" + std::to_string(m.degree()) + " pre-ad on a " + std::to_string(m.complex().size()) +
           "-cell complex";
}

template <class F> bool throws(F&& f)
{
    try
    {
        f();
    }
    catch (const std::exception&)
    {
        return true;
    }
    return false;
}

} // namespace detail

/// Simplices up to dimension 3, some products, interval subdivisions and collapses.
inline AxiomCorpus standard_corpus(const RingSpec& ring = RingSpec(), unsigned seed = 2024)
{
    std::mt19937 rng(seed);
    AxiomCorpus c;
    for (int n = 0; n <= 3; ++n)
        c.complexes.push_back(share(simplex(n)));
    c.complexes.push_back(share(product(simplex(1), simplex(1))));
    c.complexes.push_back(share(product(simplex(2), simplex(1))));
    c.complexes.push_back(share(boundary_subcomplex(simplex(2), "[0,1,2]")));
    c.complexes.push_back(share(product(boundary_subcomplex(simplex(2), "[0,1,2]"), simplex(1))));

    for (const auto& k : c.complexes)
        for (int d = 0; d <= k->max_dim(); ++d)
        {
            for (int rep = 0; rep < 2; ++rep)
                c.ads.push_back(detail::random_ad(k, d, ring, rng));
            PreAd bad = detail::random_ad(k, d, ring, rng);
            // Perturb one k-cell that has a coface so the condition breaks.
            for (std::size_t cell : k->cells_of_dim(d))
                if (!k->coboundary(cell).empty())
                {
                    bad.set(cell, add_values(bad.value(cell), Value(Integer(1))));
                    break;
                }
            if (!is_ad(bad).ok())
                c.non_ads.push_back(bad);
        }

    for (int n = 0; n <= 2; ++n)
        c.subdivisions.push_back(interval_subdivide(simplex(n)));
    c.subdivisions.push_back(interval_subdivide(product(simplex(1), simplex(1))));

    for (int n = 0; n <= 2; ++n)
    {
        auto k = c.complexes[static_cast<std::size_t>(n)];
        auto id = CellIsomorphism::identity(k);
        for (int d = 0; d <= n; ++d)
            c.transports.push_back({id, detail::random_ad(k, d, ring, rng)});
    }
    const std::pair<unsigned, int> collapses[] = {{1u, 1}, {3u, 2}, {5u, 1}};
    for (const auto& [sigma, j] : collapses)
    {
        auto t = collapse_isomorphism(c.complexes[1], sigma, j);
        for (int d = 0; d <= t.target->max_dim(); ++d)
            c.transports.push_back({t, detail::random_ad(t.target, d, ring, rng, t.target_rel)});
        auto broken = t;
        for (std::size_t cell = 0; cell < broken.source->size(); ++cell)
        {
            if (broken.source_rel[cell])
                continue;
            bool has_live_face = false;
            for (const auto& e : broken.source->boundary(cell))
                has_live_face = has_live_face || !broken.source_rel[e.face];
            if (has_live_face)
            {
                broken.signs[cell] = -broken.signs[cell];
                break;
            }
        }
        c.broken_isomorphisms.push_back(broken);
    }
    return c;
}

/// The all-empty pre-ad is an ad in every degree, and cylinders keep it empty.
inline ValidationReport check_pointed(const AdTheoryModel& model, const AxiomCorpus& corpus,
                                      const RingSpec& ring = RingSpec())
{
    ValidationReport r;
    for (const auto& k : corpus.complexes)
        for (int d = -1; d <= k->max_dim() + 1; ++d)
        {
            PreAd empty(k, d, ring);
            if (!model.is_ad(empty).ok())
                r.violations.push_back("pointed: empty " + detail::describe(empty) + " rejected");
            else if (!model.cylinder(empty).is_empty())
                r.violations.push_back("pointed: cylinder of the empty " + detail::describe(empty) +
                                       " is not empty");
        }
    return r;
}

/// Isomorphic pre-ads (same values under a relabeling of cells) get the same verdict.
inline ValidationReport check_full(const AdTheoryModel& model, const AxiomCorpus& corpus)
{
    ValidationReport r;
    auto check = [&](const PreAd& m) {
        if (model.is_ad(m).ok() != model.is_ad(detail::relabel(m)).ok())
            r.violations.push_back("full: relabeled copy of a " + detail::describe(m) +
                                   " changes the verdict");
    };
    for (const auto& m : corpus.ads)
        check(m);
    for (const auto& m : corpus.non_ads)
        check(m);
    for (const auto& m : corpus.ads)
        if (!model.is_ad(m).ok())
            r.violations.push_back("full: a known " + detail::describe(m) + " is rejected");
    for (const auto& m : corpus.non_ads)
        if (model.is_ad(m).ok())
            r.violations.push_back("full: a known non-ad " + detail::describe(m) + " is accepted");
    return r;
}

/// Restricting an ad to the closure of any cell gives an ad.
inline ValidationReport check_local(const AdTheoryModel& model, const AxiomCorpus& corpus)
{
    ValidationReport r;
    for (const auto& m : corpus.ads)
        for (std::size_t c = 0; c < m.complex().size(); ++c)
        {
            auto members = m.complex().closure(c);
            PreAd piece = model.restrict(m, members);
            bool agrees = piece.complex().size() == members.size();
            for (std::size_t i = 0; agrees && i < members.size(); ++i)
                agrees = piece.value(piece.complex().index_of(m.complex().id(members[i]))) ==
                         m.value(members[i]);
            if (!agrees)
                r.violations.push_back("local: restriction of a " + detail::describe(m) + " to " +
                                       m.complex().id(c) + " changes values");
            else if (!model.is_ad(piece).ok())
                r.violations.push_back("local: restriction of a " + detail::describe(m) + " to " +
                                       m.complex().id(c) + " is not an ad");
        }
    return r;
}

/**
 * Ads on the fine complex glue to ads on the coarse complex that agree on
 * the common ends, glue undoes the canonical refinement, and fine pre-ads
 * that are not ads are refused.
 */
inline ValidationReport check_gluing(const AdTheoryModel& model, const AxiomCorpus& corpus,
                                     const RingSpec& ring = RingSpec(), unsigned seed = 7)
{
    using namespace interval_cells;
    ValidationReport r;
    std::mt19937 rng(seed);
    for (const auto& s : corpus.subdivisions)
    {
        if (!check_subdivision(s).ok())
        {
            r.violations.push_back("gluing: malformed subdivision");
            continue;
        }
        const std::size_t base = s.coarse->size() / 3;
        for (int d = 0; d <= s.fine->max_dim(); ++d)
        {
            PreAd fine = detail::random_ad(s.fine, d, ring, rng);
            PreAd coarse;
            try
            {
                coarse = model.glue(s, fine);
            }
            catch (const std::exception& e)
            {
                r.violations.push_back(std::string("gluing: refused an ad: ") + e.what());
                continue;
            }
            if (!model.is_ad(coarse).ok())
                r.violations.push_back("gluing: glued degree-" + std::to_string(d) + " ad is not an ad");
            for (std::size_t c = 0; c < base; ++c)
                if (coarse.value(3 * c + end0) != fine.value(5 * c + fine0) ||
                    coarse.value(3 * c + end1) != fine.value(5 * c + fine1))
                {
                    r.violations.push_back("gluing: glued ad disagrees with the fine ad on an end");
                    break;
                }
            PreAd coarse_ad = detail::random_ad(s.coarse, d, ring, rng);
            try
            {
                if (!(model.glue(s, refine(s, coarse_ad)) == coarse_ad))
                    r.violations.push_back("gluing: glue does not undo refinement in degree " +
                                           std::to_string(d));
            }
            catch (const std::exception& e)
            {
                r.violations.push_back(std::string("gluing: refused a refined ad: ") + e.what());
            }
            // A broken fine pre-ad: perturb one cell with a coface.
            PreAd broken = fine;
            for (std::size_t cell : s.fine->cells_of_dim(d))
                if (!s.fine->coboundary(cell).empty())
                {
                    broken.set(cell, add_values(broken.value(cell), Value(Integer(1))));
                    break;
                }
            if (!is_ad(broken).ok() && !detail::throws([&] { model.glue(s, broken); }))
                r.violations.push_back("gluing: a fine non-ad was glued without complaint");
        }
    }
    return r;
}

/// Cylinders are ads on K x I whose two ends are the original ad.
inline ValidationReport check_cylinder(const AdTheoryModel& model, const AxiomCorpus& corpus)
{
    ValidationReport r;
    for (const auto& m : corpus.ads)
    {
        PreAd cyl = model.cylinder(m);
        if (cyl.complex().size() != 3 * m.complex().size())
        {
            r.violations.push_back("cylinder: result of a " + detail::describe(m) + " is not on K x I");
            continue;
        }
        if (!model.is_ad(cyl).ok())
            r.violations.push_back("cylinder: cylinder of a " + detail::describe(m) + " is not an ad");
        if (!(restrict_end(cyl, m.complex_ptr(), 0) == m) || !(restrict_end(cyl, m.complex_ptr(), 1) == m))
            r.violations.push_back("cylinder: ends of the cylinder of a " + detail::describe(m) +
                                   " differ from it");
    }
    return r;
}

inline Value reduced(const RingSpec& ring, const Value& v) { return v ? Value(ring.reduce(*v)) : v; }

/// Transport along incidence-preserving isomorphisms keeps ads; broken isomorphisms are refused.
inline ValidationReport check_stable(const AdTheoryModel& model, const AxiomCorpus& corpus)
{
    ValidationReport r;
    for (const auto& [t, m] : corpus.transports)
    {
        PreAd moved;
        try
        {
            moved = model.transport(t, m);
        }
        catch (const std::exception& e)
        {
            r.violations.push_back(std::string("stable: refused a valid transport: ") + e.what());
            continue;
        }
        if (moved.degree() != m.degree() + t.shift)
            r.violations.push_back("stable: transport did not shift the degree by " + std::to_string(t.shift));
        if (!model.is_ad(moved).ok())
            r.violations.push_back("stable: transport of a " + detail::describe(m) + " is not an ad");
        for (std::size_t c = 0; c < t.source->size(); ++c)
            if (!t.source_rel[c] && moved.complex().size() == t.source->size() &&
                moved.value(c) != reduced(m.ring(), scale_value(m.value(t.image[c]), t.signs[c])))
            {
                r.violations.push_back("stable: transported value wrong at " + t.source->id(c));
                break;
            }
    }
    for (const auto& t : corpus.broken_isomorphisms)
    {
        PreAd probe(t.target, 0, RingSpec());
        if (!detail::throws([&] { model.transport(t, probe); }))
            r.violations.push_back("stable: an incidence-breaking isomorphism was accepted");
    }
    return r;
}

struct AxiomSuiteReport
{
    ValidationReport pointed, full, local, gluing, cylinder, stable;
    bool ok() const
    {
        return pointed.ok() && full.ok() && local.ok() && gluing.ok() && cylinder.ok() && stable.ok();
    }
};

inline AxiomSuiteReport check_all_axioms(const AdTheoryModel& model, const AxiomCorpus& corpus)
{
    return {check_pointed(model, corpus), check_full(model, corpus), check_local(model, corpus),
            check_gluing(model, corpus), check_cylinder(model, corpus), check_stable(model, corpus)};
}

} // namespace adsing

#endif
