/**
 * Koszul E2-term of the cubical diagram against the bordism of ad / S_n.
 *
 * The module is plain bordism on the window, each x_i the face map d_i of
 * the cubical diagram read through the vertex isomorphisms.  H_e(d)
 * contributes to total degree j = d + n - e + shift.
 */
#ifndef ADSING_SINGULAR_KOSZUL_COMPARISON_HPP
#define ADSING_SINGULAR_KOSZUL_COMPARISON_HPP

#include <map>
#include <optional>
#include <string>

#include "../koszul.hpp"
#include "bordism.hpp"
#include "cubical.hpp"

namespace adsing
{

/// Plain bordism on [lo, hi] with x_i = cubical face map d_i, for i = 1..n.
inline GradedModule bordism_module(const RingSpec& ring, const SingularitySequence& seq, int n, int lo, int hi)
{
    std::map<int, FgAbGroup> comps;
    for (int d = lo; d <= hi; ++d)
        comps[d] = bordism_group(d, ring);
    GradedModule m(lo, hi, comps);
    for (int i = 1; i <= n; ++i)
    {
        Endomorphism x;
        x.shift = seq.dim(static_cast<std::size_t>(i));
        for (int d = lo; d <= hi; ++d)
        {
            if (!m.in_window(d + x.shift))
                continue;
            if (x.shift == 0)
                x.maps.emplace(d, cubical_face_on_plain(ring, seq, 1u << i, i, d));
            else
                x.maps.emplace(d, AbMap::zero(m.component(d), m.component(d + x.shift)));
        }
        m.add_endomorphism(std::move(x));
    }
    return m;
}

enum class ComparisonVerdict
{
    match,
    differ,
    indeterminate
};

struct KoszulComparison
{
    int n = 0;
    int lo = 0, hi = 0;
    KoszulHomology homology;
    std::vector<RegularityVerdict> regularity;
    std::map<int, FgAbGroup> bordism;
    std::map<int, std::optional<FgAbGroup>> e2_total;
    std::map<int, ComparisonVerdict> verdicts;
    std::optional<int> shift;  ///< nullopt when no consistent shift exists
    bool vacuous = false;      ///< both sides trivial on the whole window

    bool regular() const
    {
        for (const auto& v : regularity)
            if (!v.regular.value_or(false))
                return false;
        return true;
    }

    bool all_match() const
    {
        if (!shift)
            return false;
        for (const auto& [j, v] : verdicts)
            if (v == ComparisonVerdict::differ)
                return false;
        return true;
    }

    std::string to_string() const
    {
        std::string out = homology.to_string();
        for (const auto& v : regularity)
            out += "x_" + std::to_string(v.index) + ": " +
                   (v.regular ? (*v.regular ? "regular" : "not regular") : "undecided") +
                   (v.detail.empty() ? "" : " (" + v.detail + ")") + "\n";
        if (homology.higher_nonvanishing())
            out += "E2: nonvanishing higher Koszul homology\n";
        out += "shift: " + (shift ? std::to_string(*shift) : std::string("none")) +
               (vacuous ? " (vacuous)" : "") + "\n";
        for (const auto& [j, v] : verdicts)
        {
            out += "degree " + std::to_string(j) + ": Ω^{S_" + std::to_string(n) +
                   "} = " + bordism.at(j).to_string() + ", E2 = " +
                   (e2_total.at(j) ? e2_total.at(j)->to_string() : std::string("indeterminate")) + ": ";
            out += v == ComparisonVerdict::match ? "MATCH" : v == ComparisonVerdict::differ ? "FAIL" : "INDETERMINATE";
            out += "\n";
        }
        return out;
    }
};

inline KoszulComparison compare_koszul_bordism(const RingSpec& ring, const SingularitySequence& seq, int n,
                                               int lo, int hi)
{
    if (seq.size() < static_cast<std::size_t>(n))
        throw std::invalid_argument("compare_koszul_bordism: sequence shorter than n");
    KoszulComparison r;
    r.n = n;
    r.lo = lo;
    r.hi = hi;
    GradedModule m = bordism_module(ring, seq, n, lo, hi);
    r.homology = koszul_homology(build_koszul(m));
    r.regularity = regularity_report(m);
    for (int j = lo; j <= hi; ++j)
        r.bordism[j] = bordism_group_mod_S(ring, seq, n, j);

    auto total = [&](int j, int s) -> std::optional<FgAbGroup> {
        FgAbGroup sum;
        for (int e = 0; e <= n; ++e)
        {
            const int d = j - n + e - s;
            if (d < lo || d > hi || !r.homology.at(e, d))
                return std::nullopt;
            sum = direct_sum(sum, *r.homology.at(e, d));
        }
        return sum;
    };

    std::optional<int> first_bordism, first_koszul;
    for (int j = lo; j <= hi && !first_bordism; ++j)
        if (!r.bordism[j].is_trivial())
            first_bordism = j;
    for (const auto& [key, g] : r.homology.groups)
        if (g && !g->is_trivial())
        {
            const int j = key.second + n - key.first;
            if (!first_koszul || j < *first_koszul)
                first_koszul = j;
        }
    if (!first_bordism && !first_koszul)
    {
        r.vacuous = true;
        r.shift = 0;
    }
    else if (first_bordism && first_koszul)
        r.shift = *first_bordism - *first_koszul;

    for (int j = lo; j <= hi; ++j)
    {
        r.e2_total[j] = r.shift ? total(j, *r.shift) : std::nullopt;
        if (!r.e2_total[j])
            r.verdicts[j] = r.shift ? ComparisonVerdict::indeterminate : ComparisonVerdict::differ;
        else
            r.verdicts[j] = r.e2_total[j]->isomorphic(r.bordism[j]) ? ComparisonVerdict::match
                                                                     : ComparisonVerdict::differ;
    }
    return r;
}

} // namespace adsing

#endif
