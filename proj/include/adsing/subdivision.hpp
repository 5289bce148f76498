/**
 * Subdivisions with a carrier map, and the midpoint splitting of K x I.
 */
#ifndef ADSING_SUBDIVISION_HPP
#define ADSING_SUBDIVISION_HPP

#include <map>
#include <memory>

#include "ball_complex.hpp"

namespace adsing
{

struct Subdivision
{
    std::shared_ptr<const BallComplex> fine;
    std::shared_ptr<const BallComplex> coarse;
    /// fine cell -> smallest coarse cell containing it
    std::vector<std::size_t> carrier;
    /// Orientation of a fine cell relative to its carrier; used for cells of equal dimension.
    std::vector<int> orientation_sign;

    /// Signed sum of the fine cells of equal dimension carried by c.
    std::map<std::size_t, int> fundamental_chain(std::size_t c) const
    {
        std::map<std::size_t, int> z;
        for (std::size_t f = 0; f < fine->size(); ++f)
            if (carrier[f] == c && fine->dim(f) == coarse->dim(c))
                z[f] += orientation_sign[f];
        return z;
    }
};

/**
 * Each coarse cell's fundamental chain must have as boundary the chain
 * obtained from the coarse boundary by replacing each face with its own
 * fundamental chain.
 */
inline ValidationReport check_subdivision(const Subdivision& s)
{
    ValidationReport report;
    const BallComplex& fine = *s.fine;
    const BallComplex& coarse = *s.coarse;
    if (s.carrier.size() != fine.size() || s.orientation_sign.size() != fine.size())
    {
        report.violations.push_back("carrier or sign table has the wrong length");
        return report;
    }
    for (std::size_t f = 0; f < fine.size(); ++f)
        if (coarse.dim(s.carrier[f]) < fine.dim(f))
            report.violations.push_back("fine cell " + fine.id(f) + " carried by a smaller cell");
    for (std::size_t c = 0; c < coarse.size(); ++c)
    {
        std::map<std::size_t, int> lhs;
        for (const auto& [f, sign] : s.fundamental_chain(c))
            for (const auto& e : fine.boundary(f))
                lhs[e.face] += sign * e.sign;
        std::map<std::size_t, int> rhs;
        for (const auto& e : coarse.boundary(c))
            for (const auto& [f, sign] : s.fundamental_chain(e.face))
                rhs[f] += e.sign * sign;
        std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
        std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
        if (lhs != rhs)
            report.violations.push_back("fundamental chain of " + coarse.id(c) +
                                        " does not match its coarse boundary");
        if (s.fundamental_chain(c).empty())
            report.violations.push_back("coarse cell " + coarse.id(c) + " has no fine cell of its dimension");
    }
    return report;
}

/// The interval split at its midpoint: vertices [0], [m], [1] and edges [0,m], [m,1].
inline BallComplex split_interval()
{
    std::vector<Cell> cells{{"[0]", 0, {}}, {"[m]", 0, {}}, {"[1]", 0, {}},
                            {"[0,m]", 1, {}}, {"[m,1]", 1, {}}};
    std::vector<IncidenceEntry> inc{{"[0,m]", "[m]", 1}, {"[0,m]", "[0]", -1},
                                    {"[m,1]", "[1]", 1}, {"[m,1]", "[m]", -1}};
    return BallComplex(std::move(cells), inc);
}

/// Cell positions of the coarse interval simplex(1) and of split_interval().
namespace interval_cells
{
inline constexpr std::size_t end0 = 0, end1 = 1, edge = 2;
inline constexpr std::size_t fine0 = 0, fine_mid = 1, fine1 = 2, fine_left = 3, fine_right = 4;
} // namespace interval_cells

/// K x (split interval) subdividing K x I; cell (c, j) of the fine complex sits at 5c + j.
inline Subdivision interval_subdivide(const BallComplex& k)
{
    using namespace interval_cells;
    Subdivision s;
    s.fine = std::make_shared<const BallComplex>(product(k, split_interval()));
    s.coarse = std::make_shared<const BallComplex>(product(k, simplex(1)));
    const std::size_t coarse_of[5] = {end0, edge, end1, edge, edge};
    for (std::size_t c = 0; c < k.size(); ++c)
        for (std::size_t j = 0; j < 5; ++j)
        {
            s.carrier.push_back(3 * c + coarse_of[j]);
            s.orientation_sign.push_back(1);
        }
    return s;
}

} // namespace adsing

#endif
