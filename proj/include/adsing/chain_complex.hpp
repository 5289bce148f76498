/**
 * Bounded chain complexes of free abelian groups and their homology.
 */
#ifndef ADSING_CHAIN_COMPLEX_HPP
#define ADSING_CHAIN_COMPLEX_HPP

#include <stdexcept>
#include <vector>

#include "abelian.hpp"

namespace adsing
{

/**
 * Free modules C_0 .. C_top with boundary maps d_n : C_n -> C_{n-1}
 * stored as rank(n-1) x rank(n) matrices.  d_0 is the zero map to nothing.
 */
class ChainComplexZ
{
public:
    ChainComplexZ() = default;

    ChainComplexZ(std::vector<std::size_t> ranks, std::vector<IntMatrix> boundaries)
        : ranks_(std::move(ranks)), boundaries_(std::move(boundaries))
    {
        if (boundaries_.size() != ranks_.size())
            throw std::invalid_argument("ChainComplexZ: one boundary matrix per degree expected");
        for (std::size_t n = 0; n < ranks_.size(); ++n)
        {
            std::size_t below = n == 0 ? 0 : ranks_[n - 1];
            if (boundaries_[n].rows() != below || boundaries_[n].cols() != ranks_[n])
                throw std::invalid_argument("ChainComplexZ: boundary " + std::to_string(n) +
                                            " has the wrong shape");
        }
        for (std::size_t n = 1; n + 1 < ranks_.size(); ++n)
            if (!(boundaries_[n] * boundaries_[n + 1]).is_zero())
                throw std::domain_error("ChainComplexZ: d_" + std::to_string(n) + " d_" +
                                        std::to_string(n + 1) + " != 0");
    }

    /// Highest degree with a module, or -1 when empty.
    int top_degree() const { return static_cast<int>(ranks_.size()) - 1; }

    std::size_t rank(int n) const
    {
        return n < 0 || n > top_degree() ? 0 : ranks_[static_cast<std::size_t>(n)];
    }

    /// d_n : C_n -> C_{n-1}; the zero matrix of the right shape outside the range.
    IntMatrix boundary(int n) const
    {
        if (n >= 0 && n <= top_degree())
            return boundaries_[static_cast<std::size_t>(n)];
        return IntMatrix(rank(n - 1), rank(n));
    }

    FgAbGroup homology(int n) const
    {
        if (rank(n) == 0)
            return FgAbGroup();
        Lattice cycles = kernel(boundary(n));
        Lattice boundaries = Lattice::span(boundary(n + 1));
        IntMatrix coords = cycles.coordinates_of(boundaries);
        return FgAbGroup(coords.transposed());
    }

    std::vector<FgAbGroup> homology_all() const
    {
        std::vector<FgAbGroup> out;
        for (int n = 0; n <= top_degree(); ++n)
            out.push_back(homology(n));
        return out;
    }

private:
    std::vector<std::size_t> ranks_;
    std::vector<IntMatrix> boundaries_;
};

} // namespace adsing

#endif
