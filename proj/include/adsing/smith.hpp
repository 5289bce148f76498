/**
 * Smith normal form over the integers.
 */
#ifndef ADSING_SMITH_HPP
#define ADSING_SMITH_HPP

#include <vector>

#include "int_matrix.hpp"

namespace adsing
{

/// left * input * right = diagonal, with left and right unimodular.
struct SmithDecomposition
{
    IntMatrix left;
    IntMatrix diagonal;
    IntMatrix right;

    /// Nonzero diagonal entries; each divides the next.
    std::vector<Integer> invariants() const
    {
        std::vector<Integer> out;
        std::size_t n = std::min(diagonal.rows(), diagonal.cols());
        for (std::size_t i = 0; i < n; ++i)
            if (diagonal(i, i) != 0)
                out.push_back(diagonal(i, i));
        return out;
    }
};

namespace detail
{

/// Smallest |entry| in the block [t.., t..]; ties go to the lowest row, then column.
inline bool find_min_pivot(const IntMatrix& d, std::size_t t, std::size_t& pr, std::size_t& pc)
{
    bool found = false;
    for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j)
            if (d(i, j) != 0 && (!found || abs(d(i, j)) < abs(d(pr, pc))))
            {
                pr = i;
                pc = j;
                found = true;
            }
    return found;
}

} // namespace detail

inline SmithDecomposition smith_normal_form(const IntMatrix& m)
{
    SmithDecomposition s;
    s.diagonal = m;
    s.left = IntMatrix::identity(m.rows());
    s.right = IntMatrix::identity(m.cols());
    IntMatrix& d = s.diagonal;
    IntMatrix& u = s.left;
    IntMatrix& v = s.right;

    const std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t t = 0; t < n; ++t)
    {
        std::size_t pr = t, pc = t;
        if (!detail::find_min_pivot(d, t, pr, pc))
            break;
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);

        for (;;)
        {
            bool clean = true;
            for (std::size_t i = t + 1; i < d.rows(); ++i)
            {
                if (d(i, t) == 0)
                    continue;
                Integer q = floor_div(d(i, t), d(t, t));
                d.add_row_multiple(i, t, -q);
                u.add_row_multiple(i, t, -q);
                if (d(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < d.cols(); ++j)
            {
                if (d(t, j) == 0)
                    continue;
                Integer q = floor_div(d(t, j), d(t, t));
                d.add_col_multiple(j, t, -q);
                v.add_col_multiple(j, t, -q);
                if (d(t, j) != 0)
                    clean = false;
            }
            if (!clean)
            {
                // A remainder survived: it is smaller than the pivot, so move it in.
                std::size_t br = t, bc = t;
                for (std::size_t i = t + 1; i < d.rows(); ++i)
                    if (d(i, t) != 0 && abs(d(i, t)) < abs(d(br, bc)))
                    {
                        br = i;
                        bc = t;
                    }
                for (std::size_t j = t + 1; j < d.cols(); ++j)
                    if (d(t, j) != 0 && abs(d(t, j)) < abs(d(br, bc)))
                    {
                        br = t;
                        bc = j;
                    }
                d.swap_rows(t, br);
                u.swap_rows(t, br);
                d.swap_cols(t, bc);
                v.swap_cols(t, bc);
                continue;
            }
            // Divisibility: fold an offending row into row t and repeat.
            bool divides = true;
            for (std::size_t i = t + 1; i < d.rows() && divides; ++i)
                for (std::size_t j = t + 1; j < d.cols(); ++j)
                    if (d(i, j) != 0 && !mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t()))
                    {
                        d.add_row_multiple(t, i, 1);
                        u.add_row_multiple(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (d(t, t) < 0)
        {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    return s;
}

} // namespace adsing

#endif
