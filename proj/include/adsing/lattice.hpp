/**
 * Sublattices of Z^n: column Hermite normal form, spans, kernels, preimages
 * and exact coordinate solving.
 */
#ifndef ADSING_LATTICE_HPP
#define ADSING_LATTICE_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "int_matrix.hpp"

namespace adsing
{

/**
 * Column echelon form H = A * T with T unimodular.
 *
 * The first `rank` columns of H are nonzero, column j has its leading entry
 * (positive) in row pivot_rows[j], entries above it are zero and entries of
 * earlier columns in that row are reduced into [0, pivot).  The remaining
 * columns of H are zero, so the trailing columns of T span ker A.
 */
struct ColumnEchelon
{
    IntMatrix form;
    IntMatrix transform;
    std::vector<std::size_t> pivot_rows;
    std::size_t rank = 0;
};

inline ColumnEchelon column_echelon(const IntMatrix& a, bool track_transform = true)
{
    ColumnEchelon e;
    e.form = a;
    IntMatrix& h = e.form;
    const std::size_t m = a.rows();
    const std::size_t c = a.cols();
    if (track_transform)
        e.transform = IntMatrix::identity(c);
    IntMatrix& t = e.transform;

    std::size_t cur = 0;
    for (std::size_t i = 0; i < m && cur < c; ++i)
    {
        // Fold row i of columns cur.. into column cur by gcd steps.
        for (;;)
        {
            std::size_t best = c;
            for (std::size_t j = cur; j < c; ++j)
                if (h(i, j) != 0 && (best == c || abs(h(i, j)) < abs(h(i, best))))
                    best = j;
            if (best == c)
                break;
            if (best != cur)
            {
                h.swap_cols(cur, best);
                if (track_transform)
                    t.swap_cols(cur, best);
            }
            bool clean = true;
            for (std::size_t j = cur + 1; j < c; ++j)
            {
                if (h(i, j) == 0)
                    continue;
                Integer q = floor_div(h(i, j), h(i, cur));
                h.add_col_multiple(j, cur, -q);
                if (track_transform)
                    t.add_col_multiple(j, cur, -q);
                if (h(i, j) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (h(i, cur) == 0)
            continue;
        if (h(i, cur) < 0)
        {
            h.negate_col(cur);
            if (track_transform)
                t.negate_col(cur);
        }
        for (std::size_t p = 0; p < cur; ++p)
        {
            Integer q = floor_div(h(i, p), h(i, cur));
            if (q != 0)
            {
                h.add_col_multiple(p, cur, -q);
                if (track_transform)
                    t.add_col_multiple(p, cur, -q);
            }
        }
        e.pivot_rows.push_back(i);
        ++cur;
    }
    e.rank = cur;
    return e;
}

/// Integer basis (as columns) of {x : A x = 0}.
inline IntMatrix kernel_basis(const IntMatrix& a)
{
    ColumnEchelon e = column_echelon(a);
    return e.transform.column_block(e.rank, a.cols() - e.rank);
}

/**
 * A sublattice of Z^n held in column Hermite normal form, which makes the
 * basis canonical: two lattices are equal iff their bases are equal.
 */
class Lattice
{
public:
    Lattice() = default;

    explicit Lattice(std::size_t ambient) : basis_(ambient, 0) {}

    static Lattice span(const IntMatrix& generators)
    {
        ColumnEchelon e = column_echelon(generators, false);
        Lattice l;
        l.basis_ = e.form.column_block(0, e.rank);
        l.pivots_ = e.pivot_rows;
        return l;
    }

    static Lattice span(std::size_t ambient, const std::vector<IntVector>& generators)
    {
        return span(IntMatrix::from_columns(ambient, generators));
    }

    static Lattice full(std::size_t ambient)
    {
        return span(IntMatrix::identity(ambient));
    }

    /// m Z^n (the zero lattice when m = 0).
    static Lattice scaled(std::size_t ambient, const Integer& m)
    {
        if (m == 0)
            return Lattice(ambient);
        return span(IntMatrix::scalar(ambient, abs(m)));
    }

    std::size_t ambient_dim() const { return basis_.rows(); }
    std::size_t rank() const { return basis_.cols(); }
    const IntMatrix& basis() const { return basis_; }

    /// Coordinates of v in the basis, or nothing when v is not in the lattice.
    std::optional<IntVector> coordinates(IntVector v) const
    {
        if (v.size() != ambient_dim())
            throw std::invalid_argument("Lattice::coordinates: length mismatch");
        IntVector x(rank());
        for (std::size_t j = 0; j < rank(); ++j)
        {
            std::size_t p = pivots_[j];
            // Rows above the pivot must already be cleared.
            for (std::size_t r = (j == 0 ? 0 : pivots_[j - 1] + 1); r < p; ++r)
                if (v[r] != 0)
                    return std::nullopt;
            if (v[p] == 0)
                continue;
            if (!mpz_divisible_p(v[p].get_mpz_t(), basis_(p, j).get_mpz_t()))
                return std::nullopt;
            Integer q;
            mpz_divexact(q.get_mpz_t(), v[p].get_mpz_t(), basis_(p, j).get_mpz_t());
            x[j] = q;
            for (std::size_t r = p; r < ambient_dim(); ++r)
                if (basis_(r, j) != 0)
                    v[r] -= q * basis_(r, j);
        }
        if (!is_zero_vector(v))
            return std::nullopt;
        return x;
    }

    bool contains(const IntVector& v) const { return coordinates(v).has_value(); }

    bool contains(const Lattice& other) const
    {
        for (std::size_t j = 0; j < other.rank(); ++j)
            if (!contains(other.basis_.column(j)))
                return false;
        return true;
    }

    Lattice operator+(const Lattice& other) const
    {
        if (other.ambient_dim() != ambient_dim())
            throw std::invalid_argument("Lattice::operator+: ambient mismatch");
        return span(IntMatrix::hstack(basis_, other.basis_));
    }

    friend bool operator==(const Lattice& a, const Lattice& b)
    {
        return a.basis_ == b.basis_;
    }

    /// Coordinates of every basis vector of `sub` in this basis, as columns.
    IntMatrix coordinates_of(const Lattice& sub) const
    {
        IntMatrix out(rank(), sub.rank());
        for (std::size_t j = 0; j < sub.rank(); ++j)
        {
            auto x = coordinates(sub.basis_.column(j));
            if (!x)
                throw std::invalid_argument("Lattice::coordinates_of: not a sublattice");
            for (std::size_t i = 0; i < rank(); ++i)
                out(i, j) = (*x)[i];
        }
        return out;
    }

private:
    IntMatrix basis_;
    std::vector<std::size_t> pivots_;
};

inline Lattice kernel(const IntMatrix& a)
{
    return Lattice::span(kernel_basis(a));
}

/// {x in Z^n : A x in target}.
inline Lattice preimage(const IntMatrix& a, const Lattice& target)
{
    if (target.ambient_dim() != a.rows())
        throw std::invalid_argument("preimage: ambient mismatch");
    IntMatrix joined = IntMatrix::hstack(a, target.basis().scaled(-1));
    IntMatrix k = kernel_basis(joined);
    return Lattice::span(k.row_block(0, a.cols()));
}

} // namespace adsing

#endif
