/**
 * Bordism groups of ad / S_n over the point, and the maps mu, pi, delta
 * between them, via explicit integer constraint systems.
 *
 * Unknowns are the ring values on the degree-k cells (c, tau) of every
 * member K x Delta^sigma that can carry a value at all: tau must contain 0
 * and every index i of sigma with P_i empty.  Constraints are the ad
 * conditions of each member and the face conditions
 * x(sigma, c, tau) = P_i x(sigma - i, c, tau) for i not in tau.
 */
#ifndef ADSING_SINGULAR_BORDISM_HPP
#define ADSING_SINGULAR_BORDISM_HPP

#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "../ad_group.hpp"
#include "sing_ad.hpp"

namespace adsing
{

class WindowOverflow : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Upper bound on unknowns per constraint system.
inline constexpr std::size_t default_max_variables = 4000;

struct SingVariable
{
    unsigned sigma;
    std::size_t cell;
};

class SingLayout
{
public:
    SingLayout(const ComplexPtr& base, const RingSpec& ring, const SingularitySequence& seq, int n, int degree,
               std::size_t max_variables = default_max_variables)
        : faces_(make_faces(base, n)), ring_(ring), seq_(seq.prefix(static_cast<std::size_t>(n))),
          degree_(degree)
    {
        const FaceComplexes& fc = *faces_;
        for (unsigned sigma : fc.faces())
        {
            const BallComplex& k = *fc.face(sigma);
            for (std::size_t cell : k.cells_of_dim(degree))
                if (admissible(sigma, fc.decode(sigma, cell).second))
                {
                    index_[{sigma, cell}] = vars_.size();
                    vars_.push_back({sigma, cell});
                }
        }
        if (vars_.size() > max_variables)
            throw WindowOverflow("constraint system for degree " + std::to_string(degree) + " needs " +
                                 std::to_string(vars_.size()) + " unknowns (bound " +
                                 std::to_string(max_variables) + ")");
        build_constraints();
    }

    int n() const { return faces_->n(); }
    int degree() const { return degree_; }
    const FacesPtr& faces() const { return faces_; }
    const RingSpec& ring() const { return ring_; }
    const SingularitySequence& sequence() const { return seq_; }
    const std::vector<SingVariable>& variables() const { return vars_; }
    const LinearAdSystem& system() const { return system_; }

    std::optional<std::size_t> find(unsigned sigma, std::size_t cell) const
    {
        auto it = index_.find({sigma, cell});
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::optional<std::size_t> find(unsigned sigma, std::size_t c, unsigned tau) const
    {
        if ((tau & sigma) != tau || tau == 0)
            return std::nullopt;
        return find(sigma, faces_->index(sigma, c, tau));
    }

    /// A cell (c, tau) of member sigma may carry a ring value.
    bool admissible(unsigned sigma, unsigned tau) const
    {
        if (!(tau & 1u))
            return false;
        for (int i = 1; i <= n(); ++i)
            if ((sigma >> i & 1u) && !(tau >> i & 1u) && !seq_.entry(static_cast<std::size_t>(i)))
                return false;
        return true;
    }

    /// The family with the given values (all other cells empty).
    SingAd to_ad(const IntVector& x) const
    {
        SingAd m(faces_, ring_, seq_, degree_);
        for (std::size_t v = 0; v < vars_.size(); ++v)
            m.member(vars_[v].sigma).set(vars_[v].cell, x[v]);
        return m;
    }

    /// Values of a family with default signs; throws when a value sits outside the layout.
    IntVector from_ad(const SingAd& m) const
    {
        if (m.n() != n() || m.degree() != degree_ || m.base()->size() != faces_->base()->size())
            throw AdError("SingLayout: family of a different shape");
        IntVector x(vars_.size());
        for (unsigned sigma : faces_->faces())
        {
            const PreAd& mem = m.member(sigma);
            for (std::size_t cell = 0; cell < mem.complex().size(); ++cell)
            {
                if (!mem.value(cell))
                    continue;
                auto v = find(sigma, cell);
                if (!v)
                    throw AdError("SingLayout: value outside the admissible pattern at member " +
                                  face_to_string(sigma) + ", cell " + mem.complex().id(cell));
                x[*v] = *mem.value(cell);
            }
        }
        return x;
    }

    /// Add rows to the constraint system (used for subtheories).
    void add_constraints(const IntMatrix& rows)
    {
        system_.constraints = IntMatrix::vstack(system_.constraints, rows);
    }

private:
    void build_constraints()
    {
        const FaceComplexes& fc = *faces_;
        std::vector<IntVector> rows;
        for (unsigned sigma : fc.faces())
        {
            const BallComplex& k = *fc.face(sigma);
            for (std::size_t cell : k.cells_of_dim(degree_ + 1))
            {
                IntVector row(vars_.size());
                bool any = false;
                for (const auto& e : k.boundary(cell))
                    if (auto v = find(sigma, e.face))
                    {
                        row[*v] += e.sign;
                        any = true;
                    }
                if (any)
                    rows.push_back(std::move(row));
            }
            for (int i = 1; i <= n(); ++i)
            {
                const Value& p = seq_.entry(static_cast<std::size_t>(i));
                if (!(sigma >> i & 1u) || !p)
                    continue;
                const unsigned lower = sigma & ~(1u << i);
                const BallComplex& lk = *fc.face(lower);
                for (std::size_t cell : lk.cells_of_dim(degree_))
                {
                    auto [c, tau] = fc.decode(lower, cell);
                    auto lo = find(lower, cell);
                    auto hi = find(sigma, c, tau);
                    if (!lo && !hi)
                        continue;
                    IntVector row(vars_.size());
                    if (hi)
                        row[*hi] += 1;
                    if (lo)
                        row[*lo] -= *p;
                    rows.push_back(std::move(row));
                }
            }
        }
        system_ = {vars_.size(), IntMatrix(rows.size(), vars_.size()), ring_.modulus};
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t j = 0; j < vars_.size(); ++j)
                system_.constraints(r, j) = rows[r][j];
    }

    FacesPtr faces_;
    RingSpec ring_;
    SingularitySequence seq_;
    int degree_;
    std::vector<SingVariable> vars_;
    std::map<std::pair<unsigned, std::size_t>, std::size_t> index_;
    LinearAdSystem system_;
};

/// Matrix sending the unknowns of `from` to those of `to` along a cell correspondence.
template <class F>
IntMatrix layout_map(const SingLayout& from, const SingLayout& to, F&& image)
{
    IntMatrix m(to.variables().size(), from.variables().size());
    for (std::size_t v = 0; v < from.variables().size(); ++v)
    {
        // image returns (sigma, c, tau, sign) or sign 0 to drop the unknown.
        auto [c, tau] = from.faces()->decode(from.variables()[v].sigma, from.variables()[v].cell);
        auto [sigma2, c2, tau2, sign] = image(from.variables()[v].sigma, c, tau);
        if (sign == 0)
            continue;
        auto w = to.find(sigma2, c2, tau2);
        if (!w)
            throw AdError("layout_map: image of an unknown is not admissible");
        m(*w, v) += sign;
    }
    return m;
}

/// Bordism of ad / S_n in one degree, with the layouts that realise it.
struct SingBordism
{
    SingLayout star;
    SingLayout cylinder;
    QuotientGroup quotient;

    const FgAbGroup& group() const { return quotient.group; }
};

/// Restriction of K x I families to one end; K x I cells are (c, e) at 3c + e.
inline IntMatrix end_restriction(const SingLayout& cyl, const SingLayout& star, int end)
{
    std::size_t slot = end == 0 ? interval_cells::end0 : interval_cells::end1;
    return layout_map(cyl, star, [&](unsigned sigma, std::size_t c, unsigned tau) {
        if (c % 3 != slot)
            return std::tuple<unsigned, std::size_t, unsigned, int>{sigma, 0, tau, 0};
        return std::tuple<unsigned, std::size_t, unsigned, int>{sigma, c / 3, tau, 1};
    });
}

/// Extra constraints applied to both the *-layout and the I-layout.
using LayoutConstraint = std::function<IntMatrix(const SingLayout&)>;

inline SingBordism sing_bordism(const RingSpec& ring, const SingularitySequence& seq, int n, int degree,
                                const LayoutConstraint& extra = {},
                                std::size_t max_variables = default_max_variables)
{
    ComplexPtr pt = share(point());
    ComplexPtr interval = share(product(point(), simplex(1)));
    SingLayout star(pt, ring, seq, n, degree, max_variables);
    SingLayout cyl(interval, ring, seq, n, degree, max_variables);
    if (extra)
    {
        star.add_constraints(extra(star));
        cyl.add_constraints(extra(cyl));
    }
    QuotientGroup q = bordism_quotient(star.system(), cyl.system(), end_restriction(cyl, star, 0),
                                       end_restriction(cyl, star, 1));
    return {std::move(star), std::move(cyl), std::move(q)};
}

/// A random valid ad mod S_n on `base`: a random combination of a basis of solutions.
template <class Rng>
SingAd random_sing_ad(const ComplexPtr& base, const RingSpec& ring, const SingularitySequence& seq, int n,
                      int degree, Rng& rng, int spread = 3)
{
    SingLayout l(base, ring, seq, n, degree);
    Lattice sols = solution_lattice(l.system());
    std::uniform_int_distribution<int> coef(-spread, spread);
    IntVector c(sols.rank());
    for (auto& x : c)
        x = coef(rng);
    IntVector x = sols.basis() * c;
    for (auto& v : x)
        v = ring.reduce(v);
    SingAd out = l.to_ad(x);
    return out.with_sequence(seq);
}

inline FgAbGroup bordism_group_mod_S(const RingSpec& ring, const SingularitySequence& seq, int n, int degree)
{
    return sing_bordism(ring, seq, n, degree).group();
}

/// mu on unknowns: multiplication by P_(n+1).
inline IntMatrix mu_matrix(const SingLayout& l, const Value& p)
{
    if (!p)
        return IntMatrix(l.variables().size(), l.variables().size());
    return IntMatrix::scalar(l.variables().size(), *p);
}

/// pi on unknowns: (sigma, c, tau) -> (sigma + j, c, tau + j) with j = n + 1.
inline IntMatrix pi_matrix(const SingLayout& from, const SingLayout& to)
{
    const int j = from.n() + 1;
    return layout_map(from, to, [&](unsigned sigma, std::size_t c, unsigned tau) {
        unsigned above = tau >> j;
        int sign = std::popcount(above) % 2 == 0 ? 1 : -1;
        return std::tuple<unsigned, std::size_t, unsigned, int>{sigma | 1u << j, c, tau | 1u << j, sign};
    });
}

/// delta on unknowns: keep the faces inside {0, ..., n}.
inline IntMatrix delta_matrix(const SingLayout& from, const SingLayout& to)
{
    const unsigned keep = to.faces()->full();
    return layout_map(from, to, [&](unsigned sigma, std::size_t c, unsigned tau) {
        int sign = (sigma & ~keep) == 0 ? 1 : 0;
        return std::tuple<unsigned, std::size_t, unsigned, int>{sigma, c, tau, sign};
    });
}

inline AbMap mu_map(const SingBordism& b, const Value& p)
{
    return induced_map(b.quotient, b.quotient, mu_matrix(b.star, p));
}

inline AbMap pi_map(const SingBordism& from, const SingBordism& to)
{
    return induced_map(from.quotient, to.quotient, pi_matrix(from.star, to.star));
}

inline AbMap delta_map(const SingBordism& from, const SingBordism& to)
{
    return induced_map(from.quotient, to.quotient, delta_matrix(from.star, to.star));
}

} // namespace adsing

#endif
