/**
 * Finitely generated abelian groups as integer presentations, homomorphisms
 * between them, and the kernel / image / cokernel / exactness toolkit.
 *
 * A group is Z^g modulo the row space of its relation matrix (rows are
 * relations, columns are generators).  Elements are integer coordinate
 * vectors on the generators.  A map A -> B is a (gens B) x (gens A) matrix
 * acting on coordinate columns.
 */
#ifndef ADSING_ABELIAN_HPP
#define ADSING_ABELIAN_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "smith.hpp"

namespace adsing
{

class IllDefinedMap : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

class FgAbGroup
{
public:
    /// The trivial group.
    FgAbGroup() : FgAbGroup(IntMatrix(0, 0)) {}

    explicit FgAbGroup(IntMatrix relations)
        : relations_(std::move(relations)),
          relation_lattice_(Lattice::span(relations_.transposed()))
    {
        auto snf = smith_normal_form(relations_);
        std::size_t nonzero = 0;
        for (const Integer& d : snf.invariants())
        {
            ++nonzero;
            if (d != 1)
                divisors_.push_back(d);
        }
        rank_ = relations_.cols() - nonzero;
    }

    static FgAbGroup free(std::size_t rank) { return FgAbGroup(IntMatrix(0, rank)); }

    /// Z/order, or Z when order is 0.
    static FgAbGroup cyclic(const Integer& order)
    {
        IntMatrix r(1, 1);
        r(0, 0) = order;
        return FgAbGroup(r);
    }

    static FgAbGroup from_invariants(std::size_t rank, const std::vector<Integer>& divisors)
    {
        IntMatrix r(divisors.size(), rank + divisors.size());
        for (std::size_t i = 0; i < divisors.size(); ++i)
            r(i, rank + i) = divisors[i];
        return FgAbGroup(r);
    }

    std::size_t generator_count() const { return relations_.cols(); }
    const IntMatrix& relations() const { return relations_; }
    const Lattice& relation_lattice() const { return relation_lattice_; }

    std::size_t rank() const { return rank_; }
    const std::vector<Integer>& divisors() const { return divisors_; }

    bool is_trivial() const { return rank_ == 0 && divisors_.empty(); }
    bool is_finite() const { return rank_ == 0; }

    Integer order() const
    {
        if (rank_ != 0)
            throw std::domain_error("FgAbGroup::order: infinite group");
        Integer o = 1;
        for (const auto& d : divisors_)
            o *= d;
        return o;
    }

    bool isomorphic(const FgAbGroup& other) const
    {
        return rank_ == other.rank_ && divisors_ == other.divisors_;
    }

    /// Two coordinate vectors name the same element.
    bool same_element(const IntVector& a, const IntVector& b) const
    {
        IntVector diff(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            diff[i] = a[i] - b[i];
        return relation_lattice_.contains(diff);
    }

    bool is_zero_element(const IntVector& a) const { return relation_lattice_.contains(a); }

    /// "Z^r + Z/d1 + Z/d2 ..." or "0".
    std::string to_string() const
    {
        if (is_trivial())
            return "0";
        std::string out;
        if (rank_ > 0)
            out = "Z^" + std::to_string(rank_);
        for (const auto& d : divisors_)
        {
            if (!out.empty())
                out += " + ";
            out += "Z/" + d.get_str();
        }
        return out;
    }

private:
    IntMatrix relations_;
    Lattice relation_lattice_;
    std::size_t rank_ = 0;
    std::vector<Integer> divisors_;
};

inline FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b)
{
    const IntMatrix& ra = a.relations();
    const IntMatrix& rb = b.relations();
    IntMatrix r(ra.rows() + rb.rows(), ra.cols() + rb.cols());
    for (std::size_t i = 0; i < ra.rows(); ++i)
        for (std::size_t j = 0; j < ra.cols(); ++j)
            r(i, j) = ra(i, j);
    for (std::size_t i = 0; i < rb.rows(); ++i)
        for (std::size_t j = 0; j < rb.cols(); ++j)
            r(ra.rows() + i, ra.cols() + j) = rb(i, j);
    return FgAbGroup(r);
}

/// The group with every 2-power divisor removed: its normal form after tensoring with Z[1/2].
inline FgAbGroup invert_two(const FgAbGroup& g)
{
    std::vector<Integer> odd;
    for (Integer d : g.divisors())
    {
        while (mpz_even_p(d.get_mpz_t()))
            d /= 2;
        if (d != 1)
            odd.push_back(d);
    }
    return FgAbGroup::from_invariants(g.rank(), odd);
}

/// A subgroup given by generators, as coordinate columns on the ambient generators.
struct Subgroup
{
    FgAbGroup ambient;
    IntMatrix generators;

    static Subgroup zero(const FgAbGroup& g) { return {g, IntMatrix(g.generator_count(), 0)}; }
    static Subgroup whole(const FgAbGroup& g) { return {g, IntMatrix::identity(g.generator_count())}; }

    /// Lattice of coordinate vectors lying in the subgroup (relations included).
    Lattice lattice() const
    {
        return Lattice::span(generators) + ambient.relation_lattice();
    }

    bool contains(const IntVector& x) const { return lattice().contains(x); }
};

class AbMap
{
public:
    AbMap(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix))
    {
        if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count())
            throw std::invalid_argument("AbMap: matrix shape does not match the groups");
        const IntMatrix& rel = source_.relations();
        for (std::size_t r = 0; r < rel.rows(); ++r)
            if (!target_.is_zero_element(matrix_ * rel.row(r)))
                throw IllDefinedMap("AbMap: relation " + std::to_string(r) +
                                    " of the source is not sent to zero");
    }

    static AbMap zero(const FgAbGroup& source, const FgAbGroup& target)
    {
        return AbMap(source, target, IntMatrix(target.generator_count(), source.generator_count()));
    }

    static AbMap identity(const FgAbGroup& g)
    {
        return AbMap(g, g, IntMatrix::identity(g.generator_count()));
    }

    static AbMap scalar(const FgAbGroup& g, const Integer& factor)
    {
        return AbMap(g, g, IntMatrix::scalar(g.generator_count(), factor));
    }

    const FgAbGroup& source() const { return source_; }
    const FgAbGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    IntVector apply(const IntVector& x) const { return matrix_ * x; }

    bool is_zero() const
    {
        for (std::size_t j = 0; j < matrix_.cols(); ++j)
            if (!target_.is_zero_element(matrix_.column(j)))
                return false;
        return true;
    }

    /// Same source and target presentations and the same map on every generator.
    bool equals(const AbMap& other) const
    {
        if (!(source_.relations() == other.source_.relations()) ||
            !(target_.relations() == other.target_.relations()))
            return false;
        for (std::size_t j = 0; j < matrix_.cols(); ++j)
            if (!target_.same_element(matrix_.column(j), other.matrix_.column(j)))
                return false;
        return true;
    }

private:
    FgAbGroup source_;
    FgAbGroup target_;
    IntMatrix matrix_;
};

inline AbMap compose(const AbMap& g, const AbMap& f)
{
    if (!(f.target().relations() == g.source().relations()))
        throw std::invalid_argument("compose: target of f differs from source of g");
    return AbMap(f.source(), g.target(), g.matrix() * f.matrix());
}

inline AbMap operator+(const AbMap& a, const AbMap& b)
{
    return AbMap(a.source(), a.target(), a.matrix() + b.matrix());
}

inline AbMap operator-(const AbMap& a, const AbMap& b)
{
    return AbMap(a.source(), a.target(), a.matrix() - b.matrix());
}

struct GroupWithMap
{
    FgAbGroup group;
    AbMap map;
};

/// Coordinate vectors x with f(x) = 0 in the target.
inline Lattice kernel_lattice(const AbMap& f)
{
    return preimage(f.matrix(), f.target().relation_lattice());
}

/// ker f with its inclusion into the source.
inline GroupWithMap kernel(const AbMap& f)
{
    Lattice k = kernel_lattice(f);
    // Source relations lie in k because f is well defined.
    IntMatrix rel_coords = k.coordinates_of(f.source().relation_lattice());
    FgAbGroup g(rel_coords.transposed());
    return {g, AbMap(g, f.source(), k.basis())};
}

/// im f, generated by the images of the source generators, with its inclusion into the target.
inline GroupWithMap image(const AbMap& f)
{
    Lattice rel = kernel_lattice(f);
    FgAbGroup g(rel.basis().transposed());
    return {g, AbMap(g, f.target(), f.matrix())};
}

/// coker f with the projection from the target.
inline GroupWithMap cokernel(const AbMap& f)
{
    IntMatrix rel = IntMatrix::vstack(f.target().relations(), f.matrix().transposed());
    FgAbGroup g(rel);
    return {g, AbMap(f.target(), g, IntMatrix::identity(f.target().generator_count()))};
}

/// ambient / sub with the projection.
inline GroupWithMap quotient(const Subgroup& sub)
{
    IntMatrix rel = IntMatrix::vstack(sub.ambient.relations(), sub.generators.transposed());
    FgAbGroup g(rel);
    return {g, AbMap(sub.ambient, g, IntMatrix::identity(sub.ambient.generator_count()))};
}

inline Subgroup image_subgroup(const AbMap& f)
{
    return {f.target(), f.matrix()};
}

inline Subgroup kernel_subgroup(const AbMap& f)
{
    return {f.source(), kernel_lattice(f).basis()};
}

inline bool is_injective(const AbMap& f)
{
    return kernel(f).group.is_trivial();
}

inline bool is_surjective(const AbMap& f)
{
    return cokernel(f).group.is_trivial();
}

inline bool is_isomorphism(const AbMap& f)
{
    return is_injective(f) && is_surjective(f);
}

/// Inverse of an isomorphism, or nothing when f is not invertible.
inline std::optional<AbMap> inverse(const AbMap& f)
{
    if (!is_isomorphism(f))
        return std::nullopt;
    const std::size_t tb = f.target().generator_count();
    const std::size_t sa = f.source().generator_count();
    IntMatrix joined = IntMatrix::hstack(f.matrix(), f.target().relations().transposed());
    ColumnEchelon e = column_echelon(joined);
    Lattice reach = Lattice::span(joined);
    IntMatrix inv(sa, tb);
    for (std::size_t b = 0; b < tb; ++b)
    {
        IntVector unit(tb);
        unit[b] = 1;
        // Solve joined * y = unit, then keep the source part of y.
        auto coords = reach.coordinates(unit);
        if (!coords)
            return std::nullopt;
        // reach basis = first `rank` columns of e.form = joined * T restricted.
        IntVector y(joined.cols());
        for (std::size_t j = 0; j < e.rank; ++j)
            for (std::size_t r = 0; r < joined.cols(); ++r)
                y[r] += e.transform(r, j) * (*coords)[j];
        for (std::size_t r = 0; r < sa; ++r)
            inv(r, b) = y[r];
    }
    return AbMap(f.target(), f.source(), inv);
}

/// Subquotient ker g / im f inside the middle group; trivial exactly when the pair is exact.
inline FgAbGroup homology_at(const AbMap& f, const AbMap& g)
{
    Lattice k = kernel_lattice(g);
    Lattice im = Lattice::span(f.matrix()) + f.target().relation_lattice();
    IntMatrix coords = k.coordinates_of(im);
    return FgAbGroup(coords.transposed());
}

struct ExactnessReport
{
    bool exact = false;
    bool composite_zero = false;
    FgAbGroup defect;
    std::string description;
};

/// Exactness of A -f-> B -g-> C at B.
inline ExactnessReport check_exact(const AbMap& f, const AbMap& g)
{
    if (!(f.target().relations() == g.source().relations()))
        throw std::invalid_argument("check_exact: target of f differs from source of g");
    ExactnessReport r;
    AbMap gf = compose(g, f);
    r.composite_zero = gf.is_zero();
    if (!r.composite_zero)
    {
        r.description = "g o f != 0";
        return r;
    }
    r.defect = homology_at(f, g);
    r.exact = r.defect.is_trivial();
    r.description = r.exact ? "exact" : "ker g / im f = " + r.defect.to_string();
    return r;
}

/**
 * The map A/A' -> B/B' induced by f : A -> B.  Throws IllDefinedMap when
 * f(A') is not contained in B'.
 */
inline AbMap induced_map_on_quotients(const AbMap& f, const Subgroup& a_sub, const Subgroup& b_sub)
{
    if (!(a_sub.ambient.relations() == f.source().relations()) ||
        !(b_sub.ambient.relations() == f.target().relations()))
        throw std::invalid_argument("induced_map_on_quotients: subgroup ambients do not match f");
    Lattice target_sub = b_sub.lattice();
    for (std::size_t j = 0; j < a_sub.generators.cols(); ++j)
        if (!target_sub.contains(f.matrix() * a_sub.generators.column(j)))
            throw IllDefinedMap("induced_map_on_quotients: f(A') is not contained in B'");
    FgAbGroup qa = quotient(a_sub).group;
    FgAbGroup qb = quotient(b_sub).group;
    return AbMap(qa, qb, f.matrix());
}

/// f becomes an isomorphism after tensoring with Z[1/2].
inline bool is_isomorphism_away_from_two(const AbMap& f)
{
    auto two_primary_finite = [](const FgAbGroup& g) {
        return g.rank() == 0 && invert_two(g).is_trivial();
    };
    return two_primary_finite(kernel(f).group) && two_primary_finite(cokernel(f).group);
}

/**
 * Splitting test for an exact sequence 0 -> A -> B -> C -> 0 of finitely
 * generated abelian groups: it splits iff B is isomorphic to A + C.
 */
inline bool short_exact_splits(const FgAbGroup& a, const FgAbGroup& b, const FgAbGroup& c)
{
    return direct_sum(a, c).isomorphic(b);
}

} // namespace adsing

#endif
