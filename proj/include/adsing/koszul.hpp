/**
 * Koszul complexes K(x_1, ..., x_n) over a graded module given degreewise
 * on a finite window, with homology and a regularity test.
 *
 * C_e(d) = sum over #T = e of M_(d - s_T), s_T the total shift of T, and
 * d(e_T (x) m) = sum over t in T of (-1)^pos(t) e_(T - t) (x) x_t m.
 */
#ifndef ADSING_KOSZUL_HPP
#define ADSING_KOSZUL_HPP

#include <bit>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelian.hpp"

namespace adsing
{

/// x : M_d -> M_(d + shift) for every d with both ends in the window.
struct Endomorphism
{
    int shift = 0;
    std::map<int, AbMap> maps;
};

class GradedModule
{
public:
    GradedModule(int lo, int hi, std::map<int, FgAbGroup> components)
        : lo_(lo), hi_(hi), components_(std::move(components))
    {
        if (lo > hi)
            throw std::invalid_argument("GradedModule: empty window");
        for (int d = lo; d <= hi; ++d)
            components_.try_emplace(d);
        for (const auto& [d, g] : components_)
            if (d < lo || d > hi)
                throw std::invalid_argument("GradedModule: component outside the window");
    }

    /// A single group placed in one degree.
    static GradedModule concentrated(const FgAbGroup& g, int degree, int lo, int hi)
    {
        return GradedModule(lo, hi, {{degree, g}});
    }

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool in_window(int d) const { return d >= lo_ && d <= hi_; }
    const FgAbGroup& component(int d) const { return components_.at(d); }
    const std::vector<Endomorphism>& endomorphisms() const { return xs_; }
    std::size_t length() const { return xs_.size(); }

    void add_endomorphism(Endomorphism x)
    {
        for (int d = lo_; d <= hi_; ++d)
        {
            if (!in_window(d + x.shift))
                continue;
            auto it = x.maps.find(d);
            if (it == x.maps.end())
                throw std::invalid_argument("GradedModule: endomorphism missing in degree " + std::to_string(d));
            if (!(it->second.source().relations() == component(d).relations()) ||
                !(it->second.target().relations() == component(d + x.shift).relations()))
                throw std::invalid_argument("GradedModule: endomorphism has the wrong groups in degree " +
                                            std::to_string(d));
        }
        xs_.push_back(std::move(x));
    }

    /// Multiplication by an integer in every degree (shift 0).
    void add_scalar(const Integer& factor)
    {
        Endomorphism x;
        for (int d = lo_; d <= hi_; ++d)
            x.maps.emplace(d, AbMap::scalar(component(d), factor));
        add_endomorphism(std::move(x));
    }

    /// Throws std::domain_error naming the first pair that fails to commute.
    void check_commuting() const
    {
        for (std::size_t i = 0; i < xs_.size(); ++i)
            for (std::size_t j = i + 1; j < xs_.size(); ++j)
                for (int d = lo_; d <= hi_; ++d)
                {
                    const int si = xs_[i].shift, sj = xs_[j].shift;
                    if (!in_window(d + si) || !in_window(d + sj) || !in_window(d + si + sj))
                        continue;
                    AbMap a = compose(xs_[j].maps.at(d + si), xs_[i].maps.at(d));
                    AbMap b = compose(xs_[i].maps.at(d + sj), xs_[j].maps.at(d));
                    if (!a.equals(b))
                        throw std::domain_error("GradedModule: x_" + std::to_string(i + 1) + " and x_" +
                                                std::to_string(j + 1) + " do not commute in degree " +
                                                std::to_string(d));
                }
    }

private:
    int lo_, hi_;
    std::map<int, FgAbGroup> components_;
    std::vector<Endomorphism> xs_;
};

/// Subsets of {0..n-1} of size e in increasing mask order.
inline std::vector<unsigned> subsets_of_size(int n, int e)
{
    std::vector<unsigned> out;
    for (unsigned t = 0; t < (1u << n); ++t)
        if (std::popcount(t) == e)
            out.push_back(t);
    return out;
}

class KoszulComplex
{
public:
    explicit KoszulComplex(GradedModule m) : m_(std::move(m))
    {
        m_.check_commuting();
        const int n = length();
        for (int e = 2; e <= n; ++e)
            for (int d = m_.lo(); d <= m_.hi(); ++d)
            {
                auto hi = differential(e, d);
                auto lo = differential(e - 1, d);
                if (hi && lo && !compose(*lo, *hi).is_zero())
                    throw std::domain_error("KoszulComplex: dd != 0 at exterior degree " + std::to_string(e) +
                                            ", internal degree " + std::to_string(d));
            }
    }

    const GradedModule& module() const { return m_; }
    int length() const { return static_cast<int>(m_.length()); }

    int shift(unsigned t) const
    {
        int s = 0;
        for (int i = 0; i < length(); ++i)
            if (t >> i & 1u)
                s += m_.endomorphisms()[static_cast<std::size_t>(i)].shift;
        return s;
    }

    /// C_e(d) as a direct sum, or nullopt when a summand leaves the window.
    std::optional<FgAbGroup> component(int e, int d) const
    {
        if (e < 0 || e > length())
            return FgAbGroup();
        FgAbGroup out;
        for (unsigned t : subsets_of_size(length(), e))
        {
            if (!m_.in_window(d - shift(t)))
                return std::nullopt;
            out = direct_sum(out, m_.component(d - shift(t)));
        }
        return out;
    }

    /// The differential C_e(d) -> C_(e-1)(d); nullopt when either end is indeterminate.
    std::optional<AbMap> differential(int e, int d) const
    {
        auto src = component(e, d);
        auto dst = component(e - 1, d);
        if (!src || !dst)
            return std::nullopt;
        if (e <= 0 || e > length())
            return AbMap::zero(*src, *dst);
        auto lower = subsets_of_size(length(), e - 1);
        std::map<unsigned, std::size_t> offset;
        std::size_t pos = 0;
        for (unsigned t : lower)
        {
            offset[t] = pos;
            pos += m_.component(d - shift(t)).generator_count();
        }
        IntMatrix mat(dst->generator_count(), src->generator_count());
        std::size_t col = 0;
        for (unsigned t : subsets_of_size(length(), e))
        {
            const int dt = d - shift(t);
            const std::size_t width = m_.component(dt).generator_count();
            int p = 0;
            for (int i = 0; i < length(); ++i)
            {
                if (!(t >> i & 1u))
                    continue;
                const AbMap& x = m_.endomorphisms()[static_cast<std::size_t>(i)].maps.at(dt);
                const int sign = p % 2 == 0 ? 1 : -1;
                const std::size_t row = offset.at(t & ~(1u << i));
                for (std::size_t r = 0; r < x.matrix().rows(); ++r)
                    for (std::size_t c = 0; c < width; ++c)
                        mat(row + r, col + c) += sign * x.matrix()(r, c);
                ++p;
            }
            col += width;
        }
        return AbMap(*src, *dst, mat);
    }

private:
    GradedModule m_;
};

inline KoszulComplex build_koszul(const GradedModule& m)
{
    return KoszulComplex(m);
}

struct KoszulHomology
{
    int n = 0;
    int lo = 0, hi = 0;
    /// (exterior e, internal d) -> H_e(d); nullopt when indeterminate.
    std::map<std::pair<int, int>, std::optional<FgAbGroup>> groups;

    const std::optional<FgAbGroup>& at(int e, int d) const { return groups.at({e, d}); }

    /// Some H_e with e > 0 is nonzero in a determinate bidegree.
    bool higher_nonvanishing() const
    {
        for (const auto& [key, g] : groups)
            if (key.first > 0 && g && !g->is_trivial())
                return true;
        return false;
    }

    std::string to_string() const
    {
        std::string out;
        for (const auto& [key, g] : groups)
            out += "(exterior " + std::to_string(key.first) + ", internal " + std::to_string(key.second) +
                   "): " + (g ? g->to_string() : std::string("indeterminate")) + "\n";
        return out;
    }
};

inline KoszulHomology koszul_homology(const KoszulComplex& k)
{
    KoszulHomology h;
    h.n = k.length();
    h.lo = k.module().lo();
    h.hi = k.module().hi();
    for (int e = 0; e <= h.n; ++e)
        for (int d = h.lo; d <= h.hi; ++d)
        {
            auto in = k.differential(e + 1, d);
            auto out = k.differential(e, d);
            h.groups[{e, d}] = in && out ? std::optional<FgAbGroup>(homology_at(*in, *out)) : std::nullopt;
        }
    return h;
}

struct RegularityVerdict
{
    int index = 0;                ///< 1-based position in the sequence
    std::optional<bool> regular;  ///< nullopt when the window cannot decide
    std::string detail;
};

/// x_k regular iff multiplication by x_k is injective on M / (x_1, ..., x_(k-1))M.
inline std::vector<RegularityVerdict> regularity_report(const GradedModule& m)
{
    std::vector<RegularityVerdict> out;
    const auto& xs = m.endomorphisms();
    for (std::size_t k = 0; k < xs.size(); ++k)
    {
        RegularityVerdict v{static_cast<int>(k) + 1, true, ""};
        auto image_sum = [&](int d) -> std::optional<Subgroup> {
            IntMatrix gens(m.component(d).generator_count(), 0);
            for (std::size_t i = 0; i < k; ++i)
            {
                const int from = d - xs[i].shift;
                if (!m.in_window(from))
                {
                    if (!m.component(d).is_trivial())
                        return std::nullopt;
                    continue;
                }
                gens = IntMatrix::hstack(gens, xs[i].maps.at(from).matrix());
            }
            return Subgroup{m.component(d), gens};
        };
        bool decided = false;
        for (int d = m.lo(); d <= m.hi() && v.regular.value_or(true); ++d)
        {
            const int to = d + xs[k].shift;
            if (!m.in_window(to))
                continue;
            auto a = image_sum(d);
            auto b = image_sum(to);
            if (!a || !b)
                continue;
            decided = true;
            AbMap induced = induced_map_on_quotients(xs[k].maps.at(d), *a, *b);
            if (!is_injective(induced))
            {
                v.regular = false;
                v.detail = "kernel " + kernel(induced).group.to_string() + " in degree " + std::to_string(d);
            }
        }
        if (!decided)
        {
            v.regular = std::nullopt;
            v.detail = "no degree of the window decides";
        }
        out.push_back(v);
    }
    return out;
}

/// Every entry regular (and decided).
inline bool is_regular_sequence(const GradedModule& m)
{
    for (const auto& v : regularity_report(m))
        if (!v.regular.value_or(false))
            return false;
    return true;
}

} // namespace adsing

#endif
