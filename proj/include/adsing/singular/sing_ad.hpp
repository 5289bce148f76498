/**
 * Ads modulo a singularity sequence S_n in adjoint form: for every face
 * sigma of Delta^n containing 0 a pre-ad M_sigma on K x Delta^sigma, plus a
 * sign eps(sigma, i) for each i not in sigma encoding the isomorphism
 * between the i-th face of M_(sigma + i) and M_sigma scaled by P_i.
 *
 * Faces are bitmasks over {0, ..., n}.  A cell of K x Delta^sigma is a
 * pair (c, tau) with c a cell of K and tau a nonempty subset of sigma.
 */
#ifndef ADSING_SINGULAR_SING_AD_HPP
#define ADSING_SINGULAR_SING_AD_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "../pre_ad.hpp"
#include "sequence.hpp"

namespace adsing
{

/// Inverse of local_mask: the subset of `face` with the given local bitmask.
inline unsigned expand_mask(unsigned face, unsigned local)
{
    unsigned out = 0;
    int pos = 0;
    for (int i = 0; i < 32; ++i)
        if (face >> i & 1u)
        {
            if (local >> pos & 1u)
                out |= 1u << i;
            ++pos;
        }
    return out;
}

inline std::string face_to_string(unsigned mask)
{
    std::string s = "{";
    auto v = mask_vertices(mask);
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

/// K x Delta^sigma for every face sigma of Delta^n that contains 0.
class FaceComplexes
{
public:
    FaceComplexes(ComplexPtr base, int n) : base_(std::move(base)), n_(n)
    {
        if (n < 0 || n > 12)
            throw std::invalid_argument("FaceComplexes: n out of range");
        for (unsigned half = 0; half < (1u << n); ++half)
        {
            unsigned sigma = half << 1 | 1u;
            faces_.push_back(share(product(*base_, simplex_on(mask_vertices(sigma)))));
        }
    }

    const ComplexPtr& base() const { return base_; }
    int n() const { return n_; }
    unsigned full() const { return (1u << (n_ + 1)) - 1; }

    bool is_face(unsigned sigma) const { return (sigma & 1u) && (sigma & ~full()) == 0; }

    const ComplexPtr& face(unsigned sigma) const
    {
        if (!is_face(sigma))
            throw std::out_of_range("FaceComplexes: " + face_to_string(sigma) + " is not a face containing 0");
        return faces_[sigma >> 1];
    }

    /// Faces containing 0, in increasing mask order.
    std::vector<unsigned> faces() const
    {
        std::vector<unsigned> out;
        for (unsigned half = 0; half < (1u << n_); ++half)
            out.push_back(half << 1 | 1u);
        return out;
    }

    static std::size_t simplex_size(unsigned sigma) { return (std::size_t{1} << std::popcount(sigma)) - 1; }

    std::size_t index(unsigned sigma, std::size_t c, unsigned tau) const
    {
        return c * simplex_size(sigma) + local_mask(sigma, tau) - 1;
    }

    /// (cell of K, tau) of a cell of K x Delta^sigma.
    std::pair<std::size_t, unsigned> decode(unsigned sigma, std::size_t cell) const
    {
        std::size_t s = simplex_size(sigma);
        return {cell / s, expand_mask(sigma, static_cast<unsigned>(cell % s) + 1)};
    }

private:
    ComplexPtr base_;
    int n_;
    std::vector<ComplexPtr> faces_;
};

using FacesPtr = std::shared_ptr<const FaceComplexes>;

inline FacesPtr make_faces(const ComplexPtr& base, int n)
{
    return std::make_shared<const FaceComplexes>(base, n);
}

class SingAd
{
public:
    /// The all-empty family.
    SingAd(FacesPtr faces, RingSpec ring, SingularitySequence seq, int degree)
        : faces_(std::move(faces)), ring_(std::move(ring)), seq_(std::move(seq)), degree_(degree)
    {
        if (seq_.size() < static_cast<std::size_t>(faces_->n()))
            throw AdError("SingAd: sequence shorter than n");
        for (unsigned sigma : faces_->faces())
            members_.emplace_back(faces_->face(sigma), degree_, ring_);
    }

    int n() const { return faces_->n(); }
    int degree() const { return degree_; }
    const RingSpec& ring() const { return ring_; }
    const SingularitySequence& sequence() const { return seq_; }
    const FacesPtr& faces() const { return faces_; }
    const ComplexPtr& base() const { return faces_->base(); }

    const PreAd& member(unsigned sigma) const
    {
        faces_->face(sigma);
        return members_[sigma >> 1];
    }

    PreAd& member(unsigned sigma)
    {
        faces_->face(sigma);
        return members_[sigma >> 1];
    }

    const Value& value(unsigned sigma, std::size_t c, unsigned tau) const
    {
        return member(sigma).value(faces_->index(sigma, c, tau));
    }

    void set(unsigned sigma, std::size_t c, unsigned tau, const Value& v)
    {
        member(sigma).set(faces_->index(sigma, c, tau), v);
    }

    /// eps(sigma, i) for i not in sigma; +1 unless set.
    int iso_sign(unsigned sigma, int i) const
    {
        auto it = signs_.find({sigma, i});
        return it == signs_.end() ? 1 : it->second;
    }

    void set_iso_sign(unsigned sigma, int i, int sign)
    {
        if (sign != 1 && sign != -1)
            throw AdError("SingAd: isomorphism sign must be +1 or -1");
        if (!faces_->is_face(sigma) || i <= 0 || i > n() || (sigma >> i & 1u))
            throw AdError("SingAd: no isomorphism (" + face_to_string(sigma) + ", " + std::to_string(i) + ")");
        if (sign == 1)
            signs_.erase({sigma, i});
        else
            signs_[{sigma, i}] = sign;
    }

    /// Only the nondefault (-1) signs.
    const std::map<std::pair<unsigned, int>, int>& iso_signs() const { return signs_; }

    bool has_default_signs() const { return signs_.empty(); }

    /// The same family regarded over a longer sequence with the same first n entries.
    SingAd with_sequence(const SingularitySequence& seq) const
    {
        if (!seq.agrees_with(seq_, static_cast<std::size_t>(n())))
            throw AdError("SingAd: new sequence changes the first n entries");
        SingAd out = *this;
        out.seq_ = seq;
        return out;
    }

    bool is_empty() const
    {
        for (const auto& m : members_)
            if (!m.is_empty())
                return false;
        return true;
    }

    friend bool operator==(const SingAd& a, const SingAd& b)
    {
        return a.n() == b.n() && a.degree_ == b.degree_ && a.ring_ == b.ring_ &&
               a.base()->size() == b.base()->size() && a.members_ == b.members_ && a.signs_ == b.signs_;
    }

private:
    FacesPtr faces_;
    RingSpec ring_;
    SingularitySequence seq_;
    int degree_;
    std::vector<PreAd> members_;
    std::map<std::pair<unsigned, int>, int> signs_;
};

/**
 * Per-cell form: for one cell c of K, a family of pre-ads on the simplices
 * Delta^sigma of degree k - dim c.
 */
struct SingObject
{
    int n = 0;
    int degree = 0;
    RingSpec ring;
    SingularitySequence sequence;
    /// Indexed by sigma >> 1, each living on simplex_on(mask_vertices(sigma)).
    std::vector<PreAd> members;
    std::map<std::pair<unsigned, int>, int> iso_signs;
};

struct CellwiseFamily
{
    ComplexPtr base;
    std::vector<SingObject> objects;
};

inline CellwiseFamily unadjoint(const SingAd& m)
{
    CellwiseFamily f{m.base(), {}};
    std::vector<ComplexPtr> simplices;
    for (unsigned sigma : m.faces()->faces())
        simplices.push_back(share(simplex_on(mask_vertices(sigma))));
    for (std::size_t c = 0; c < m.base()->size(); ++c)
    {
        SingObject obj{m.n(), m.degree() - m.base()->dim(c), m.ring(), m.sequence(), {}, m.iso_signs()};
        for (unsigned sigma : m.faces()->faces())
        {
            PreAd piece(simplices[sigma >> 1], obj.degree, m.ring());
            for (unsigned tau = 1; tau <= sigma; ++tau)
                if ((tau & sigma) == tau)
                    piece.set(local_mask(sigma, tau) - 1, m.value(sigma, c, tau));
            obj.members.push_back(piece);
        }
        f.objects.push_back(std::move(obj));
    }
    return f;
}

namespace detail
{

inline void check_family(const CellwiseFamily& f)
{
    if (f.objects.size() != f.base->size())
        throw AdError("adjoint: one object per cell of K expected");
    if (f.objects.empty())
        return;
    const SingObject& first = f.objects.front();
    for (std::size_t c = 0; c < f.objects.size(); ++c)
    {
        const SingObject& o = f.objects[c];
        if (o.n != first.n || !(o.ring == first.ring) || !(o.sequence == first.sequence))
            throw AdError("adjoint: object on " + f.base->id(c) + " has a different n, ring or sequence");
        if (o.degree + f.base->dim(c) != first.degree + f.base->dim(0))
            throw AdError("adjoint: object on " + f.base->id(c) + " has an incompatible degree");
        if (o.iso_signs != first.iso_signs)
            throw AdError("adjoint: object on " + f.base->id(c) + " has different isomorphism signs");
        if (o.members.size() != (std::size_t{1} << o.n))
            throw AdError("adjoint: object on " + f.base->id(c) + " has the wrong number of faces");
    }
}

} // namespace detail

/// The member on K x Delta^sigma reassembled from the per-cell objects.
inline PreAd adjoint(const CellwiseFamily& f, const FacesPtr& faces, unsigned sigma)
{
    detail::check_family(f);
    int degree = f.objects.empty() ? 0 : f.objects[0].degree + f.base->dim(0);
    PreAd out(faces->face(sigma), degree, f.objects.empty() ? RingSpec() : f.objects[0].ring);
    for (std::size_t c = 0; c < f.objects.size(); ++c)
    {
        const PreAd& piece = f.objects[c].members.at(sigma >> 1);
        for (unsigned tau = 1; tau <= sigma; ++tau)
            if ((tau & sigma) == tau)
                out.set(faces->index(sigma, c, tau), piece.value(local_mask(sigma, tau) - 1));
    }
    return out;
}

inline SingAd adjoint(const CellwiseFamily& f)
{
    detail::check_family(f);
    if (f.objects.empty())
        throw AdError("adjoint: empty base complex");
    const SingObject& first = f.objects[0];
    auto faces = make_faces(f.base, first.n);
    SingAd out(faces, first.ring, first.sequence, first.degree + f.base->dim(0));
    for (unsigned sigma : faces->faces())
        out.member(sigma) = adjoint(f, faces, sigma);
    for (const auto& [key, sign] : first.iso_signs)
        out.set_iso_sign(key.first, key.second, sign);
    return out;
}

inline ValidationReport is_ad_mod_S(const SingAd& m)
{
    ValidationReport r;
    const FaceComplexes& fc = *m.faces();
    const int n = m.n();
    for (unsigned sigma : fc.faces())
    {
        const PreAd& mem = m.member(sigma);
        const std::string name = "member " + face_to_string(sigma);
        for (const auto& v : is_ad(mem).violations)
            r.violations.push_back(name + ": " + v);
        for (std::size_t cell = 0; cell < mem.complex().size(); ++cell)
        {
            auto [c, tau] = fc.decode(sigma, cell);
            if (!(tau & 1u) && mem.value(cell))
                r.violations.push_back(name + ": d_0 condition fails at " + mem.complex().id(cell));
        }
        for (int i = 1; i <= n; ++i)
        {
            if (!(sigma >> i & 1u))
                continue;
            const unsigned lower = sigma & ~(1u << i);
            const Value& p = m.sequence().entry(static_cast<std::size_t>(i));
            const int eps = m.iso_sign(lower, i);
            for (std::size_t cell = 0; cell < mem.complex().size(); ++cell)
            {
                auto [c, tau] = fc.decode(sigma, cell);
                if (tau >> i & 1u)
                    continue;
                Value expected = multiply_values(p, m.value(lower, c, tau));
                if (expected)
                    expected = m.ring().reduce(eps * *expected);
                if (mem.value(cell) != expected)
                    r.violations.push_back(name + ": face " + std::to_string(i) + " condition fails at " +
                                           mem.complex().id(cell));
            }
        }
    }
    for (unsigned sigma : fc.faces())
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
            {
                if ((sigma >> i & 1u) || (sigma >> j & 1u))
                    continue;
                unsigned si = sigma | 1u << i, sj = sigma | 1u << j;
                if (m.iso_sign(sj, i) * m.iso_sign(sigma, j) != m.iso_sign(si, j) * m.iso_sign(sigma, i))
                    r.violations.push_back("hexagon fails for " + face_to_string(sigma) + " and indices " +
                                           std::to_string(i) + ", " + std::to_string(j));
            }
    return r;
}

/// Every value scaled by p; the empty object makes the whole family empty.
inline SingAd scale(const SingAd& m, const Value& p)
{
    SingAd out = m;
    for (unsigned sigma : m.faces()->faces())
    {
        PreAd& mem = out.member(sigma);
        for (std::size_t cell = 0; cell < mem.complex().size(); ++cell)
            mem.set(cell, multiply_values(p, mem.value(cell)));
    }
    return out;
}

/// Multiplication by P_(n+1).
inline SingAd mu(const SingAd& m)
{
    if (m.sequence().size() < static_cast<std::size_t>(m.n()) + 1)
        throw AdError("mu: the sequence has no entry P_" + std::to_string(m.n() + 1));
    return scale(m, m.sequence().entry(static_cast<std::size_t>(m.n()) + 1));
}

/**
 * The inclusion into ad / S_(n+1): faces without n+1 become empty and the
 * face sigma + (n+1) carries the transport of M_sigma along the collapse.
 * The degree goes up by one.
 */
inline SingAd pi(const SingAd& m)
{
    const int n = m.n();
    if (m.sequence().size() < static_cast<std::size_t>(n) + 1)
        throw AdError("pi: the sequence has no entry P_" + std::to_string(n + 1));
    auto faces = make_faces(m.base(), n + 1);
    SingAd out(faces, m.ring(), m.sequence(), m.degree() + 1);
    const int j = n + 1;
    for (unsigned sigma : m.faces()->faces())
    {
        PreAd moved = transport(collapse_isomorphism(m.base(), sigma, j), m.member(sigma));
        PreAd& target = out.member(sigma | 1u << j);
        for (std::size_t cell = 0; cell < moved.complex().size(); ++cell)
            target.set(cell, moved.value(cell));
    }
    for (const auto& [key, sign] : m.iso_signs())
    {
        out.set_iso_sign(key.first, key.second, sign);
        out.set_iso_sign(key.first | 1u << j, key.second, sign);
    }
    return out;
}

/// Forget the last singularity: keep the faces inside {0, ..., n}.
inline SingAd delta(const SingAd& m)
{
    const int n = m.n() - 1;
    if (n < 0)
        throw AdError("delta: needs n >= 1");
    auto faces = make_faces(m.base(), n);
    SingAd out(faces, m.ring(), m.sequence(), m.degree());
    for (unsigned sigma : faces->faces())
    {
        const PreAd& src = m.member(sigma);
        PreAd& dst = out.member(sigma);
        for (std::size_t cell = 0; cell < src.complex().size(); ++cell)
            dst.set(cell, src.value(cell));
    }
    for (const auto& [key, sign] : m.iso_signs())
        if (key.second <= n && (key.first & ~faces->full()) == 0)
            out.set_iso_sign(key.first, key.second, sign);
    return out;
}

/// Cellwise sum with the empty object as unit.  Signs must agree.
inline SingAd add(const SingAd& a, const SingAd& b)
{
    if (a.n() != b.n() || a.degree() != b.degree() || !(a.ring() == b.ring()) ||
        a.base()->size() != b.base()->size())
        throw AdError("add: families of different shape");
    if (a.iso_signs() != b.iso_signs())
        throw AdError("add: isomorphism signs differ");
    SingAd out = a;
    for (unsigned sigma : a.faces()->faces())
    {
        PreAd& mem = out.member(sigma);
        for (std::size_t cell = 0; cell < mem.complex().size(); ++cell)
            mem.set(cell, add_values(mem.value(cell), b.member(sigma).value(cell)));
    }
    return out;
}

/// A plain ad on K regarded as a family over Delta^0.
inline SingAd from_plain(const PreAd& m, const SingularitySequence& seq = {})
{
    auto faces = make_faces(m.complex_ptr(), 0);
    SingAd out(faces, m.ring(), seq, m.degree());
    for (std::size_t c = 0; c < m.complex().size(); ++c)
        out.set(1u, c, 1u, m.value(c));
    return out;
}

/// The member M_{0} as a plain pre-ad on K.
inline PreAd to_plain(const SingAd& m)
{
    PreAd out(m.base(), m.degree(), m.ring());
    for (std::size_t c = 0; c < m.base()->size(); ++c)
        out.set(c, m.value(1u, c, 1u));
    return out;
}

} // namespace adsing

#endif
