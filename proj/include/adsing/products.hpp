/**
 * Products of ads with singularities: the external product over K x L,
 * relabelling of singularity indices, the block-swap symmetry
 * T = (-1)^n tau_(n,n) on ad/(P,P), the close-to predicate, rho_P and the
 * finite stages of ad//P with their bordism groups.
 */
#ifndef ADSING_PRODUCTS_HPP
#define ADSING_PRODUCTS_HPP

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "koszul.hpp"
#include "singular/bordism.hpp"
#include "singular/koszul_comparison.hpp"

namespace adsing
{

/// rho subset {0..n+m} -> (rho_0, rho_1) as bitmasks.
struct IndexSplit
{
    int n = 0, m = 0;

    unsigned first(unsigned rho) const { return rho & ((1u << (n + 1)) - 1); }
    unsigned second(unsigned rho) const { return (rho >> (n + 1)) << 1 | (rho & 1u); }

    /// Inverse on pairs agreeing about 0.
    unsigned join(unsigned r0, unsigned r1) const { return r0 | (r1 >> 1) << (n + 1); }
};

namespace detail
{

inline int sign_of(bool negative) { return negative ? -1 : 1; }

inline SingularitySequence repeat(const SingularitySequence& p, std::size_t times)
{
    SingularitySequence out;
    for (std::size_t i = 0; i < times; ++i)
        out = out.concat(p);
    return out;
}

/// Parity of the permutation sorting the images of the vertices of tau.
inline int relabel_sign(unsigned tau, const std::vector<int>& index_map)
{
    std::vector<int> images;
    for (int v : mask_vertices(tau))
        images.push_back(index_map[static_cast<std::size_t>(v)]);
    int inversions = 0;
    for (std::size_t a = 0; a < images.size(); ++a)
        for (std::size_t b = a + 1; b < images.size(); ++b)
            inversions += images[a] > images[b];
    return inversions % 2 == 0 ? 1 : -1;
}

inline unsigned relabel_mask(unsigned mask, const std::vector<int>& index_map)
{
    unsigned out = 0;
    for (int v : mask_vertices(mask))
        out |= 1u << index_map[static_cast<std::size_t>(v)];
    return out;
}

} // namespace detail

/**
 * (M x N)_rho = M_rho0 x N_rho1 on (K x L) x Delta^rho.  The cell
 * ((c, d), tau) with 0 in tau carries (-1)^(dim d (|tau_0| - 1)) M(c, tau_0) N(d, tau_1).
 */
inline SingAd external_product(const SingAd& a, const SingAd& b)
{
    if (!(a.ring() == b.ring()))
        throw AdError("external_product: ring mismatch (" + a.ring().to_string() + " vs " +
                      b.ring().to_string() + ")");
    const int n = a.n(), m = b.n();
    const IndexSplit split{n, m};
    const BallComplex& k = *a.base();
    const BallComplex& l = *b.base();
    auto base = share(product(k, l));
    auto faces = make_faces(base, n + m);
    SingularitySequence seq =
        a.sequence().prefix(static_cast<std::size_t>(n)).concat(b.sequence().prefix(static_cast<std::size_t>(m)));
    SingAd out(faces, a.ring(), seq, a.degree() + b.degree());
    for (unsigned rho : faces->faces())
    {
        const unsigned r0 = split.first(rho), r1 = split.second(rho);
        for (unsigned t0 = 1; t0 <= r0; t0 += 2)
        {
            if ((t0 & r0) != t0)
                continue;
            for (unsigned t1 = 1; t1 <= r1; t1 += 2)
            {
                if ((t1 & r1) != t1)
                    continue;
                const unsigned tau = split.join(t0, t1);
                for (std::size_t c = 0; c < k.size(); ++c)
                {
                    const Value& x = a.value(r0, c, t0);
                    if (!x)
                        continue;
                    for (std::size_t d = 0; d < l.size(); ++d)
                    {
                        const Value& y = b.value(r1, d, t1);
                        if (!y)
                            continue;
                        const bool odd = l.dim(d) % 2 != 0 && (std::popcount(t0) - 1) % 2 != 0;
                        out.set(rho, c * l.size() + d, tau, detail::sign_of(odd) * *x * *y);
                    }
                }
            }
        }
        for (int i = 1; i <= n + m; ++i)
        {
            if (rho >> i & 1u)
                continue;
            const int eps = i <= n ? a.iso_sign(r0, i) : b.iso_sign(r1, i - n);
            if (eps == -1)
                out.set_iso_sign(rho, i, eps);
        }
    }
    return out;
}

/// The module pairing ad(K) x ad/S_n(L) -> ad/S_n(K x L), written out directly.
inline SingAd module_pairing(const PreAd& a, const SingAd& b)
{
    if (!(a.ring() == b.ring()))
        throw AdError("module_pairing: ring mismatch");
    const BallComplex& k = a.complex();
    const BallComplex& l = *b.base();
    auto faces = make_faces(share(product(k, l)), b.n());
    SingAd out(faces, a.ring(), b.sequence().prefix(static_cast<std::size_t>(b.n())), a.degree() + b.degree());
    for (unsigned sigma : faces->faces())
        for (unsigned tau = 1; tau <= sigma; tau += 2)
            if ((tau & sigma) == tau)
                for (std::size_t c = 0; c < k.size(); ++c)
                    if (a.value(c))
                        for (std::size_t d = 0; d < l.size(); ++d)
                            if (const Value& y = b.value(sigma, d, tau))
                                out.set(sigma, c * l.size() + d, tau, *a.value(c) * *y);
    for (const auto& [key, sign] : b.iso_signs())
        out.set_iso_sign(key.first, key.second, sign);
    return out;
}

/**
 * tau* for a permutation of {1..n} given as images (perm[i-1] = tau(i)).
 * Index 0 is fixed; P'_(tau(i)) = P_i; each cell value picks up the sign of
 * the relabelling of its simplex vertices.
 */
inline SingAd permute(const std::vector<int>& perm, const SingAd& m)
{
    const int n = m.n();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permute: permutation of size " + std::to_string(perm.size()) +
                                    " for n = " + std::to_string(n));
    std::vector<int> index_map(static_cast<std::size_t>(n) + 1, 0);
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int i = 1; i <= n; ++i)
    {
        const int t = perm[static_cast<std::size_t>(i - 1)];
        if (t < 1 || t > n || seen[static_cast<std::size_t>(t)])
            throw std::invalid_argument("permute: not a permutation of {1.." + std::to_string(n) + "}");
        seen[static_cast<std::size_t>(t)] = true;
        index_map[static_cast<std::size_t>(i)] = t;
    }
    std::vector<Value> entries(m.sequence().entries());
    std::vector<int> dims(m.sequence().dims());
    for (int i = 1; i <= n; ++i)
    {
        entries[static_cast<std::size_t>(index_map[static_cast<std::size_t>(i)] - 1)] =
            m.sequence().entry(static_cast<std::size_t>(i));
        dims[static_cast<std::size_t>(index_map[static_cast<std::size_t>(i)] - 1)] =
            m.sequence().dim(static_cast<std::size_t>(i));
    }
    SingAd out(m.faces(), m.ring(), SingularitySequence(entries, dims), m.degree());
    const std::size_t cells = m.base()->size();
    for (unsigned sigma : m.faces()->faces())
    {
        const unsigned target = detail::relabel_mask(sigma, index_map);
        for (unsigned tau = 1; tau <= sigma; tau += 2)
        {
            if ((tau & sigma) != tau)
                continue;
            const unsigned image = detail::relabel_mask(tau, index_map);
            const int sign = detail::relabel_sign(tau, index_map);
            for (std::size_t c = 0; c < cells; ++c)
                if (const Value& v = m.value(sigma, c, tau))
                    out.set(target, c, image, sign * *v);
        }
    }
    for (const auto& [key, sign] : m.iso_signs())
        out.set_iso_sign(detail::relabel_mask(key.first, index_map), index_map[static_cast<std::size_t>(key.second)],
                         sign);
    return out;
}

inline std::vector<int> block_swap(int half)
{
    std::vector<int> perm;
    for (int i = 1; i <= 2 * half; ++i)
        perm.push_back(i <= half ? i + half : i - half);
    return perm;
}

inline std::vector<int> inverse_permutation(const std::vector<int>& perm)
{
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        inv[static_cast<std::size_t>(perm[i] - 1)] = static_cast<int>(i) + 1;
    return inv;
}

/// (sigma o tau)(i) = sigma(tau(i)).
inline std::vector<int> compose_permutations(const std::vector<int>& sigma, const std::vector<int>& tau)
{
    std::vector<int> out(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i)
        out[i] = sigma[static_cast<std::size_t>(tau[i] - 1)];
    return out;
}

/// i^n tau_(n,n) on ad/(P,P) with n = m.n() / 2: block swap and the sign (-1)^n.
inline SingAd symmetry(const SingAd& m)
{
    if (m.n() % 2 != 0)
        throw AdError("symmetry: needs an even number of singularities");
    const int half = m.n() / 2;
    SingAd out = permute(block_swap(half), m);
    return half % 2 == 0 ? out : scale(out, Value(Integer(-1)));
}

/// M is fixed by i^n tau_(n,n); violations name the member, the cell and a face pair (k, k+n).
inline ValidationReport is_close_to(const SingAd& m)
{
    ValidationReport r;
    if (m.n() % 2 != 0)
    {
        r.violations.push_back("odd number of singularities " + std::to_string(m.n()));
        return r;
    }
    const int half = m.n() / 2;
    for (int i = 1; i <= half; ++i)
        if (m.sequence().entry(static_cast<std::size_t>(i)) != m.sequence().entry(static_cast<std::size_t>(i + half)))
            r.violations.push_back("sequence is not of the form (P,P) at index " + std::to_string(i));
    if (!r.ok())
        return r;
    SingAd t = symmetry(m);
    auto pair_for = [&](unsigned sigma, unsigned tau) {
        for (int k = 1; k <= half; ++k)
            if (((sigma >> k) ^ (sigma >> (k + half))) & 1u)
                return k;
        for (int k = 1; k <= half; ++k)
            if (((tau >> k) ^ (tau >> (k + half))) & 1u)
                return k;
        return 1;
    };
    for (unsigned sigma : m.faces()->faces())
        for (unsigned tau = 1; tau <= sigma; tau += 2)
        {
            if ((tau & sigma) != tau)
                continue;
            for (std::size_t c = 0; c < m.base()->size(); ++c)
            {
                const Value& x = m.value(sigma, c, tau);
                const Value& y = t.value(sigma, c, tau);
                if (x == y)
                    continue;
                const int k = pair_for(sigma, tau);
                r.violations.push_back("member " + face_to_string(sigma) + ", cell " +
                                       m.faces()->face(sigma)->id(m.faces()->index(sigma, c, tau)) + ": " +
                                       value_to_string(x) + " vs " + value_to_string(y) + " after the swap (faces " +
                                       std::to_string(k) + ", " + std::to_string(k + half) + ")");
            }
        }
    if (m.iso_signs() != t.iso_signs())
        r.violations.push_back("isomorphism signs are not symmetric");
    return r;
}

/// pi applied `times` times, the sequence first extended to `seq`.
inline SingAd pi_power(const SingAd& m, const SingularitySequence& seq, int times)
{
    SingAd out = m.with_sequence(seq);
    for (int i = 0; i < times; ++i)
        out = pi(out);
    return out;
}

/// rho_P = (1 + i^n tau_(n,n)) pi^n : ad/P -> ad/(P,P), P the first n entries.
inline SingAd rho_P(const SingAd& m)
{
    const int n = m.n();
    SingularitySequence p = m.sequence().prefix(static_cast<std::size_t>(n));
    SingAd a = pi_power(m, p.concat(p), n);
    return add(a, symmetry(a));
}

struct SymmetrizationStage
{
    int stage = 0;
    SingularitySequence base;  ///< P
    SingAd family;             ///< over (P, ..., P) with 2^stage copies

    static SymmetrizationStage start(const SingAd& m)
    {
        return {0, m.sequence().prefix(static_cast<std::size_t>(m.n())), m};
    }

    SymmetrizationStage advance() const { return {stage + 1, base, rho_P(family)}; }
};

/**
 * (1 + T)(M x N).  The product of two stage-s objects lives over 2^(s+1)
 * copies of P, so the result is a stage-(s+1) object.
 */
inline SymmetrizationStage symmetrized_product(const SymmetrizationStage& a, const SymmetrizationStage& b)
{
    if (a.stage != b.stage)
        throw AdError("symmetrized_product: stage mismatch (" + std::to_string(a.stage) + " vs " +
                      std::to_string(b.stage) + ")");
    if (!(a.base == b.base))
        throw AdError("symmetrized_product: different singularity sequences");
    SingAd prod = external_product(a.family, b.family);
    return {a.stage + 1, a.base, add(prod, symmetry(prod))};
}

/// Image of a plain ad at stage s: pi^n into ad/P, then rho s times.
inline SymmetrizationStage canonical_map(const PreAd& m, const SingularitySequence& p, int stage)
{
    const int n = static_cast<int>(p.size());
    SymmetrizationStage st{0, p, pi_power(from_plain(m, SingularitySequence()), p, n)};
    for (int s = 0; s < stage; ++s)
        st = st.advance();
    return st;
}

/// Rows x - T x restricted to the unknowns of a layout over (P, P).
inline IntMatrix symmetry_constraint(const SingLayout& l)
{
    const int half = l.n() / 2;
    const std::vector<int> perm = block_swap(half);
    std::vector<int> index_map(static_cast<std::size_t>(l.n()) + 1, 0);
    for (int i = 1; i <= l.n(); ++i)
        index_map[static_cast<std::size_t>(i)] = perm[static_cast<std::size_t>(i - 1)];
    const int global = half % 2 == 0 ? 1 : -1;
    IntMatrix t = layout_map(l, l, [&](unsigned sigma, std::size_t c, unsigned tau) {
        return std::tuple<unsigned, std::size_t, unsigned, int>{
            detail::relabel_mask(sigma, index_map), c, detail::relabel_mask(tau, index_map),
            global * detail::relabel_sign(tau, index_map)};
    });
    return IntMatrix::identity(l.variables().size()) - t;
}

/// Sequence length at stage s.
inline int stage_length(const SingularitySequence& p, int stage)
{
    return static_cast<int>(p.size()) << stage;
}

/// Degree of the image of degree k under the canonical stage maps 0 -> s.
inline int stage_degree(const SingularitySequence& p, int stage, int k)
{
    return k + stage_length(p, stage) - static_cast<int>(p.size());
}

/// Bordism of stage s: ad/P for s = 0, else cl(ad/P^(2^(s-1))) inside ad/P^(2^s).
inline SingBordism stage_bordism(const RingSpec& ring, const SingularitySequence& p, int stage, int degree,
                                 std::size_t max_variables = default_max_variables)
{
    if (stage < 0)
        throw std::invalid_argument("stage_bordism: negative stage");
    const int n = stage_length(p, stage);
    SingularitySequence seq = detail::repeat(p, std::size_t{1} << stage);
    if (stage == 0)
        return sing_bordism(ring, seq, n, degree, {}, max_variables);
    return sing_bordism(ring, seq, n, degree, symmetry_constraint, max_variables);
}

/// rho on unknowns from a stage-(s-1) layout to a stage-s layout.
inline IntMatrix rho_matrix(const SingLayout& from, const SingLayout& to)
{
    const int n = from.n();
    if (to.n() != 2 * n)
        throw std::invalid_argument("rho_matrix: target must have twice the singularities");
    IntMatrix acc = IntMatrix::identity(from.variables().size());
    std::optional<SingLayout> prev;
    for (int step = 1; step <= n; ++step)
    {
        SingLayout next(from.faces()->base(), from.ring(), to.sequence(), n + step, from.degree() + step);
        acc = pi_matrix(prev ? *prev : from, next) * acc;
        prev.emplace(std::move(next));
    }
    // the last layout has the same unknowns as `to`, without the symmetry rows
    const IntMatrix t = IntMatrix::identity(to.variables().size()) - symmetry_constraint(to);
    return acc + t * acc;
}

enum class StageVerdict
{
    iso_away_from_two,
    trivial,
    fail,
    indeterminate
};

struct StageComparison
{
    int stage = 0;
    int lo = 0, hi = 0;
    std::map<int, FgAbGroup> base_groups;   ///< Om^P_k
    std::map<int, FgAbGroup> stage_groups;  ///< stage group in degree stage_degree(k)
    std::map<int, StageVerdict> verdicts;
    std::vector<RegularityVerdict> regularity;
    bool inapplicable = false;  ///< all stage-0 groups are 2-primary and some is nontrivial
    bool vacuous = false;

    bool regular() const
    {
        for (const auto& v : regularity)
            if (!v.regular.value_or(false))
                return false;
        return true;
    }

    bool holds() const
    {
        if (inapplicable)
            return true;
        for (const auto& [k, v] : verdicts)
            if (v == StageVerdict::fail)
                return false;
        return true;
    }

    std::string to_string() const
    {
        std::string out;
        for (const auto& v : regularity)
            out += "P_" + std::to_string(v.index) + ": " +
                   (v.regular ? (*v.regular ? "regular" : "not regular") : "undecided") + "\n";
        for (const auto& [k, v] : verdicts)
        {
            out += "degree " + std::to_string(k) + ": Ω^P = " + base_groups.at(k).to_string() + ", stage " +
                   std::to_string(stage) + " = " + stage_groups.at(k).to_string() + ": ";
            switch (v)
            {
            case StageVerdict::iso_away_from_two:
                out += "ISO after inverting 2";
                break;
            case StageVerdict::trivial:
                out += "trivial";
                break;
            case StageVerdict::fail:
                out += "FAIL";
                break;
            default:
                out += "INDETERMINATE";
            }
            out += "\n";
        }
        if (vacuous)
            out += "comparison: vacuous (all groups trivial)\n";
        else if (inapplicable)
            out += "comparison: INAPPLICABLE (Ω^P is 2-primary, inverting 2 kills it)\n";
        else
            out += std::string("comparison: ") + (holds() ? "PASS" : "FAIL") + "\n";
        return out;
    }
};

/// The canonical map Om^P_k -> stage s, checked for being an isomorphism after inverting 2.
inline StageComparison compare_stage(const RingSpec& ring, const SingularitySequence& p, int stage, int lo, int hi)
{
    if (stage < 0)
        throw std::invalid_argument("compare_stage: negative stage");
    StageComparison r;
    r.stage = stage;
    r.lo = lo;
    r.hi = hi;
    r.regularity = regularity_report(bordism_module(ring, p, static_cast<int>(p.size()), lo, hi));
    bool any = false, odd = false;
    for (int k = lo; k <= hi; ++k)
    {
        std::vector<SingBordism> chain;
        for (int s = 0; s <= stage; ++s)
            chain.push_back(stage_bordism(ring, p, s, stage_degree(p, s, k)));
        AbMap f = AbMap::identity(chain[0].group());
        for (int s = 1; s <= stage; ++s)
            f = compose(induced_map(chain[s - 1].quotient, chain[s].quotient,
                                    rho_matrix(chain[s - 1].star, chain[s].star)),
                        f);
        r.base_groups[k] = chain.front().group();
        r.stage_groups[k] = chain.back().group();
        any = any || !r.base_groups[k].is_trivial() || !r.stage_groups[k].is_trivial();
        odd = odd || !invert_two(r.base_groups[k]).is_trivial();
        if (r.base_groups[k].is_trivial() && r.stage_groups[k].is_trivial())
            r.verdicts[k] = StageVerdict::trivial;
        else
            r.verdicts[k] = is_isomorphism_away_from_two(f) ? StageVerdict::iso_away_from_two : StageVerdict::fail;
    }
    r.vacuous = !any;
    r.inapplicable = any && !odd;
    return r;
}

/// The cylinder on K x I: M on both ends, nothing on the edge cells.
inline SingAd sing_cylinder(const SingAd& m)
{
    auto faces = make_faces(share(product(*m.base(), simplex(1))), m.n());
    SingAd out(faces, m.ring(), m.sequence(), m.degree());
    for (unsigned sigma : faces->faces())
        for (unsigned tau = 1; tau <= sigma; tau += 2)
            if ((tau & sigma) == tau)
                for (std::size_t c = 0; c < m.base()->size(); ++c)
                {
                    out.set(sigma, 3 * c + interval_cells::end0, tau, m.value(sigma, c, tau));
                    out.set(sigma, 3 * c + interval_cells::end1, tau, m.value(sigma, c, tau));
                }
    for (const auto& [key, sign] : m.iso_signs())
        out.set_iso_sign(key.first, key.second, sign);
    return out;
}

/// Empirical closure checks for cl(ad/P) on symmetrized families.
struct WellBehavedReport
{
    std::vector<std::string> failures;
    std::size_t checks = 0;
    bool ok() const { return failures.empty(); }
};

inline WellBehavedReport check_well_behaved(const RingSpec& ring, const SingularitySequence& p, unsigned seed,
                                            int samples = 5)
{
    WellBehavedReport r;
    std::mt19937_64 rng(seed);
    const int n = static_cast<int>(p.size());
    std::vector<ComplexPtr> bases = {share(point()), share(simplex(1)), share(product(simplex(1), simplex(1)))};
    for (const auto& base : bases)
        for (int degree = 0; degree <= base->max_dim() + n; ++degree)
            for (int s = 0; s < samples; ++s)
            {
                SingAd a = rho_P(random_sing_ad(base, ring, p, n, degree, rng));
                SingAd b = rho_P(random_sing_ad(base, ring, p, n, degree, rng));
                const std::string where = "base with " + std::to_string(base->size()) + " cells, degree " +
                                          std::to_string(degree);
                auto expect = [&](const SingAd& x, const std::string& what) {
                    ++r.checks;
                    auto ad = is_ad_mod_S(x);
                    auto close = is_close_to(x);
                    if (!ad.ok())
                        r.failures.push_back(what + " is not an ad (" + where + "): " + ad.violations.front());
                    else if (!close.ok())
                        r.failures.push_back(what + " is not close (" + where + "): " + close.violations.front());
                };
                expect(a, "rho_P(M)");
                expect(add(a, b), "sum of two symmetrized ads");
                expect(scale(a, Value(Integer(-1))), "negative of a symmetrized ad");
                expect(sing_cylinder(a), "cylinder of a symmetrized ad");
            }
    return r;
}

} // namespace adsing

#endif
