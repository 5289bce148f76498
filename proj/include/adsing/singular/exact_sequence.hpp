/**
 * The long sequence
 *   ... -> Om^{S_(n+1)}_k -delta-> Om^{S_n}_k -mu-> Om^{S_n}_k -pi-> Om^{S_(n+1)}_(k+1) -delta-> ...
 * computed over a window of degrees and checked for exactness slot by slot.
 */
#ifndef ADSING_SINGULAR_EXACT_SEQUENCE_HPP
#define ADSING_SINGULAR_EXACT_SEQUENCE_HPP

#include <map>
#include <string>
#include <vector>

#include "bordism.hpp"

namespace adsing
{

enum class SlotVerdict
{
    exact,
    not_exact,
    indeterminate
};

inline std::string verdict_name(SlotVerdict v)
{
    switch (v)
    {
    case SlotVerdict::exact:
        return "EXACT";
    case SlotVerdict::not_exact:
        return "FAIL";
    default:
        return "INDETERMINATE";
    }
}

struct SlotResult
{
    int degree;
    /// "δ→μ", "μ→π" or "π→δ"
    std::string slot;
    SlotVerdict verdict;
    std::string detail;
};

struct ExactSequenceReport
{
    int n = 0;
    int lo = 0, hi = 0;
    std::map<int, FgAbGroup> lower;  ///< Om^{S_n}_k
    std::map<int, FgAbGroup> upper;  ///< Om^{S_(n+1)}_k
    std::vector<SlotResult> slots;

    bool all_exact() const
    {
        for (const auto& s : slots)
            if (s.verdict == SlotVerdict::not_exact)
                return false;
        return true;
    }

    std::size_t determinate_count() const
    {
        std::size_t c = 0;
        for (const auto& s : slots)
            c += s.verdict != SlotVerdict::indeterminate;
        return c;
    }

    std::string to_string() const
    {
        std::string out;
        for (int k = lo; k <= hi; ++k)
            out += "degree " + std::to_string(k) + ": Ω^{S_" + std::to_string(n) + "} = " +
                   lower.at(k).to_string() + ", Ω^{S_" + std::to_string(n + 1) + "} = " +
                   upper.at(k).to_string() + "\n";
        for (const auto& s : slots)
        {
            out += "[k=" + std::to_string(s.degree) + "] slot " + s.slot + ": " + verdict_name(s.verdict);
            if (!s.detail.empty())
                out += " (" + s.detail + ")";
            out += "\n";
        }
        return out;
    }
};

/**
 * Requires the sequence to have at least n + 1 entries.  A slot is judged
 * only when every group it touches lies in [lo, hi].
 */
inline ExactSequenceReport exact_sequence_check(const RingSpec& ring, const SingularitySequence& seq, int n,
                                                int lo, int hi)
{
    if (lo > hi)
        throw std::invalid_argument("exact_sequence_check: empty window");
    if (seq.size() < static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("exact_sequence_check: sequence needs n + 1 entries");
    const Value& p = seq.entry(static_cast<std::size_t>(n) + 1);
    std::map<int, SingBordism> low, up;
    ExactSequenceReport r;
    r.n = n;
    r.lo = lo;
    r.hi = hi;
    for (int k = lo; k <= hi; ++k)
    {
        low.emplace(k, sing_bordism(ring, seq, n, k));
        up.emplace(k, sing_bordism(ring, seq, n + 1, k));
        r.lower[k] = low.at(k).group();
        r.upper[k] = up.at(k).group();
    }
    auto judge = [&](int k, const std::string& name, bool determinate, auto&& maps) {
        SlotResult s{k, name, SlotVerdict::indeterminate, ""};
        if (determinate)
        {
            auto [f, g] = maps();
            auto e = check_exact(f, g);
            s.verdict = e.exact ? SlotVerdict::exact : SlotVerdict::not_exact;
            if (!e.exact)
                s.detail = e.description;
        }
        else
            s.detail = "outside window";
        r.slots.push_back(s);
    };
    for (int k = lo; k <= hi; ++k)
    {
        const bool next = k + 1 <= hi;
        judge(k, "δ→μ", true, [&] {
            return std::pair{delta_map(up.at(k), low.at(k)), mu_map(low.at(k), p)};
        });
        judge(k, "μ→π", next, [&] {
            return std::pair{mu_map(low.at(k), p), pi_map(low.at(k), up.at(k + 1))};
        });
        judge(k, "π→δ", next, [&] {
            return std::pair{pi_map(low.at(k), up.at(k + 1)), delta_map(up.at(k + 1), low.at(k + 1))};
        });
    }
    return r;
}

/**
 * For P_(n+1) empty, mu vanishes and the sequence breaks into
 * 0 -> Om^{S_n}_k -> Om^{S_(n+1)}_(k+1) -> Om^{S_n}_(k+1) -> 0; reports
 * whether each of these splits (degrees with k + 1 in the window).
 */
inline std::vector<std::pair<int, bool>> split_check(const ExactSequenceReport& r)
{
    std::vector<std::pair<int, bool>> out;
    for (int k = r.lo; k < r.hi; ++k)
        out.push_back({k, short_exact_splits(r.lower.at(k), r.upper.at(k + 1), r.lower.at(k + 1))});
    return out;
}

} // namespace adsing

#endif
