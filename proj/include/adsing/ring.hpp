/**
 * Coefficient rings Z and Z/m, and the values an ad can put on a cell:
 * a ring element or the empty object.
 */
#ifndef ADSING_RING_HPP
#define ADSING_RING_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "integer.hpp"

namespace adsing
{

/// nullopt is the empty object; it is distinct from the ring element 0.
using Value = std::optional<Integer>;

struct RingSpec
{
    /// 0 means Z.
    Integer modulus = 0;

    RingSpec() = default;
    explicit RingSpec(Integer m) : modulus(std::move(m))
    {
        if (modulus < 0)
            throw std::invalid_argument("RingSpec: negative modulus");
    }

    static RingSpec integers() { return RingSpec(); }

    Integer reduce(const Integer& x) const { return mod_canonical(x, modulus); }
    bool is_zero(const Integer& x) const { return reduce(x) == 0; }

    std::string to_string() const
    {
        return modulus == 0 ? std::string("Z") : "Z/" + modulus.get_str();
    }

    friend bool operator==(const RingSpec& a, const RingSpec& b) { return a.modulus == b.modulus; }
};

/// Empty plus x is x.
inline Value add_values(const Value& a, const Value& b)
{
    if (!a)
        return b;
    if (!b)
        return a;
    return *a + *b;
}

/// Empty absorbs.
inline Value multiply_values(const Value& a, const Value& b)
{
    if (!a || !b)
        return std::nullopt;
    return *a * *b;
}

inline Value scale_value(const Value& a, const Integer& factor)
{
    if (!a)
        return std::nullopt;
    return *a * factor;
}

inline std::string value_to_string(const Value& v)
{
    return v ? v->get_str() : std::string("empty");
}

} // namespace adsing

#endif
