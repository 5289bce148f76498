/**
 * Arbitrary-precision integer type used throughout the engine.
 */
#ifndef ADSING_INTEGER_HPP
#define ADSING_INTEGER_HPP

#include <string>
#include <vector>

#include <gmpxx.h>

namespace adsing
{

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

inline std::string to_string(const Integer& x)
{
    return x.get_str();
}

/// Floor division; the remainder then has the sign of the divisor.
inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Extended gcd: returns g >= 0 with s*a + t*b = g.
inline Integer gcdext(const Integer& a, const Integer& b, Integer& s, Integer& t)
{
    Integer g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer mod_canonical(const Integer& x, const Integer& m)
{
    if (m == 0)
        return x;
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool is_zero_vector(const IntVector& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

} // namespace adsing

#endif
