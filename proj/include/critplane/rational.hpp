#pragma once

#include <gmpxx.h>

#include <string>

namespace critplane
{
    /// Arbitrary-precision fraction, always kept in lowest terms.
    using Rational = mpq_class;

    inline auto make_rational(long numerator, long denominator = 1) -> Rational
    {
        Rational r(numerator, denominator);
        r.canonicalize();
        return r;
    }

    /// "31/35", "-1", "0".
    inline auto to_string(const Rational & r) -> std::string
    {
        return r.get_str();
    }

    /// Accepts the output of to_string.
    inline auto rational_from_string(const std::string & text) -> Rational
    {
        Rational r(text);
        r.canonicalize();
        return r;
    }
}
