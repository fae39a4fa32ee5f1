#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace theta_tower
{

using Integer = mpz_class;
using Rational = mpq_class;

/// Overflow while doing checked machine-integer arithmetic.
class ArithmeticOverflow : public std::overflow_error
{
public:
    using std::overflow_error::overflow_error;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw ArithmeticOverflow("int64 addition overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw ArithmeticOverflow("int64 subtraction overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw ArithmeticOverflow("int64 multiplication overflow");
    return r;
}

/// Floor division for signed integers (rounds toward -infinity).
inline std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

/// Nonnegative remainder in [0, |b|).
inline std::int64_t floor_mod(std::int64_t a, std::int64_t b)
{
    std::int64_t r = a % b;
    if (r < 0)
        r += (b < 0 ? -b : b);
    return r;
}

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Largest integer <= r.
inline Integer floor(const Rational& r)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

/// Fractional part in [0, 1).
inline Rational frac(const Rational& r)
{
    Rational f = r - Rational(floor(r));
    f.canonicalize();
    return f;
}

/// Reduce into [0, m) for a positive rational modulus.
inline Rational mod_rational(const Rational& r, const Rational& m)
{
    Rational q = r / m;
    Rational out = r - Rational(floor(q)) * m;
    out.canonicalize();
    return out;
}

inline long to_long(const Integer& z)
{
    if (!z.fits_slong_p())
        throw ArithmeticOverflow("integer does not fit in a machine word: " + z.get_str());
    return z.get_si();
}

inline long to_long(const Rational& r)
{
    if (!is_integer(r))
        throw std::domain_error("rational is not an integer: " + r.get_str());
    return to_long(Integer(r.get_num()));
}

/// Canonical "num/den" text, denominator always present.
inline std::string to_fraction_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Short human form: "num" for integers, otherwise "num/den".
inline std::string to_short_string(const Rational& r)
{
    if (is_integer(r))
        return r.get_num().get_str();
    return r.get_str();
}

/// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        if (t.empty())
            return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                return false;
        return true;
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    if (slash == std::string::npos)
    {
        if (!valid_int(s))
            throw std::invalid_argument("malformed rational: '" + s + "'");
        return Rational(Integer(strip_plus(s)));
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("malformed rational: '" + s + "'");
    Integer d(den);
    if (d == 0)
        throw std::invalid_argument("zero denominator: '" + s + "'");
    Rational r(Integer(strip_plus(num)), d);
    r.canonicalize();
    return r;
}

/// Sum of divisors.
inline std::int64_t sigma1(std::int64_t n)
{
    std::int64_t s = 0;
    for (std::int64_t d = 1; d * d <= n; ++d)
    {
        if (n % d == 0)
        {
            s += d;
            if (d * d != n)
                s += n / d;
        }
    }
    return s;
}

/// Kronecker symbol (-4/n).
inline int kronecker_minus4(std::int64_t n)
{
    if (n % 2 == 0)
        return 0;
    return floor_mod(n, 4) == 1 ? 1 : -1;
}

/// A half-integer k/2 stored as its doubled value; used for weights and indices.
class HalfInteger
{
public:
    constexpr HalfInteger() = default;
    static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
    static constexpr HalfInteger whole(int n) { return HalfInteger(2 * n); }

    constexpr int twice() const { return twice_; }
    Rational value() const { return make_rational(twice_, 2); }
    constexpr bool is_whole() const { return twice_ % 2 == 0; }

    constexpr HalfInteger operator+(HalfInteger o) const { return HalfInteger(twice_ + o.twice_); }
    constexpr HalfInteger operator-(HalfInteger o) const { return HalfInteger(twice_ - o.twice_); }
    constexpr bool operator==(const HalfInteger&) const = default;
    constexpr auto operator<=>(const HalfInteger&) const = default;

    std::string str() const
    {
        return is_whole() ? std::to_string(twice_ / 2) : std::to_string(twice_) + "/2";
    }

private:
    constexpr explicit HalfInteger(int twice) : twice_(twice) {}
    int twice_ = 0;
};

} // namespace theta_tower
