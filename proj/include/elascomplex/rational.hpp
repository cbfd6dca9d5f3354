#pragma once

#include <array>
#include <string>

#include <gmpxx.h>

namespace elascomplex {

using Rational = mpq_class;
using Point3 = std::array<Rational, 3>;

// Parses "p", "p/q" or a terminating decimal such as "-0.25".
// n/d in lowest terms (mpq_class(n, d) does not canonicalize).
inline Rational frac(long n, long d)
{
    Rational q(n, d);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

Rational dot(const Point3& a, const Point3& b);
Point3 cross(const Point3& a, const Point3& b);
Point3 operator+(const Point3& a, const Point3& b);
Point3 operator-(const Point3& a, const Point3& b);
Point3 operator*(const Rational& s, const Point3& a);
bool is_zero(const Point3& a);
bool parallel(const Point3& a, const Point3& b);

inline Point3 unit_vector(int axis)
{
    Point3 e{0, 0, 0};
    e[axis] = 1;
    return e;
}

}  // namespace elascomplex
