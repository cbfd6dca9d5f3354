#include "elascomplex/rational.hpp"

#include <stdexcept>

namespace elascomplex {

Rational parse_rational(const std::string& text)
{
    if (text.empty())
        throw std::invalid_argument("empty rational literal");
    auto dotpos = text.find('.');
    Rational q;
    if (dotpos != std::string::npos) {
        std::string digits = text.substr(0, dotpos) + text.substr(dotpos + 1);
        mpz_class num;
        if (num.set_str(digits, 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dotpos - 1);
        q = Rational(num, den);
    } else {
        std::string s = text;
        if (!s.empty() && s[0] == '+')
            s.erase(0, 1);
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        if (q.get_den() == 0)
            throw std::invalid_argument("zero denominator: " + text);
    }
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Rational dot(const Point3& a, const Point3& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Point3 cross(const Point3& a, const Point3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Point3 operator+(const Point3& a, const Point3& b)
{
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

Point3 operator-(const Point3& a, const Point3& b)
{
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Point3 operator*(const Rational& s, const Point3& a)
{
    return {s * a[0], s * a[1], s * a[2]};
}

bool is_zero(const Point3& a)
{
    return a[0] == 0 && a[1] == 0 && a[2] == 0;
}

bool parallel(const Point3& a, const Point3& b)
{
    return is_zero(cross(a, b));
}

}  // namespace elascomplex
