#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "elascomplex/rational.hpp"

namespace elascomplex {

struct Monomial {
    std::array<std::uint8_t, 3> exp{0, 0, 0};

    int degree() const { return exp[0] + exp[1] + exp[2]; }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);

// Graded lexicographic: lower degree first; within a degree, higher powers of
// the earlier variables first (x^2, xy, xz, y^2, yz, z^2).
struct GradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        int da = a.degree(), db = b.degree();
        if (da != db)
            return da < db;
        return a.exp > b.exp;
    }
};

// All monomials of total degree <= deg in nvars variables, in graded lex order.
std::vector<Monomial> monomials_up_to(int deg, int nvars);
// Index of m in monomials_up_to(m.degree(), nvars) and any larger list.
std::size_t monomial_index(const Monomial& m, int nvars);
std::size_t monomial_count(int deg, int nvars);

class Polynomial {
public:
    using Terms = std::map<Monomial, Rational, GradedLex>;

    explicit Polynomial(int nvars = 3);
    Polynomial(int nvars, const Rational& c);

    static Polynomial constant(const Rational& c, int nvars = 3) { return Polynomial(nvars, c); }
    static Polynomial variable(int axis, int nvars = 3);
    static Polynomial term(const Monomial& m, const Rational& c, int nvars = 3);
    // x_axis - c
    static Polynomial shifted_variable(int axis, const Rational& c, int nvars = 3);
    // a + b.x
    static Polynomial affine(const Rational& a, const Point3& b, int nvars = 3);

    int nvars() const { return nvars_; }
    int degree() const;  // -1 for the zero polynomial
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    Rational coefficient(const Monomial& m) const;
    void add_term(const Monomial& m, const Rational& c);

    Rational evaluate(const Point3& x) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& s);
    Polynomial operator-() const;

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    std::string to_string() const;

private:
    int nvars_;
    Terms terms_;
};

// Exact partial derivative along axis (0-based).
Polynomial derive(const Polynomial& p, int axis);

// Substitutes x_i = origin_i + sum_j dirs[j]_i s_j and returns a polynomial in
// the parameters s_0..s_{m-1}, m = dirs.size().
Polynomial compose_affine(const Polynomial& p, const Point3& origin, const std::vector<Point3>& dirs);

Polynomial power(const Polynomial& p, int e);

}  // namespace elascomplex
