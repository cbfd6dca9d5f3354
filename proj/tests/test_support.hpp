#pragma once

#include <random>

#include "elascomplex/tensor.hpp"

namespace testsupport {

using namespace elascomplex;

inline Rational random_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    return frac(num(rng), den(rng));
}

inline Polynomial random_poly(int deg, std::mt19937_64& rng, double density = 0.6)
{
    std::bernoulli_distribution keep(density);
    Polynomial p(3);
    for (const auto& m : monomials_up_to(deg, 3))
        if (keep(rng))
            p.add_term(m, random_rational(rng));
    return p;
}

inline VecPoly random_vec(int deg, std::mt19937_64& rng)
{
    return VecPoly(random_poly(deg, rng), random_poly(deg, rng), random_poly(deg, rng));
}

inline MatPoly random_mat(int deg, std::mt19937_64& rng)
{
    MatPoly m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m(i, j) = random_poly(deg, rng);
    return m;
}

inline SymMatPoly random_sym(int deg, std::mt19937_64& rng)
{
    return SymMatPoly(sym(random_mat(deg, rng)));
}

inline Point3 random_point(std::mt19937_64& rng)
{
    return {random_rational(rng), random_rational(rng), random_rational(rng)};
}

inline Polynomial x() { return Polynomial::variable(0); }
inline Polynomial y() { return Polynomial::variable(1); }
inline Polynomial z() { return Polynomial::variable(2); }
inline Polynomial c(const Rational& q) { return Polynomial::constant(q); }

}  // namespace testsupport
