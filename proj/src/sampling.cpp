#include "elascomplex/sampling.hpp"

#include <stdexcept>

namespace elascomplex {

// Draws are taken straight from the engine so results do not depend on the
// standard library's distribution implementations.
Rational Sampler::rational(int max_num, int max_den)
{
    long num = static_cast<long>(next() % static_cast<std::uint64_t>(2 * max_num + 1)) - max_num;
    long den = static_cast<long>(next() % static_cast<std::uint64_t>(max_den)) + 1;
    return frac(num, den);
}

Point3 Sampler::point()
{
    return {rational(), rational(), rational()};
}

Polynomial Sampler::poly(int deg, double density)
{
    Polynomial p(3);
    auto cut = static_cast<std::uint64_t>(density * 1000);
    for (const auto& m : monomials_up_to(deg, 3))
        if (next() % 1000 < cut)
            p.add_term(m, rational());
    return p;
}

VecPoly Sampler::vec(int deg)
{
    Polynomial a = poly(deg), b = poly(deg), c = poly(deg);
    return VecPoly(a, b, c);
}

MatPoly Sampler::sym(int deg)
{
    MatPoly m;
    for (auto [i, j] : kSymComponents) {
        m(i, j) = poly(deg);
        m(j, i) = m(i, j);
    }
    return m;
}

Field Sampler::combination(const SpaceBasis& b)
{
    std::vector<Rational> c(b.size());
    for (auto& q : c)
        q = rational();
    return b.combine(c);
}

Simplex Sampler::tet()
{
    for (;;) {
        std::vector<Point3> v;
        for (int i = 0; i < 4; ++i)
            v.push_back({rational(4, 3), rational(4, 3), rational(4, 3)});
        try {
            return Simplex(v);
        } catch (const std::invalid_argument&) {
            // degenerate draw, try again
        }
    }
}

Simplex Sampler::triangle()
{
    for (;;) {
        std::vector<Point3> v;
        for (int i = 0; i < 3; ++i)
            v.push_back({rational(4, 3), rational(4, 3), rational(4, 3)});
        if (!is_zero(cross(v[1] - v[0], v[2] - v[0])))
            return Simplex(v);
    }
}

}  // namespace elascomplex
