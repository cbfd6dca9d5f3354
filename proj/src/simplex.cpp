#include "elascomplex/simplex.hpp"

#include <stdexcept>

namespace elascomplex {

Rational factorial(int n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

namespace {

Rational det3(const Point3& a, const Point3& b, const Point3& c)
{
    return dot(a, cross(b, c));
}

}  // namespace

Simplex::Simplex(std::vector<Point3> vertices) : Simplex(vertices, Point3{0, 0, 0})
{
    center_ = barycenter();
}

Simplex::Simplex(std::vector<Point3> vertices, Point3 center)
    : vertices_(std::move(vertices)), center_(std::move(center)), cache_(std::make_shared<Cache>())
{
    int d = dim();
    if (d < 1 || d > 3)
        throw std::invalid_argument("simplex must have 2, 3 or 4 vertices");
    std::vector<Point3> e;
    for (int i = 1; i <= d; ++i)
        e.push_back(vertices_[i] - vertices_[0]);
    Rational gram;
    if (d == 1)
        gram = dot(e[0], e[0]);
    else if (d == 2)
        gram = dot(cross(e[0], e[1]), cross(e[0], e[1]));
    else {
        Rational v = det3(e[0], e[1], e[2]);
        gram = v * v;
    }
    Rational fd = factorial(d);
    measure_sq_ = gram / (fd * fd);
    if (measure_sq_ == 0)
        throw std::invalid_argument("degenerate simplex");
}

Point3 Simplex::barycenter() const
{
    Point3 c{0, 0, 0};
    for (const auto& v : vertices_)
        c = c + v;
    return Rational(1, static_cast<long>(vertices_.size())) * c;
}

Rational Simplex::signed_volume() const
{
    if (dim() != 3)
        throw std::logic_error("signed volume needs a tetrahedron");
    return det3(vertices_[1] - vertices_[0], vertices_[2] - vertices_[0], vertices_[3] - vertices_[0]) / 6;
}

std::vector<Polynomial> Simplex::barycentric() const
{
    if (dim() != 3)
        throw std::logic_error("barycentric coordinates implemented for tetrahedra");
    // lambda_i(x) for i>=1 solves x - v0 = sum_i lambda_i (v_i - v0): rows of J^{-1}.
    Point3 e1 = vertices_[1] - vertices_[0], e2 = vertices_[2] - vertices_[0], e3 = vertices_[3] - vertices_[0];
    Rational det = det3(e1, e2, e3);
    std::array<Point3, 3> rows{cross(e2, e3), cross(e3, e1), cross(e1, e2)};
    std::vector<Polynomial> lam(4, Polynomial(3));
    Polynomial sum(3);
    for (int i = 0; i < 3; ++i) {
        Point3 g = (1 / det) * rows[i];
        lam[i + 1] = Polynomial::affine(-dot(g, vertices_[0]), g);
        sum += lam[i + 1];
    }
    lam[0] = Polynomial(3, 1) - sum;
    return lam;
}

Rational Simplex::monomial_mean(const Monomial& m) const
{
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->means.find(m);
    if (it != cache_->means.end())
        return it->second;
    int d = dim();
    auto& pw = cache_->coord_powers;
    if (pw.empty()) {
        pw.resize(3);
        for (int i = 0; i < 3; ++i) {
            Point3 coeffs{0, 0, 0};
            for (int j = 0; j < d; ++j)
                coeffs[j] = vertices_[j + 1][i] - vertices_[0][i];
            pw[i].push_back(Polynomial(d, 1));
            pw[i].push_back(Polynomial::affine(vertices_[0][i], coeffs, d));
        }
    }
    Polynomial prod(d, 1);
    for (int i = 0; i < 3; ++i) {
        while (static_cast<int>(pw[i].size()) <= m.exp[i])
            pw[i].push_back(pw[i].back() * pw[i][1]);
        if (m.exp[i])
            prod = prod * pw[i][m.exp[i]];
    }
    // mean over the reference simplex of xi^a = d! a! / (|a| + d)!
    Rational sum = 0;
    for (const auto& [mono, c] : prod.terms()) {
        Rational num = factorial(d);
        for (int j = 0; j < d; ++j)
            num *= factorial(mono.exp[j]);
        sum += c * num / factorial(mono.degree() + d);
    }
    cache_->means.emplace(m, sum);
    return sum;
}

Rational Simplex::mean(const Polynomial& p) const
{
    if (p.nvars() != 3)
        throw std::invalid_argument("simplex integration expects 3-variable polynomials");
    Rational s = 0;
    for (const auto& [m, c] : p.terms())
        s += c * monomial_mean(m);
    return s;
}

Rational integrate_simplex(const Polynomial& p, const Simplex& s)
{
    Rational avg = s.mean(p);
    if (s.dim() == 3) {
        Rational vol = s.signed_volume();
        return avg * (vol < 0 ? Rational(-vol) : vol);
    }
    return avg;
}

}  // namespace elascomplex
