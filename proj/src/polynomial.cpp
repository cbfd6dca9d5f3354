#include "elascomplex/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace elascomplex {

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial m;
    for (int i = 0; i < 3; ++i)
        m.exp[i] = static_cast<std::uint8_t>(a.exp[i] + b.exp[i]);
    return m;
}

std::vector<Monomial> monomials_up_to(int deg, int nvars)
{
    std::vector<Monomial> out;
    for (int d = 0; d <= deg; ++d) {
        if (nvars == 1) {
            out.push_back(Monomial{{static_cast<std::uint8_t>(d), 0, 0}});
        } else if (nvars == 2) {
            for (int a = d; a >= 0; --a)
                out.push_back(Monomial{{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(d - a), 0}});
        } else {
            for (int a = d; a >= 0; --a)
                for (int b = d - a; b >= 0; --b)
                    out.push_back(Monomial{{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                                            static_cast<std::uint8_t>(d - a - b)}});
        }
    }
    return out;
}

static std::size_t binom(int n, int k)
{
    if (k < 0 || n < k)
        return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

std::size_t monomial_count(int deg, int nvars)
{
    return deg < 0 ? 0 : binom(deg + nvars, nvars);
}

std::size_t monomial_index(const Monomial& m, int nvars)
{
    int d = m.degree();
    std::size_t base = monomial_count(d - 1, nvars);
    if (nvars == 1)
        return base;
    if (nvars == 2)
        return base + static_cast<std::size_t>(d - m.exp[0]);
    // within degree d: blocks for a = d, d-1, ..., each block of size d-a+1
    std::size_t off = 0;
    for (int a = d; a > m.exp[0]; --a)
        off += static_cast<std::size_t>(d - a + 1);
    off += static_cast<std::size_t>(d - m.exp[0] - m.exp[1]);
    return base + off;
}

Polynomial::Polynomial(int nvars) : nvars_(nvars)
{
    if (nvars < 1 || nvars > 3)
        throw std::invalid_argument("polynomials have 1, 2 or 3 variables");
}

Polynomial::Polynomial(int nvars, const Rational& c) : Polynomial(nvars)
{
    if (c != 0)
        terms_.emplace(Monomial{}, c);
}

Polynomial Polynomial::variable(int axis, int nvars)
{
    if (axis < 0 || axis >= nvars)
        throw std::out_of_range("axis out of range");
    Monomial m;
    m.exp[axis] = 1;
    return term(m, 1, nvars);
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c, int nvars)
{
    Polynomial p(nvars);
    for (int i = nvars; i < 3; ++i)
        if (m.exp[i] != 0)
            throw std::invalid_argument("monomial uses a variable beyond nvars");
    if (c != 0)
        p.terms_.emplace(m, c);
    return p;
}

Polynomial Polynomial::shifted_variable(int axis, const Rational& c, int nvars)
{
    Polynomial p = variable(axis, nvars);
    p.add_term(Monomial{}, -c);
    return p;
}

Polynomial Polynomial::affine(const Rational& a, const Point3& b, int nvars)
{
    Polynomial p(nvars, a);
    for (int i = 0; i < nvars; ++i) {
        Monomial m;
        m.exp[i] = 1;
        p.add_term(m, b[i]);
    }
    return p;
}

int Polynomial::degree() const
{
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

Rational Polynomial::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Rational Polynomial::evaluate(const Point3& x) const
{
    if (terms_.empty())
        return 0;
    int deg = degree();
    std::array<std::vector<Rational>, 3> pw;
    for (int i = 0; i < nvars_; ++i) {
        pw[i].resize(static_cast<std::size_t>(deg) + 1);
        pw[i][0] = 1;
        for (int e = 1; e <= deg; ++e)
            pw[i][e] = pw[i][e - 1] * x[i];
    }
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < nvars_; ++i)
            if (m.exp[i])
                t *= pw[i][m.exp[i]];
        sum += t;
    }
    return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    if (o.nvars_ != nvars_)
        throw std::invalid_argument("variable count mismatch");
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    if (o.nvars_ != nvars_)
        throw std::invalid_argument("variable count mismatch");
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s)
{
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_)
        c *= s;
    return *this;
}

Polynomial Polynomial::operator-() const
{
    Polynomial p = *this;
    for (auto& [m, c] : p.terms_)
        c = -c;
    return p;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.nvars_ != b.nvars_)
        throw std::invalid_argument("variable count mismatch");
    Polynomial p(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            p.add_term(ma * mb, ca * cb);
    return p;
}

std::string Polynomial::to_string() const
{
    if (terms_.empty())
        return "0";
    static const char* names[3] = {"x", "y", "z"};
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << c.get_str();
        for (int i = 0; i < nvars_; ++i) {
            if (m.exp[i] == 1)
                os << "*" << names[i];
            else if (m.exp[i] > 1)
                os << "*" << names[i] << "^" << int(m.exp[i]);
        }
    }
    return os.str();
}

Polynomial derive(const Polynomial& p, int axis)
{
    if (axis < 0 || axis >= p.nvars())
        throw std::out_of_range("axis out of range");
    Polynomial d(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        if (m.exp[axis] == 0)
            continue;
        Monomial n = m;
        n.exp[axis] = static_cast<std::uint8_t>(n.exp[axis] - 1);
        d.add_term(n, c * m.exp[axis]);
    }
    return d;
}

Polynomial power(const Polynomial& p, int e)
{
    Polynomial r(p.nvars(), 1);
    for (int i = 0; i < e; ++i)
        r = r * p;
    return r;
}

Polynomial compose_affine(const Polynomial& p, const Point3& origin, const std::vector<Point3>& dirs)
{
    int m = static_cast<int>(dirs.size());
    if (m < 1 || m > 3)
        throw std::invalid_argument("compose_affine needs 1 to 3 directions");
    int deg = std::max(p.degree(), 0);
    std::array<std::vector<Polynomial>, 3> pw;
    for (int i = 0; i < p.nvars(); ++i) {
        Point3 coeffs{0, 0, 0};
        for (int j = 0; j < m; ++j)
            coeffs[j] = dirs[j][i];
        Polynomial xi = Polynomial::affine(origin[i], coeffs, m);
        pw[i].push_back(Polynomial(m, 1));
        for (int e = 1; e <= deg; ++e)
            pw[i].push_back(pw[i].back() * xi);
    }
    Polynomial out(m);
    for (const auto& [mono, c] : p.terms()) {
        Polynomial t(m, c);
        for (int i = 0; i < p.nvars(); ++i)
            if (mono.exp[i])
                t = t * pw[i][mono.exp[i]];
        out += t;
    }
    return out;
}

}  // namespace elascomplex
