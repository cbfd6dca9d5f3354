#include "elascomplex/tensor.hpp"

#include <stdexcept>

namespace elascomplex {

namespace {

int eps(int i, int j, int k)
{
    if (i == j || j == k || i == k)
        return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace

Mat3 zero_mat3()
{
    Mat3 m;
    for (auto& row : m)
        for (auto& x : row)
            x = 0;
    return m;
}

Mat3 identity_mat3()
{
    Mat3 m = zero_mat3();
    for (int i = 0; i < 3; ++i)
        m[i][i] = 1;
    return m;
}

Mat3 outer(const Point3& a, const Point3& b)
{
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m[i][j] = a[i] * b[j];
    return m;
}

Mat3 transpose(const Mat3& a)
{
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m[i][j] = a[j][i];
    return m;
}

Mat3 operator*(const Mat3& a, const Mat3& b)
{
    Mat3 m = zero_mat3();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                m[i][j] += a[i][k] * b[k][j];
    return m;
}

Point3 operator*(const Mat3& a, const Point3& v)
{
    Point3 r{0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r[i] += a[i][j] * v[j];
    return r;
}

// ---- VecPoly ----

VecPoly VecPoly::constant(const Point3& v, int nvars)
{
    return VecPoly(Polynomial(nvars, v[0]), Polynomial(nvars, v[1]), Polynomial(nvars, v[2]));
}

VecPoly VecPoly::position(const Point3& center, int nvars)
{
    VecPoly v(nvars);
    for (int i = 0; i < nvars; ++i)
        v[i] = Polynomial::shifted_variable(i, center[i], nvars);
    for (int i = nvars; i < 3; ++i)
        v[i] = Polynomial(nvars, -center[i]);
    return v;
}

int VecPoly::degree() const
{
    return std::max({c[0].degree(), c[1].degree(), c[2].degree()});
}

Point3 VecPoly::evaluate(const Point3& x) const
{
    return {c[0].evaluate(x), c[1].evaluate(x), c[2].evaluate(x)};
}

VecPoly& VecPoly::operator+=(const VecPoly& o)
{
    for (int i = 0; i < 3; ++i)
        c[i] += o.c[i];
    return *this;
}

VecPoly& VecPoly::operator-=(const VecPoly& o)
{
    for (int i = 0; i < 3; ++i)
        c[i] -= o.c[i];
    return *this;
}

VecPoly operator*(const Rational& s, VecPoly v)
{
    for (auto& p : v.c)
        p *= s;
    return v;
}

VecPoly operator*(const Polynomial& p, const VecPoly& v)
{
    return VecPoly(p * v[0], p * v[1], p * v[2]);
}

// ---- MatPoly ----

MatPoly::MatPoly(int nvars)
    : e{{{Polynomial(nvars), Polynomial(nvars), Polynomial(nvars)},
         {Polynomial(nvars), Polynomial(nvars), Polynomial(nvars)},
         {Polynomial(nvars), Polynomial(nvars), Polynomial(nvars)}}}
{
}

MatPoly MatPoly::constant(const Mat3& m, int nvars)
{
    MatPoly r(nvars);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = Polynomial(nvars, m[i][j]);
    return r;
}

int MatPoly::degree() const
{
    int d = -1;
    for (const auto& row : e)
        for (const auto& p : row)
            d = std::max(d, p.degree());
    return d;
}

bool MatPoly::is_zero() const
{
    for (const auto& row : e)
        for (const auto& p : row)
            if (!p.is_zero())
                return false;
    return true;
}

bool MatPoly::is_symmetric() const
{
    return e[0][1] == e[1][0] && e[0][2] == e[2][0] && e[1][2] == e[2][1];
}

Mat3 MatPoly::evaluate(const Point3& x) const
{
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m[i][j] = e[i][j].evaluate(x);
    return m;
}

MatPoly& MatPoly::operator+=(const MatPoly& o)
{
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            e[i][j] += o.e[i][j];
    return *this;
}

MatPoly& MatPoly::operator-=(const MatPoly& o)
{
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            e[i][j] -= o.e[i][j];
    return *this;
}

MatPoly operator*(const Rational& s, MatPoly m)
{
    for (auto& row : m.e)
        for (auto& p : row)
            p *= s;
    return m;
}

MatPoly operator*(const Polynomial& p, const MatPoly& m)
{
    MatPoly r(m.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = p * m(i, j);
    return r;
}

SymMatPoly::SymMatPoly(MatPoly m) : m_(std::move(m))
{
    if (!m_.is_symmetric())
        throw std::logic_error("SymMatPoly built from a non-symmetric matrix field");
}

Mat3 sym_unit(int comp)
{
    Mat3 m = zero_mat3();
    auto [i, j] = kSymComponents.at(comp);
    m[i][j] = 1;
    m[j][i] = 1;
    return m;
}

// ---- algebra ----

MatPoly transpose(const MatPoly& m)
{
    MatPoly r(m.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = m(j, i);
    return r;
}

MatPoly sym(const MatPoly& m)
{
    return Rational(1, 2) * (m + transpose(m));
}

MatPoly skw(const MatPoly& m)
{
    return Rational(1, 2) * (m - transpose(m));
}

Polynomial trace(const MatPoly& m)
{
    return m(0, 0) + m(1, 1) + m(2, 2);
}

MatPoly outer(const VecPoly& a, const VecPoly& b)
{
    MatPoly r(a.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = a[i] * b[j];
    return r;
}

MatPoly matmul(const Mat3& a, const MatPoly& m)
{
    MatPoly r(m.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (a[i][k] != 0)
                    r(i, j) += a[i][k] * m(k, j);
    return r;
}

MatPoly matmul(const MatPoly& m, const Mat3& a)
{
    MatPoly r(m.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (a[k][j] != 0)
                    r(i, j) += a[k][j] * m(i, k);
    return r;
}

Polynomial dot(const VecPoly& a, const VecPoly& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Polynomial dot(const Point3& a, const VecPoly& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Polynomial frobenius(const MatPoly& a, const MatPoly& b)
{
    Polynomial s(a.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            s += a(i, j) * b(i, j);
    return s;
}

Polynomial frobenius(const Mat3& a, const MatPoly& b)
{
    Polynomial s(b.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (a[i][j] != 0)
                s += a[i][j] * b(i, j);
    return s;
}

VecPoly cross(const VecPoly& a, const VecPoly& b)
{
    return VecPoly(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

VecPoly cross(const Point3& a, const VecPoly& b)
{
    return VecPoly(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

VecPoly cross(const VecPoly& a, const Point3& b)
{
    return -Rational(1) * cross(b, a);
}

MatPoly cross_left(const Point3& b, const MatPoly& a)
{
    MatPoly r(a.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    int s = eps(i, k, l);
                    if (s != 0 && b[k] != 0)
                        r(i, j) += (s * b[k]) * a(l, j);
                }
    return r;
}

MatPoly cross_left(const VecPoly& b, const MatPoly& a)
{
    MatPoly r(a.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    int s = eps(i, k, l);
                    if (s != 0)
                        r(i, j) += Rational(s) * (b[k] * a(l, j));
                }
    return r;
}

MatPoly cross_right(const MatPoly& a, const Point3& c)
{
    MatPoly r(a.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    int s = eps(j, k, l);
                    if (s != 0 && c[l] != 0)
                        r(i, j) += (s * c[l]) * a(i, k);
                }
    return r;
}

MatPoly cross_right(const MatPoly& a, const VecPoly& c)
{
    MatPoly r(a.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    int s = eps(j, k, l);
                    if (s != 0)
                        r(i, j) += Rational(s) * (a(i, k) * c[l]);
                }
    return r;
}

VecPoly dot_left(const Point3& b, const MatPoly& a)
{
    VecPoly r(a.nvars());
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            if (b[i] != 0)
                r[j] += b[i] * a(i, j);
    return r;
}

VecPoly dot_left(const VecPoly& b, const MatPoly& a)
{
    VecPoly r(a.nvars());
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            r[j] += b[i] * a(i, j);
    return r;
}

VecPoly dot_right(const MatPoly& a, const Point3& c)
{
    VecPoly r(a.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (c[j] != 0)
                r[i] += c[j] * a(i, j);
    return r;
}

VecPoly dot_right(const MatPoly& a, const VecPoly& c)
{
    VecPoly r(a.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r[i] += a(i, j) * c[j];
    return r;
}

MatPoly mskw(const VecPoly& w)
{
    MatPoly m(w.nvars());
    m(0, 1) = -w[2];
    m(0, 2) = w[1];
    m(1, 0) = w[2];
    m(1, 2) = -w[0];
    m(2, 0) = -w[1];
    m(2, 1) = w[0];
    return m;
}

VecPoly vskw(const MatPoly& m)
{
    MatPoly s = skw(m);
    return VecPoly(s(2, 1), s(0, 2), s(1, 0));
}

// ---- differential operators ----

VecPoly gradient(const Polynomial& p)
{
    return VecPoly(derive(p, 0), derive(p, 1), derive(p, 2));
}

MatPoly hessian(const Polynomial& p)
{
    MatPoly h(p.nvars());
    for (int i = 0; i < 3; ++i) {
        Polynomial di = derive(p, i);
        for (int j = i; j < 3; ++j) {
            h(i, j) = derive(di, j);
            if (j != i)
                h(j, i) = h(i, j);
        }
    }
    return h;
}

MatPoly grad(const VecPoly& v)
{
    MatPoly m(v.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m(i, j) = derive(v[j], i);
    return m;
}

SymMatPoly def(const VecPoly& v)
{
    return SymMatPoly(sym(grad(v)));
}

VecPoly curl(const VecPoly& v)
{
    return VecPoly(derive(v[2], 1) - derive(v[1], 2), derive(v[0], 2) - derive(v[2], 0),
                   derive(v[1], 0) - derive(v[0], 1));
}

Polynomial div(const VecPoly& v)
{
    return derive(v[0], 0) + derive(v[1], 1) + derive(v[2], 2);
}

Polynomial directional(const Polynomial& p, const Point3& dir)
{
    Polynomial r(p.nvars());
    for (int i = 0; i < p.nvars(); ++i)
        if (dir[i] != 0)
            r += dir[i] * derive(p, i);
    return r;
}

VecPoly directional(const VecPoly& v, const Point3& dir)
{
    return VecPoly(directional(v[0], dir), directional(v[1], dir), directional(v[2], dir));
}

MatPoly directional(const MatPoly& m, const Point3& dir)
{
    MatPoly r(m.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = directional(m(i, j), dir);
    return r;
}

MatPoly curl_cols(const MatPoly& a)
{
    MatPoly r(a.nvars());
    for (int j = 0; j < 3; ++j) {
        VecPoly col(a(0, j), a(1, j), a(2, j));
        VecPoly c = curl(col);
        for (int i = 0; i < 3; ++i)
            r(i, j) = c[i];
    }
    return r;
}

MatPoly cross_nabla_rows(const MatPoly& a)
{
    MatPoly r(a.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    int s = eps(j, k, l);
                    if (s != 0)
                        r(i, j) += Rational(s) * derive(a(i, k), l);
                }
    return r;
}

MatPoly inc(const MatPoly& a)
{
    return curl_cols(cross_nabla_rows(a));
}

SymMatPoly inc(const SymMatPoly& t)
{
    MatPoly r = inc(t.mat());
    if (!r.is_symmetric())
        throw std::logic_error("inc produced a non-symmetric field");
    return SymMatPoly(std::move(r));
}

VecPoly div_row(const MatPoly& m)
{
    VecPoly r(m.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r[i] += derive(m(i, j), j);
    return r;
}

VecPoly div_cols(const MatPoly& m)
{
    VecPoly r(m.nvars());
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            r[j] += derive(m(i, j), i);
    return r;
}

MatPoly gradient_of(const VecPoly& v, const Mat3& proj)
{
    return matmul(proj, grad(v));
}

// ---- Koszul ----

VecPoly koszul_dot_x(const SymMatPoly& t, const Point3& c)
{
    return dot_right(t.mat(), VecPoly::position(c));
}

SymMatPoly koszul_x_cross(const SymMatPoly& t, const Point3& c)
{
    VecPoly x = VecPoly::position(c);
    MatPoly r = cross_right(cross_left(x, t.mat()), x);
    if (!r.is_symmetric())
        throw std::logic_error("x x t x x is not symmetric");
    return SymMatPoly(std::move(r));
}

SymMatPoly koszul_sym_vx(const VecPoly& v, const Point3& c)
{
    return SymMatPoly(sym(outer(v, VecPoly::position(c))));
}

VecPoly pi_RM(const VecPoly& v, const Point3& c)
{
    Point3 v0 = v.evaluate(c);
    Point3 w = curl(v).evaluate(c);
    VecPoly r = VecPoly::constant(v0);
    r += Rational(1, 2) * cross(w, VecPoly::position(c));
    return r;
}

std::array<VecPoly, 6> rigid_motions(const Point3& c)
{
    VecPoly x = VecPoly::position(c);
    return {VecPoly::constant(unit_vector(0)), VecPoly::constant(unit_vector(1)),
            VecPoly::constant(unit_vector(2)), cross(unit_vector(0), x),
            cross(unit_vector(1), x), cross(unit_vector(2), x)};
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p)
{
    return os << p.to_string();
}

std::ostream& operator<<(std::ostream& os, const VecPoly& v)
{
    return os << "(" << v[0] << ", " << v[1] << ", " << v[2] << ")";
}

std::ostream& operator<<(std::ostream& os, const MatPoly& m)
{
    os << "[";
    for (int i = 0; i < 3; ++i)
        os << (i ? "; " : "") << m(i, 0) << ", " << m(i, 1) << ", " << m(i, 2);
    return os << "]";
}

}  // namespace elascomplex
