#pragma once

#include <array>
#include <ostream>

#include "elascomplex/polynomial.hpp"

namespace elascomplex {

using Mat3 = std::array<std::array<Rational, 3>, 3>;

Mat3 zero_mat3();
Mat3 identity_mat3();
Mat3 outer(const Point3& a, const Point3& b);
Mat3 transpose(const Mat3& a);
Mat3 operator*(const Mat3& a, const Mat3& b);
Point3 operator*(const Mat3& a, const Point3& v);

struct VecPoly {
    std::array<Polynomial, 3> c;

    explicit VecPoly(int nvars = 3) : c{Polynomial(nvars), Polynomial(nvars), Polynomial(nvars)} {}
    VecPoly(Polynomial a, Polynomial b, Polynomial d) : c{std::move(a), std::move(b), std::move(d)} {}

    static VecPoly constant(const Point3& v, int nvars = 3);
    // x - center
    static VecPoly position(const Point3& center, int nvars = 3);

    Polynomial& operator[](int i) { return c[i]; }
    const Polynomial& operator[](int i) const { return c[i]; }
    int nvars() const { return c[0].nvars(); }
    int degree() const;
    bool is_zero() const { return c[0].is_zero() && c[1].is_zero() && c[2].is_zero(); }
    Point3 evaluate(const Point3& x) const;

    VecPoly& operator+=(const VecPoly& o);
    VecPoly& operator-=(const VecPoly& o);
    friend VecPoly operator+(VecPoly a, const VecPoly& b) { return a += b; }
    friend VecPoly operator-(VecPoly a, const VecPoly& b) { return a -= b; }
    friend bool operator==(const VecPoly&, const VecPoly&) = default;
};

VecPoly operator*(const Rational& s, VecPoly v);
VecPoly operator*(const Polynomial& p, const VecPoly& v);

struct MatPoly {
    std::array<std::array<Polynomial, 3>, 3> e;

    explicit MatPoly(int nvars = 3);
    static MatPoly constant(const Mat3& m, int nvars = 3);

    Polynomial& operator()(int i, int j) { return e[i][j]; }
    const Polynomial& operator()(int i, int j) const { return e[i][j]; }
    int nvars() const { return e[0][0].nvars(); }
    int degree() const;
    bool is_zero() const;
    bool is_symmetric() const;
    Mat3 evaluate(const Point3& x) const;

    MatPoly& operator+=(const MatPoly& o);
    MatPoly& operator-=(const MatPoly& o);
    friend MatPoly operator+(MatPoly a, const MatPoly& b) { return a += b; }
    friend MatPoly operator-(MatPoly a, const MatPoly& b) { return a -= b; }
    friend bool operator==(const MatPoly&, const MatPoly&) = default;
};

MatPoly operator*(const Rational& s, MatPoly m);
MatPoly operator*(const Polynomial& p, const MatPoly& m);

// Symmetric matrix field; symmetry is checked on construction.
class SymMatPoly {
public:
    explicit SymMatPoly(int nvars = 3) : m_(nvars) {}
    explicit SymMatPoly(MatPoly m);

    const MatPoly& mat() const { return m_; }
    const Polynomial& operator()(int i, int j) const { return m_(i, j); }
    int degree() const { return m_.degree(); }
    bool is_zero() const { return m_.is_zero(); }

    friend SymMatPoly operator+(const SymMatPoly& a, const SymMatPoly& b) { return SymMatPoly(a.m_ + b.m_); }
    friend SymMatPoly operator-(const SymMatPoly& a, const SymMatPoly& b) { return SymMatPoly(a.m_ - b.m_); }
    friend bool operator==(const SymMatPoly&, const SymMatPoly&) = default;

private:
    MatPoly m_;
};

// Symmetric component ordering (11,22,33,23,13,12).
inline constexpr std::array<std::array<int, 2>, 6> kSymComponents{{{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}}};
Mat3 sym_unit(int comp);  // symmetric matrix with ones at the comp entries

// ---- algebra ----
MatPoly transpose(const MatPoly& m);
MatPoly sym(const MatPoly& m);
MatPoly skw(const MatPoly& m);
Polynomial trace(const MatPoly& m);
MatPoly outer(const VecPoly& a, const VecPoly& b);
MatPoly matmul(const Mat3& a, const MatPoly& m);
MatPoly matmul(const MatPoly& m, const Mat3& a);
Polynomial dot(const VecPoly& a, const VecPoly& b);
Polynomial dot(const Point3& a, const VecPoly& b);
Polynomial frobenius(const MatPoly& a, const MatPoly& b);
Polynomial frobenius(const Mat3& a, const MatPoly& b);
VecPoly cross(const VecPoly& a, const VecPoly& b);
VecPoly cross(const Point3& a, const VecPoly& b);
VecPoly cross(const VecPoly& a, const Point3& b);

// b x A, column-wise: (b x A)_ij = eps_ikl b_k A_lj
MatPoly cross_left(const Point3& b, const MatPoly& a);
MatPoly cross_left(const VecPoly& b, const MatPoly& a);
// A x c, row-wise: (A x c)_ij = eps_jkl A_ik c_l
MatPoly cross_right(const MatPoly& a, const Point3& c);
MatPoly cross_right(const MatPoly& a, const VecPoly& c);
// b . A (row vector, returned as a vector): sum_i b_i A_ij
VecPoly dot_left(const Point3& b, const MatPoly& a);
VecPoly dot_left(const VecPoly& b, const MatPoly& a);
// A . c: sum_j A_ij c_j
VecPoly dot_right(const MatPoly& a, const Point3& c);
VecPoly dot_right(const MatPoly& a, const VecPoly& c);

MatPoly mskw(const VecPoly& w);
VecPoly vskw(const MatPoly& m);

// ---- differential operators (3 variables) ----
VecPoly gradient(const Polynomial& p);
MatPoly hessian(const Polynomial& p);
MatPoly grad(const VecPoly& v);  // (i,j) = d_i v_j
SymMatPoly def(const VecPoly& v);
VecPoly curl(const VecPoly& v);
Polynomial div(const VecPoly& v);
Polynomial directional(const Polynomial& p, const Point3& dir);
VecPoly directional(const VecPoly& v, const Point3& dir);
MatPoly directional(const MatPoly& m, const Point3& dir);
// nabla x A, column-wise: (i,j) = eps_ikl d_k A_lj
MatPoly curl_cols(const MatPoly& a);
// A x nabla, row-wise: (i,j) = eps_jkl d_l A_ik
MatPoly cross_nabla_rows(const MatPoly& a);
MatPoly inc(const MatPoly& a);
SymMatPoly inc(const SymMatPoly& t);
VecPoly div_row(const MatPoly& m);   // (A . nabla)_i = sum_j d_j A_ij
VecPoly div_cols(const MatPoly& m);  // (nabla . A)_j = sum_i d_i A_ij
MatPoly gradient_of(const VecPoly& v, const Mat3& proj);  // proj * grad(v)

// ---- Koszul operators, x replaced by x - c ----
VecPoly koszul_dot_x(const SymMatPoly& t, const Point3& c);
SymMatPoly koszul_x_cross(const SymMatPoly& t, const Point3& c);
SymMatPoly koszul_sym_vx(const VecPoly& v, const Point3& c);
VecPoly pi_RM(const VecPoly& v, const Point3& c);

// Rigid motion basis a x (x - c) + b: 3 translations then 3 rotations.
std::array<VecPoly, 6> rigid_motions(const Point3& c);

std::ostream& operator<<(std::ostream& os, const Polynomial& p);
std::ostream& operator<<(std::ostream& os, const VecPoly& v);
std::ostream& operator<<(std::ostream& os, const MatPoly& m);

}  // namespace elascomplex
