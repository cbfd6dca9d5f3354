#include <gtest/gtest.h>

#include "elascomplex/simplex.hpp"
#include "test_support.hpp"

using namespace elascomplex;
using namespace testsupport;

namespace {

int levi(int i, int j, int k)
{
    return (i - j) * (j - k) * (k - i) / 2;
}

// inc_ij = eps_ipq eps_jkl d_p d_l A_qk
MatPoly inc_oracle(const MatPoly& a)
{
    MatPoly r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q)
                    for (int k = 0; k < 3; ++k)
                        for (int l = 0; l < 3; ++l) {
                            int s = levi(i, p, q) * levi(j, k, l);
                            if (s)
                                r(i, j) += Rational(s) * derive(derive(a(q, k), p), l);
                        }
    return r;
}

// curl applied to each row: (curl A)_i. = curl(A_i.)
MatPoly row_curl(const MatPoly& a)
{
    MatPoly r;
    for (int i = 0; i < 3; ++i) {
        VecPoly row(a(i, 0), a(i, 1), a(i, 2));
        VecPoly cr = curl(row);
        for (int j = 0; j < 3; ++j)
            r(i, j) = cr[j];
    }
    return r;
}

}  // namespace

TEST(Rational, ParseAndPrint)
{
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
    EXPECT_EQ(to_string(frac(-6, 4)), "-3/2");
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Polynomial, DeriveExamples)
{
    EXPECT_EQ(derive(x() * x() * y(), 0), c(2) * x() * y());
    EXPECT_TRUE(derive(c(5), 1).is_zero());
    EXPECT_EQ(derive(x() + y() + z(), 2), c(1));
    EXPECT_THROW(derive(Polynomial::variable(0, 2), 2), std::out_of_range);
}

TEST(Polynomial, MonomialOrderAndIndex)
{
    auto ms = monomials_up_to(3, 3);
    ASSERT_EQ(ms.size(), 20u);
    for (std::size_t i = 0; i < ms.size(); ++i)
        EXPECT_EQ(monomial_index(ms[i], 3), i);
    // degree 2 block: x^2, xy, xz, y^2, yz, z^2
    EXPECT_EQ(ms[4].exp, (std::array<std::uint8_t, 3>{2, 0, 0}));
    EXPECT_EQ(ms[9].exp, (std::array<std::uint8_t, 3>{0, 0, 2}));
    auto m2 = monomials_up_to(4, 2);
    for (std::size_t i = 0; i < m2.size(); ++i)
        EXPECT_EQ(monomial_index(m2[i], 2), i);
}

TEST(Polynomial, ComposeAffine)
{
    std::mt19937_64 rng(7);
    Polynomial p = random_poly(4, rng);
    Point3 o = random_point(rng);
    std::vector<Point3> dirs{random_point(rng), random_point(rng)};
    Polynomial q = compose_affine(p, o, dirs);
    Point3 s{Rational(1, 3), Rational(-2, 7), 0};
    Point3 xpt = o + s[0] * dirs[0] + s[1] * dirs[1];
    EXPECT_EQ(q.evaluate(s), p.evaluate(xpt));
}

TEST(Tensor, GradExamples)
{
    MatPoly g = grad(VecPoly(x(), c(0), c(0)));
    EXPECT_EQ(g, MatPoly::constant(outer(unit_vector(0), unit_vector(0))));
    MatPoly r = grad(VecPoly(y(), -x(), c(0)));
    EXPECT_EQ(r(0, 1), c(-1));
    EXPECT_EQ(r(1, 0), c(1));
    MatPoly h = grad(VecPoly(z() * z(), c(0), c(0)));
    EXPECT_EQ(h(2, 0), c(2) * z());
    h(2, 0) = Polynomial(3);
    EXPECT_TRUE(h.is_zero());
}

TEST(Tensor, DefExamples)
{
    for (const auto& rm : rigid_motions({1, 2, 3}))
        EXPECT_TRUE(def(rm).is_zero());
    VecPoly v = cross(Point3{1, 2, 3}, VecPoly::position({0, 0, 0}));
    EXPECT_TRUE(def(v).is_zero());
    SymMatPoly d = def(VecPoly(c(0), x() * x(), c(0)));
    EXPECT_EQ(d(0, 1), x());
    EXPECT_EQ(d(1, 0), x());
    EXPECT_TRUE(d(0, 0).is_zero() && d(1, 1).is_zero());
}

TEST(Tensor, IncExamples)
{
    VecPoly v(x() * x() * x(), x() * y() * z(), z() * z() * y());
    EXPECT_TRUE(inc(def(v)).is_zero());

    MatPoly t;
    t(0, 0) = z() * z();
    SymMatPoly r = inc(SymMatPoly(t));
    MatPoly expect;
    expect(1, 1) = c(-2);
    EXPECT_EQ(r.mat(), expect);

    VecPoly pos = VecPoly::position({0, 0, 0});
    // eps_ipq eps_jkl d_p d_l (x_q x_k) = eps_ipq eps_jpq = 2 delta_ij
    EXPECT_EQ(inc(SymMatPoly(outer(pos, pos))).mat(), MatPoly::constant(identity_mat3()) + MatPoly::constant(identity_mat3()));
}

TEST(Tensor, IncMatchesOracles)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        SymMatPoly t = random_sym(4, rng);
        MatPoly a = inc(t).mat();
        EXPECT_EQ(a, inc_oracle(t.mat()));
        // -curl(curl t)^T with row-wise curl
        EXPECT_EQ(a, Rational(-1) * row_curl(transpose(row_curl(t.mat()))));
    }
}

TEST(Tensor, DivRowExamples)
{
    MatPoly m = x() * MatPoly::constant(identity_mat3());
    EXPECT_EQ(div_row(m), VecPoly::constant({1, 0, 0}));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial)
        EXPECT_TRUE(div_row(inc(random_sym(4, rng)).mat()).is_zero());
    // 2 div sym(x q^T) = 4q + (grad q) x + (div q) x with q = e1
    SymMatPoly s = koszul_sym_vx(VecPoly::constant({1, 0, 0}), {0, 0, 0});
    EXPECT_EQ(Rational(2) * div_row(s.mat()), VecPoly::constant({4, 0, 0}));
}

TEST(Tensor, SkewMaps)
{
    MatPoly m = mskw(VecPoly::constant({1, 0, 0}));
    Mat3 expect = zero_mat3();
    expect[1][2] = -1;
    expect[2][1] = 1;
    EXPECT_EQ(m, MatPoly::constant(expect));
    VecPoly w(x(), y() * y(), z() * z() * z());
    EXPECT_EQ(vskw(mskw(w)), w);
    std::mt19937_64 rng(3);
    EXPECT_TRUE(vskw(random_sym(3, rng).mat()).is_zero());
}

TEST(Tensor, DiagramIdentities)
{
    std::mt19937_64 rng(2024);
    VecPoly pos = VecPoly::position({0, 0, 0});
    for (int trial = 0; trial < 10; ++trial) {
        VecPoly u = random_vec(6, rng);
        // (nabla u)^T = def u + 1/2 mskw(curl u)
        EXPECT_EQ(transpose(grad(u)), def(u).mat() + Rational(1, 2) * mskw(curl(u)));

        MatPoly t = random_mat(4, rng);
        // curl(t.x) - (curl t).x = 2 vskw t
        VecPoly lhs = curl(dot_right(t, pos)) - dot_right(curl_cols(t), pos);
        EXPECT_EQ(lhs, Rational(2) * vskw(t));
        // tr(curl t) = -div(2 vskw t)
        EXPECT_EQ(trace(curl_cols(t)), -div(Rational(2) * vskw(t)));
        // tr(t x x) = -2 vskw(t) . x
        EXPECT_EQ(trace(cross_right(t, pos)), -dot(Rational(2) * vskw(t), pos));

        VecPoly v = random_vec(6, rng);
        EXPECT_TRUE(inc(def(v)).is_zero());
        EXPECT_TRUE(div_row(inc(random_sym(6, rng)).mat()).is_zero());
    }
}

TEST(Tensor, KoszulExamples)
{
    Point3 o{0, 0, 0};
    VecPoly pos = VecPoly::position(o);
    EXPECT_TRUE(koszul_x_cross(koszul_sym_vx(pos, o), o).is_zero());
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        SymMatPoly t = random_sym(3, rng);
        EXPECT_TRUE(koszul_dot_x(koszul_x_cross(t, o), o).is_zero());
        Point3 cpt = random_point(rng);
        EXPECT_TRUE(koszul_dot_x(koszul_x_cross(t, cpt), cpt).is_zero());
        EXPECT_TRUE(pi_RM(koszul_dot_x(t, cpt), cpt).is_zero());
    }
    EXPECT_EQ(koszul_dot_x(SymMatPoly(MatPoly::constant(identity_mat3())), o), pos);
}

TEST(Tensor, PiRM)
{
    Point3 cpt{Rational(1, 4), Rational(1, 4), Rational(1, 4)};
    VecPoly v = cross(Point3{1, -2, 3}, VecPoly::position(cpt)) + VecPoly::constant({5, 0, -1});
    EXPECT_EQ(pi_RM(v, cpt), v);
    EXPECT_TRUE(pi_RM(VecPoly(x() * x(), y() * y(), z() * z()), {0, 0, 0}).is_zero());
    std::mt19937_64 rng(4);
    VecPoly w = random_vec(4, rng);
    EXPECT_EQ(pi_RM(pi_RM(w, cpt), cpt), pi_RM(w, cpt));
}

TEST(Simplex, Integration)
{
    Simplex ref({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    EXPECT_EQ(integrate_simplex(c(1), ref), Rational(1, 6));
    EXPECT_EQ(integrate_simplex(x(), ref), Rational(1, 24));
    Simplex edge({{0, 0, 0}, {1, 0, 0}});
    EXPECT_EQ(integrate_simplex(x(), edge), Rational(1, 2));
    // x^a y^b z^c over the reference tet: a! b! c! / (a+b+c+3)!
    Polynomial m = x() * x() * y() * z() * z() * z();
    EXPECT_EQ(integrate_simplex(m, ref), factorial(2) * factorial(1) * factorial(3) / factorial(9));
    EXPECT_THROW(Simplex({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}), std::invalid_argument);
}

TEST(Simplex, AffineInvarianceOfMeans)
{
    std::mt19937_64 rng(12);
    Simplex s({{0, 0, 0}, {2, 0, 1}, {0, 3, 0}, {1, 1, 4}});
    Polynomial p = random_poly(4, rng);
    // mean via barycentric pullback on a sample: compare with Gauss-free identity
    // mean(l_i) = 1/4 and mean(l_i l_j) = (1 + delta_ij) / 20
    auto lam = s.barycentric();
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(s.mean(lam[i]), Rational(1, 4));
        for (int j = 0; j < 4; ++j)
            EXPECT_EQ(s.mean(lam[i] * lam[j]), frac(i == j ? 2 : 1, 20));
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            EXPECT_EQ(lam[i].evaluate(s.vertex(j)), Rational(i == j ? 1 : 0));
    Polynomial sq = p * p;
    EXPECT_GE(s.mean(sq), 0);
}
