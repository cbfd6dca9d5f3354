#include <gtest/gtest.h>

#include "elascomplex/facetrace.hpp"
#include "elascomplex/sampling.hpp"

using namespace elascomplex;

namespace {

const Simplex& ref_face_z0()
{
    static Simplex f({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
    return f;
}

bool tangential(const MatPoly& m, const Point3& n)
{
    return dot_right(m, n).is_zero() && dot_left(n, m).is_zero();
}

}  // namespace

TEST(Traces, Tr1Examples)
{
    FaceFrame f(Simplex({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    const Point3& n = f.n();
    EXPECT_TRUE(tr1(MatPoly::constant(outer(n, n)), f).is_zero());
    // n x I x n = -(n.n) Pi, by direct expansion of eps_ikl n_k eps_jml n_m.
    MatPoly t = tr1(MatPoly::constant(identity_mat3()), f);
    Mat3 oracle;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rational acc = 0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    for (int m = 0; m < 3; ++m) {
                        int e1 = (i - k) * (k - l) * (l - i) / 2, e2 = (j - l) * (l - m) * (m - j) / 2;
                        // (n x I)_il = eps_ikl n_k; then (. x n)_ij = eps_jlm (.)_il n_m
                        acc += Rational(e1) * n[k] * Rational(e2) * n[m];
                    }
            oracle[i][j] = acc;
        }
    EXPECT_EQ(t.evaluate({0, 0, 0}), oracle);
    Mat3 expect = f.P();
    for (auto& r : expect)
        for (auto& v : r)
            v *= -f.nn();
    EXPECT_EQ(t.evaluate({0, 0, 0}), expect);
}

TEST(Traces, Tr2FormsAgreeAndParity)
{
    Sampler s(11);
    FaceFrame f(Simplex({{1, 0, 0}, {0, 2, 0}, {0, 0, 1}}));
    for (int r = 0; r < 5; ++r) {
        MatPoly t = s.sym(4);
        MatPoly a = tr2(t, f);
        EXPECT_TRUE(a.is_symmetric());
        EXPECT_TRUE(tangential(a, f.n()));
        EXPECT_TRUE(tangential(tr1(t, f), f.n()));
        EXPECT_EQ(a, tr2(t, f, Tr2Form::def_form));
        EXPECT_EQ(a, tr2(t, f, Tr2Form::curl_form));
        EXPECT_EQ(a, tr2(t, f, Tr2Form::sym_form));
        FaceFrame g = f.flipped();
        EXPECT_EQ(tr2(t, g), Rational(-1) * a);
        EXPECT_EQ(tr1(t, g), tr1(t, f));
    }
}

TEST(Traces, Tr2Examples)
{
    FaceFrame f(ref_face_z0());
    Polynomial x = Polynomial::variable(0), y = Polynomial::variable(1), z = Polynomial::variable(2);
    // tr2(def v) = hess_F(v.n): v.n = z^2 has zero in-plane Hessian.
    VecPoly v(x * x, y * y, z * z);
    MatPoly t2 = tr2(def(v).mat(), f);
    EXPECT_EQ(restricted_norm2(t2, ref_face_z0()), 0);
    EXPECT_EQ(t2, surface_hess(dot(f.n(), v), f));
    EXPECT_TRUE(tr2(MatPoly::constant(sym_unit(3)), f).is_zero());
    // -Pi d_n t Pi with d_z(z^2) = 2z vanishes on z = 0.
    MatPoly t = (z * z) * MatPoly::constant(outer(unit_vector(0), unit_vector(0)));
    EXPECT_EQ(restricted_norm2(tr2(t, f), ref_face_z0()), 0);
    EXPECT_FALSE(tr2(t, f).is_zero());
}

TEST(Green, IncIdentity)
{
    Sampler s(5);
    Simplex ref = reference_tet();
    Simplex other = s.tet();
    for (int r = 0; r < 4; ++r) {
        MatPoly a = s.sym(3), b = s.sym(4);
        EXPECT_EQ(greens_inc_residual(a, b, ref), 0);
        EXPECT_EQ(greens_inc_residual(a, b, other), 0);
        EXPECT_EQ(greens_inc_residual(a, a, ref), 0);
    }
    // Guard: dropping the edge terms breaks the identity for generic data.
    MatPoly a = s.sym(3), b = s.sym(3);
    Rational vol = integrate_simplex(frobenius(inc(SymMatPoly(a)).mat(), b), ref) -
                   integrate_simplex(frobenius(a, inc(SymMatPoly(b)).mat()), ref);
    EXPECT_NE(vol, 0);
}

TEST(Green, DivDivIdentity)
{
    Sampler s(7);
    for (const Simplex& tri : {reference_triangle(), Simplex({{1, 0, 0}, {0, 2, 0}, {0, 0, 1}})}) {
        FaceFrame f(tri);
        SpaceBasis tb = build_basis({3, tri, Codomain::sym2});
        SpaceBasis vb = build_basis({3, tri, Codomain::scalar});
        for (int r = 0; r < 4; ++r) {
            auto t = std::get<MatPoly>(s.combination(tb));
            auto v = std::get<Polynomial>(s.combination(vb));
            EXPECT_EQ(greens_divdiv_residual(t, v, f), 0);
            EXPECT_EQ(greens_divdiv_residual(t, v, f.flipped()), 0);
        }
    }
    // Quadratic tau against an affine v: the vertex terms are active.
    FaceFrame f(reference_triangle());
    VecPoly x = face_position(f);
    MatPoly t = outer(x, x);
    Polynomial v = Polynomial::affine(1, {2, -1, 0});
    EXPECT_EQ(greens_divdiv_residual(t, v, f), 0);
}

TEST(Identities, CommutationAndEdges)
{
    Sampler s(3);
    auto faces = outward_faces(s.tet());
    for (int r = 0; r < 4; ++r) {
        const FaceFrame& f = faces[r % 4];
        VecPoly v = s.vec(4);
        MatPoly t = s.sym(4);
        EXPECT_EQ(trace_commutation_check(TraceIdentity::defTr1, v, f), 0);
        EXPECT_EQ(trace_commutation_check(TraceIdentity::defTr2, v, f), 0);
        EXPECT_EQ(trace_commutation_check(TraceIdentity::incTr1, t, f), 0);
        EXPECT_EQ(trace_commutation_check(TraceIdentity::incTr2, t, f), 0);
        for (int e = 0; e < 3; ++e) {
            EXPECT_EQ(trace_commutation_check(TraceIdentity::edgeTT, t, f, e), 0);
            EXPECT_EQ(trace_commutation_check(TraceIdentity::edgeDivDiv, t, f, e), 0);
            EXPECT_EQ(trace_commutation_check(TraceIdentity::edgeTr2, t, f, e), 0);
        }
    }
    // Rigid motions: both sides of the def identities vanish.
    for (auto& rm : rigid_motions({1, 2, 3})) {
        EXPECT_TRUE(tr1(def(rm).mat(), faces[0]).is_zero());
        EXPECT_EQ(trace_commutation_check(TraceIdentity::defTr1, rm, faces[0]), 0);
    }
}

TEST(Bubbles, NormalPairTensors)
{
    for (const Simplex& k : {reference_tet(), Sampler(2).tet()}) {
        auto n = normal_pair_tensors(k);
        RationalMatrix gram(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        gram(i, j) += n[i][a][b] * n[j][a][b];
        EXPECT_EQ(rank(gram), 6u);
        auto lam = k.barycentric();
        auto faces = outward_faces(k);
        auto pairs = vertex_pairs();
        for (int p = 0; p < 6; ++p) {
            MatPoly b = (lam[pairs[p][0]] * lam[pairs[p][1]]) * MatPoly::constant(n[p]);
            for (const auto& f : faces)
                EXPECT_EQ(restricted_norm2(tr1(b, f), f.face()), 0);
        }
    }
}

TEST(Bubbles, Dimensions)
{
    for (int k = 4; k <= 5; ++k) {
        auto tt = bubble_basis(BubbleKind::tt, k, reference_tet());
        EXPECT_EQ(tt.basis.size(), tt.expected);
        EXPECT_EQ(tt.kernel_dimension, tt.expected);
        auto inc_b = bubble_basis(BubbleKind::incFull, k, reference_tet());
        EXPECT_EQ(inc_b.basis.size(), inc_b.expected);
        EXPECT_EQ(inc_b.kernel_dimension, inc_b.expected);
        for (const auto& b : inc_b.basis)
            for (const auto& [i, j] : vertex_pairs())
                EXPECT_EQ(restricted_norm2(b, Simplex({reference_tet().vertex(i), reference_tet().vertex(j)})), 0);
    }
    auto dn = bubble_basis(BubbleKind::divNormal, 4, reference_tet());
    EXPECT_EQ(dn.basis.size(), 60u);
    EXPECT_EQ(dn.kernel_dimension, 60u);
}

TEST(Bubbles, Complexes)
{
    auto e = verify_bubble_complex("elasticity", 4, reference_tet());
    EXPECT_TRUE(e.pass);
    for (int k = 3; k <= 5; ++k) {
        auto d = verify_bubble_complex("divdiv2D", k, reference_triangle());
        EXPECT_TRUE(d.pass) << k;
        EXPECT_EQ(bubble_basis(BubbleKind::divdiv2D, k, reference_triangle()).basis.size(),
                  bubble_basis(BubbleKind::divdiv2D, k, reference_triangle()).expected);
    }
    for (int k = 5; k <= 6; ++k) {
        auto h = verify_bubble_complex("hessian2D", k, reference_triangle());
        EXPECT_TRUE(h.pass) << k;
        auto hb = bubble_basis(BubbleKind::hessian2D, k, reference_triangle());
        EXPECT_EQ(hb.basis.size(), hb.expected);
    }
    EXPECT_TRUE(verify_bubble_complex("divdiv2D", 4, Simplex({{1, 0, 0}, {0, 2, 0}, {0, 0, 1}})).pass);
}
