#include <gtest/gtest.h>

#include "elascomplex/meshassembly.hpp"
#include "test_support.hpp"

using namespace elascomplex;
using namespace testsupport;

TEST(Mesh, BuiltinCounts)
{
    TetMesh r = builtin_mesh("reftet");
    EXPECT_EQ(r.num_vertices(), 4u);
    EXPECT_EQ(r.num_edges(), 6u);
    EXPECT_EQ(r.num_faces(), 4u);
    EXPECT_EQ(r.num_tets(), 1u);
    TetMesh t = builtin_mesh("twotet");
    EXPECT_EQ(t.num_vertices(), 5u);
    EXPECT_EQ(t.num_edges(), 9u);
    EXPECT_EQ(t.num_faces(), 7u);
    EXPECT_EQ(t.num_tets(), 2u);
    TetMesh c = builtin_mesh("cube6");
    EXPECT_EQ(c.num_vertices(), 8u);
    EXPECT_EQ(c.num_edges(), 19u);
    EXPECT_EQ(c.num_faces(), 18u);
    EXPECT_EQ(c.num_tets(), 6u);
    for (const auto* m : {&r, &t, &c})
        EXPECT_EQ(m->euler_characteristic(), 1);
    // Kuhn tets all have volume 1/6
    for (std::size_t i = 0; i < c.num_tets(); ++i) {
        Rational v = c.cell(i).signed_volume();
        EXPECT_EQ(v * v, frac(1, 36));
    }
    EXPECT_THROW(builtin_mesh("torus"), std::invalid_argument);
}

TEST(Mesh, LoaderParsesRationalsAndComments)
{
    TetMesh m = load_mesh("# half-size tet\nv 0 0 0\nv 1/2 0 0\nv 0 1/2 0  # apex below\nv 0 0 1/2\n\nt 0 1 2 3\n");
    EXPECT_EQ(m.vertices[1][0], frac(1, 2));
    EXPECT_EQ(m.num_tets(), 1u);
}

TEST(Mesh, LoaderRejectsBadInput)
{
    EXPECT_THROW(load_mesh("v 0 0\nt 0 1 2 3\n"), std::invalid_argument);
    EXPECT_THROW(load_mesh("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nt 0 1 2 4\n"), std::invalid_argument);
    EXPECT_THROW(load_mesh("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nt 0 1 2 x\n"), std::invalid_argument);
    EXPECT_THROW(load_mesh("q 1\n"), std::invalid_argument);
    // flat tet
    EXPECT_THROW(load_mesh("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\nt 0 1 2 3\n"), std::invalid_argument);
    // duplicated vertex coordinates
    EXPECT_THROW(load_mesh("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nv 0 0 1\nt 0 1 2 3\nt 0 1 2 4\n"),
                 std::invalid_argument);
    // hanging vertex: the midpoint of edge 0-1 is a vertex of a second tet only
    EXPECT_THROW(load_mesh("v 0 0 0\nv 2 0 0\nv 0 2 0\nv 0 0 2\nv 1 0 0\nv 1 0 -2\nt 0 1 2 3\nt 0 4 2 5\n"),
                 std::invalid_argument);
    // a face in three tets
    EXPECT_THROW(load_mesh("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nv 0 0 -1\nv 1 1 1\n"
                           "t 0 1 2 3\nt 0 1 2 4\nt 0 1 2 5\n"),
                 std::invalid_argument);
}

TEST(Mesh, GlobalFrameRule)
{
    TetMesh m = builtin_mesh("reftet");
    // edge 0-1 lies along (1,0,0): the rule falls through to (0,1,0)
    long e01 = m.tet_edges[0][0];
    ASSERT_EQ(m.edges[e01], (std::array<long, 2>{0, 1}));
    const EdgeFrame& f = m.edge_frames[e01];
    EXPECT_EQ(f.t, (Point3{1, 0, 0}));
    EXPECT_EQ(f.n1, (Point3{0, 0, 1}));
    EXPECT_EQ(f.n2, (Point3{0, -1, 0}));
    // edge 0-2 along (0,1,0): n1 = t x e1
    const EdgeFrame& g = m.edge_frames[m.tet_edges[0][1]];
    EXPECT_EQ(g.n1, (Point3{0, 0, -1}));
    EXPECT_EQ(g.n2, cross(g.t, g.n1));
    for (const auto& e : m.edges)
        EXPECT_LT(e[0], e[1]);
}

TEST(Mesh, SharedFaceInducesOppositeTangents)
{
    for (const char* name : {"twotet", "cube6"}) {
        TetMesh m = builtin_mesh(name);
        std::size_t interior = 0;
        for (std::size_t f = 0; f < m.num_faces(); ++f) {
            if (m.face_tets[f].size() != 2)
                continue;
            ++interior;
            long a = m.face_tets[f][0], b = m.face_tets[f][1];
            auto local = [&](long t) {
                for (int i = 0; i < 4; ++i)
                    if (m.tet_faces[t][i] == static_cast<long>(f))
                        return i;
                return -1;
            };
            int fa = local(a), fb = local(b);
            for (int ea = 0; ea < 6; ++ea)
                for (int eb = 0; eb < 6; ++eb) {
                    if (m.tet_edges[a][ea] != m.tet_edges[b][eb])
                        continue;
                    auto pr = vertex_pairs()[ea];
                    if (pr[0] == fa || pr[1] == fa)
                        continue;  // edge not on the shared face
                    Point3 ta = induced_tangent(m, a, fa, ea), tb = induced_tangent(m, b, fb, eb);
                    EXPECT_EQ(ta, Rational(-1) * tb) << name;
                }
        }
        EXPECT_GT(interior, 0u);
    }
}

TEST(GlobalSpace, DimensionsMatchClosedForms)
{
    TetMesh r = builtin_mesh("reftet");
    EXPECT_EQ(build_global_space(r, Family::neilan, 6).dimension, 360u);
    EXPECT_EQ(build_global_space(r, Family::hinc, 6).dimension, 504u);
    EXPECT_EQ(build_global_space(r, Family::huzhang, 6).dimension, 210u);
    EXPECT_EQ(build_global_space(r, Family::dgVector, 6).dimension, 60u);
    TetMesh t = builtin_mesh("twotet");
    EXPECT_EQ(build_global_space(t, Family::hinc, 6).dimension, 30u * 5 + 45 * 9 + 12 * 7 + 66 * 2);
    TetMesh c = builtin_mesh("cube6");
    EXPECT_EQ(build_global_space(c, Family::dgVector, 6).dimension, 360u);
    for (const auto* m : {&r, &t, &c})
        for (auto fam : {Family::neilan, Family::hinc, Family::huzhang}) {
            auto s = build_global_space(*m, fam, 7);
            EXPECT_EQ(s.dimension, expected_global_dimension(fam, 7, *m));
        }
    // single tet: the global space is the element
    EXPECT_EQ(expected_global_dimension(Family::hinc, 7, r), 720u);
    EXPECT_EQ(expected_global_dimension(Family::huzhang, 7, r), 336u);
    EXPECT_EQ(expected_global_dimension(Family::neilan, 7, r), 495u);
}

TEST(GlobalSpace, SharedDofsAreTheSameFunctionals)
{
    TetMesh m = builtin_mesh("twotet");
    for (auto fam : {Family::neilan, Family::hinc, Family::huzhang}) {
        auto rep = shared_dof_consistency(m, build_global_space(m, fam, 6));
        EXPECT_TRUE(rep.pass) << to_string(fam);
        EXPECT_GT(rep.shared_dofs, 0u);
    }
}

TEST(GlobalOperator, SingleTetDefKernelIsRigidMotions)
{
    TetMesh m = builtin_mesh("reftet");
    auto V = build_global_space(m, Family::neilan, 6);
    auto S = build_global_space(m, Family::hinc, 6);
    auto D = build_global_space(m, Family::huzhang, 6);
    auto Q = build_global_space(m, Family::dgVector, 6);
    auto def = global_operator(m, GlobalOp::def, V, S);
    auto inc = global_operator(m, GlobalOp::inc, S, D);
    auto div = global_operator(m, GlobalOp::div, D, Q);
    EXPECT_EQ(V.dimension - echelon(def.matrix).rank, 6u);
    EXPECT_TRUE((inc.matrix * def.matrix).triplets().empty());
    EXPECT_TRUE((div.matrix * inc.matrix).triplets().empty());
    EXPECT_EQ(echelon(div.matrix).rank, Q.dimension);

    // column j of def holds the hinc DOFs of def(phi_j): check against a direct interpolation
    VecPoly v(x() * x() * y(), y() * z() - x(), z() * z() * z() + c(2));
    auto coeffs = interpolate(m, V, v);
    auto direct = interpolate(m, S, apply_operator(NamedOp::def, v, m.cell(0)));
    std::vector<Rational> via(S.dimension);
    for (const auto& tr : def.matrix.triplets())
        via[tr.row] += tr.value * coeffs[tr.col];
    EXPECT_EQ(via, direct);
}

TEST(GlobalOperator, InconsistentFramesAreDetected)
{
    TetMesh m = builtin_mesh("twotet");
    auto V = build_global_space(m, Family::neilan, 6);
    auto S = build_global_space(m, Family::hinc, 6);
    // rebuild the second cell with frames that ignore the global vertex ids
    Simplex cell = m.cell(1);
    S.elements[1] = build_element(Family::hinc, 6, cell, default_frames(cell, {3, 2, 1, 0}));
    EXPECT_FALSE(shared_dof_consistency(m, S).pass);
    EXPECT_THROW(global_operator(m, GlobalOp::def, V, S), std::runtime_error);
}

TEST(DiscreteComplex, ReferenceTet)
{
    auto r = verify_discrete_complex(builtin_mesh("reftet"), 6);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.dims, (std::array<std::size_t, 4>{360, 504, 210, 60}));
    EXPECT_EQ(r.alternating_sum, 0);
    EXPECT_EQ(r.nullity_def, 6u);
    EXPECT_EQ(r.ranks[0].rank, 354u);
    EXPECT_EQ(r.ranks[1].rank, 150u);
    EXPECT_EQ(r.ranks[2].rank, 60u);
}

TEST(DiscreteComplex, TwoTetsBothRankMethods)
{
    TetMesh m = builtin_mesh("twotet");
    auto exact = verify_discrete_complex(m, 6, true);
    auto modular = verify_discrete_complex(m, 6, false);
    EXPECT_TRUE(exact.pass);
    EXPECT_TRUE(modular.pass);
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(exact.ranks[i].rank, modular.ranks[i].rank);
        EXPECT_TRUE(modular.ranks[i].exact);
    }
}

TEST(DiscreteComplex, KuhnCube)
{
    auto r = verify_discrete_complex(builtin_mesh("cube6"), 6);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.dims, (std::array<std::size_t, 4>{1218, 1707, 855, 360}));
}
