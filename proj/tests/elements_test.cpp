#include <gtest/gtest.h>

#include "elascomplex/elements.hpp"
#include "elascomplex/parallel.hpp"
#include "elascomplex/sampling.hpp"
#include "test_support.hpp"

using namespace elascomplex;
using namespace testsupport;

namespace {

std::size_t hinc_edge(int k) { return 14 * (k - 3) + 3; }
std::size_t hinc_face(int k) { return 3 * (k - 3) * (k - 4) - 6; }
std::size_t hinc_cell(int k) { return k * k * k - 6 * k * k + 11 * k; }

const Element& hinc6()
{
    static const Element e = build_element(Family::hinc, 6, reference_tet());
    return e;
}

}  // namespace

TEST(ElementCounts, HincPerEntityMatchesTally)
{
    for (int k : {6, 7}) {
        Element e = k == 6 ? hinc6() : build_element(Family::hinc, k, reference_tet());
        for (int v = 0; v < 4; ++v)
            EXPECT_EQ(e.entity_count(EntityType::vertex, v), 30u);
        for (int ed = 0; ed < 6; ++ed)
            EXPECT_EQ(e.entity_count(EntityType::edge, ed), hinc_edge(k));
        for (int f = 0; f < 4; ++f)
            EXPECT_EQ(e.entity_count(EntityType::face, f), hinc_face(k));
        EXPECT_EQ(e.total_count(EntityType::cell), hinc_cell(k));
        EXPECT_EQ(e.dofs.size(), e.shape.size());
        EXPECT_EQ(e.dofs.size(), static_cast<std::size_t>((k + 1) * (k + 2) * (k + 3)));
    }
    const Element& e = hinc6();
    EXPECT_EQ(e.total_count(EntityType::vertex), 120u);
    EXPECT_EQ(e.total_count(EntityType::edge), 270u);
    EXPECT_EQ(e.total_count(EntityType::face), 48u);
    auto fam = e.family_counts();
    EXPECT_EQ(fam["cell.inc"] + fam["cell.sym_qx"], 66u);
    EXPECT_EQ(fam["cell.inc"], 6u);
    EXPECT_EQ(fam.count("face.tr1.hess"), 0u);  // hess of P1 vanishes
}

TEST(ElementCounts, NeilanHuZhangDg)
{
    Element n = build_element(Family::neilan, 6, reference_tet());
    EXPECT_EQ(n.dofs.size(), 360u);
    EXPECT_EQ(n.total_count(EntityType::vertex), 120u);
    EXPECT_EQ(n.total_count(EntityType::edge), 144u);
    EXPECT_EQ(n.total_count(EntityType::face), 36u);
    EXPECT_EQ(n.total_count(EntityType::cell), 60u);
    Element h = build_element(Family::huzhang, 6, reference_tet());
    EXPECT_EQ(h.dofs.size(), 210u);
    EXPECT_EQ(h.total_count(EntityType::vertex), 24u);
    EXPECT_EQ(h.total_count(EntityType::edge), 90u);
    EXPECT_EQ(h.total_count(EntityType::face), 36u);
    EXPECT_EQ(h.total_count(EntityType::cell), 60u);
    EXPECT_EQ(build_element(Family::dgVector, 6, reference_tet()).dofs.size(), 60u);
}

TEST(ElementCounts, BelowThresholdThrows)
{
    EXPECT_THROW(build_element(Family::hinc, 5, reference_tet()), std::invalid_argument);
    EXPECT_THROW(build_element(Family::neilan, 5, reference_tet()), std::invalid_argument);
    EXPECT_THROW(family_from_string("argyris"), std::invalid_argument);
    EXPECT_EQ(family_from_string("huzhang"), Family::huzhang);
}

TEST(ApplyDof, Examples)
{
    const Element& e = hinc6();
    // vertex 0 of the reference tet is the origin; first value DOF reads the (0,0) entry
    MatPoly xe11;
    xe11(0, 0) = x();
    EXPECT_EQ(apply_dof(e.dofs[0], xe11, e), 0);
    MatPoly ce11;
    ce11(0, 0) = c(1);
    EXPECT_EQ(apply_dof(e.dofs[0], ce11, e), 1);

    // inc(z^2 e1 e1^T) = -2 e2 e2^T, read by the vertex inc DOF in the (2,2) slot
    MatPoly z2;
    z2(0, 0) = z() * z();
    std::vector<Rational> inc_vals;
    for (const auto& d : e.dofs)
        if (d.kind == DofKind::pointIncValue && d.entity_index == 3)
            inc_vals.push_back(apply_dof(d, z2, e));
    ASSERT_EQ(inc_vals.size(), 6u);
    // kSymComponents order: 11, 22, 33, 23, 13, 12
    EXPECT_EQ(inc_vals, (std::vector<Rational>{0, -2, 0, 0, 0, 0}));
}

TEST(ApplyDof, EdgeMomentOfConstantIsComponentwise)
{
    const Element& e = hinc6();
    Mat3 E{{{frac(1, 2), 2, 3}, {2, -1, frac(5, 3)}, {3, frac(5, 3), 7}}};
    MatPoly ep = MatPoly::constant(E);
    // first six edge.value DOFs per power block: s^0 against each sym_unit
    std::vector<Rational> vals;
    for (const auto& d : e.dofs)
        if (d.family == "edge.value" && d.entity_index == 0)
            vals.push_back(apply_dof(d, ep, e));
    ASSERT_EQ(vals.size(), 18u);  // 6 components x P2(e)
    for (int c2 = 0; c2 < 6; ++c2) {
        Mat3 u = sym_unit(c2);
        Rational contraction = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                contraction += u[i][j] * E[i][j];
        EXPECT_EQ(vals[3 * c2], contraction);
        EXPECT_EQ(vals[3 * c2 + 1], contraction / 2);  // mean of s
        EXPECT_EQ(vals[3 * c2 + 2], contraction / 3);  // mean of s^2
    }
}

TEST(ApplyDof, MatrixMatchesSingleEvaluation)
{
    Sampler s(11);
    Element e = build_element(Family::huzhang, 6, s.tet());
    auto m = dof_matrix(e);
    for (std::size_t j : {0u, 17u, 133u, 209u})
        for (std::size_t i : {0u, 40u, 99u, 150u, 200u})
            EXPECT_EQ(m(i, j), apply_dof(e.dofs[i], e.shape.elements()[j], e));
}

TEST(Unisolvence, ReferenceTet)
{
    for (auto fam : {Family::hinc, Family::huzhang, Family::neilan, Family::dgVector}) {
        Element e = fam == Family::hinc ? hinc6() : build_element(fam, 6, reference_tet());
        auto r = check_unisolvence(e);
        EXPECT_TRUE(r.pass) << to_string(fam);
        EXPECT_EQ(r.rank, e.shape.size());
        EXPECT_FALSE(r.kernel_witness);
    }
}

TEST(Unisolvence, RandomTets)
{
    Sampler s(2024);
    for (int trial = 0; trial < 3; ++trial) {
        Simplex tet = s.tet();
        for (auto fam : {Family::hinc, Family::huzhang, Family::neilan})
            EXPECT_TRUE(check_unisolvence(build_element(fam, 6, tet)).pass) << to_string(fam) << " " << trial;
    }
}

TEST(Unisolvence, FrameChoiceDoesNotMatter)
{
    Simplex tet = reference_tet();
    Element e = build_element(Family::hinc, 6, tet, default_frames(tet, {7, 2, 9, 4}));
    EXPECT_TRUE(check_unisolvence(e).pass);
}

TEST(Unisolvence, DroppedFamilyYieldsKernelWitness)
{
    const Element& e = hinc6();
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < e.dofs.size(); ++i)
        if (!(e.dofs[i].family == "face.tr2.sym_curl" && e.dofs[i].entity_index == 1))
            keep.push_back(i);
    auto r = check_unisolvence(e, keep);
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(e.shape.size() - r.rank, 3u);
    ASSERT_TRUE(r.kernel_witness);
    // the witness is nonzero and killed by every kept DOF
    auto m = dof_matrix(e, {*r.kernel_witness}, keep);
    EXPECT_TRUE(m.is_zero());
    auto all = dof_matrix(e, {*r.kernel_witness});
    EXPECT_FALSE(all.is_zero());
}

TEST(Determination, FaceTracesOnEachFace)
{
    for (int f = 0; f < 4; ++f) {
        auto r = trace_determination_check(hinc6(), f);
        EXPECT_TRUE(r.pass) << f;
        EXPECT_FALSE(r.counterexample);
        EXPECT_EQ(r.closure_dofs, 3 * 30 + 3 * 45 + 12u);
    }
}

TEST(Determination, EdgeTracesOnEachEdge)
{
    Sampler s(5);
    Element e = build_element(Family::hinc, 6, s.tet());
    for (int ed = 0; ed < 6; ++ed)
        EXPECT_TRUE(edge_trace_determination_check(e, ed).pass) << ed;
}

TEST(Determination, IncBubblesHaveVanishingBoundaryDofs)
{
    const Element& e = hinc6();
    auto b = bubble_basis(BubbleKind::incFull, 6, e.cell);
    std::vector<std::size_t> boundary;
    for (std::size_t i = 0; i < e.dofs.size(); ++i)
        if (e.dofs[i].entity != EntityType::cell)
            boundary.push_back(i);
    EXPECT_TRUE(dof_matrix(e, b.basis, boundary).is_zero());
    // and the volume DOFs alone are unisolvent on the bubble space
    std::vector<std::size_t> cell;
    for (std::size_t i = 0; i < e.dofs.size(); ++i)
        if (e.dofs[i].entity == EntityType::cell)
            cell.push_back(i);
    EXPECT_EQ(rank(dof_matrix(e, b.basis, cell)), 66u);
}

TEST(Mutation, EachFaceFamilyIsNeeded)
{
    auto res = mutation_test(hinc6());
    EXPECT_EQ(res.size(), 12u);  // 4 faces x 3 non-empty families at k = 6
    for (const auto& m : res) {
        EXPECT_TRUE(m.pass) << m.face << " " << m.family;
        EXPECT_EQ(m.kernel_dimension, m.dropped);
    }
}

TEST(DofMatrix, ThreadCountDoesNotChangeEntries)
{
    Sampler s(9);
    Element e = build_element(Family::neilan, 6, s.tet());
    set_thread_count(1);
    auto serial = dof_matrix(e);
    set_thread_count(3);
    auto threaded = dof_matrix(e);
    set_thread_count(0);
    EXPECT_EQ(serial, threaded);
}
