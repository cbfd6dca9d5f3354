#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "elascomplex/elements.hpp"

namespace elascomplex {

struct TetMesh {
    std::vector<Point3> vertices;
    std::vector<std::array<long, 4>> tets;
    // Derived entities; edges and faces store sorted global vertex ids.
    std::vector<std::array<long, 2>> edges;
    std::vector<std::array<long, 3>> faces;
    std::vector<std::array<long, 6>> tet_edges;  // local edge (vertex_pairs order) -> global edge
    std::vector<std::array<long, 4>> tet_faces;  // local face (opposite local vertex) -> global face
    std::vector<std::vector<long>> edge_tets, face_tets;
    // Global frames: t_e runs from the lower to the higher id, n_F from sorted ids.
    std::vector<EdgeFrame> edge_frames;
    std::vector<Point3> face_normals;

    std::size_t num_vertices() const { return vertices.size(); }
    std::size_t num_edges() const { return edges.size(); }
    std::size_t num_faces() const { return faces.size(); }
    std::size_t num_tets() const { return tets.size(); }
    long euler_characteristic() const;
    Simplex cell(std::size_t t) const;
    LocalFrames local_frames(std::size_t t) const;
};

// Builds the derived entities and frames; throws std::invalid_argument on degenerate
// or nonconforming input (duplicate vertices, repeated tets, a face in more than two
// tets, a vertex on the closure of a tet it does not belong to).
TetMesh make_mesh(std::vector<Point3> vertices, std::vector<std::array<long, 4>> tets);
// Lines "v x y z" (rationals "p/q" allowed) and "t i j k l" (0-based); '#' starts a comment.
TetMesh load_mesh(const std::string& text);
// "reftet", "twotet", "cube6"; throws std::invalid_argument otherwise.
TetMesh builtin_mesh(const std::string& name);
// Rebuilds the global frames by the vertex-id rule.
TetMesh assign_global_frames(TetMesh m);

// Tangent of edge `edge` (local) induced on local face `face` of tet t: counterclockwise
// seen from the outward normal of that tet.
Point3 induced_tangent(const TetMesh& m, std::size_t t, int face, int edge);

struct GlobalSpace {
    Family family = Family::hinc;
    int k = 0;
    std::array<std::size_t, 4> per_entity{};  // DOFs per vertex, edge, face, cell
    std::array<std::size_t, 4> offset{};      // start of each entity block
    std::size_t dimension = 0;
    std::vector<Element> elements;            // one per tet, built on global frames
    std::vector<std::vector<std::size_t>> local_to_global;

    std::size_t global_index(const TetMesh& m, std::size_t tet, const DofFunctional& d, std::size_t position) const;
};

// Closed-form global dimension from the entity counts.
std::size_t expected_global_dimension(Family family, int k, const TetMesh& m);
// Throws std::logic_error if the enumeration disagrees with the closed form.
GlobalSpace build_global_space(const TetMesh& m, Family family, int k);

// Shared entity DOFs are the same functionals in every adjacent cell.
struct ConsistencyReport {
    std::size_t shared_dofs = 0, mismatches = 0;
    bool pass = false;
};
ConsistencyReport shared_dof_consistency(const TetMesh& m, const GlobalSpace& s);

enum class GlobalOp { def, inc, div };
std::string to_string(GlobalOp op);

struct GlobalOperator {
    GlobalOp op = GlobalOp::def;
    SparseRationalMatrix matrix;         // rows: target DOFs, cols: source DOFs
    std::size_t two_sided_checks = 0;    // (row, col) pairs evaluated from more than one cell
    std::size_t two_sided_mismatches = 0;
};
// Column j holds the target DOFs of op(phi_j), phi_j the global nodal basis function.
// Throws std::runtime_error if two cells disagree on a shared target DOF.
GlobalOperator global_operator(const TetMesh& m, GlobalOp op, const GlobalSpace& from, const GlobalSpace& to);

// Global DOF vector of a polynomial field (the same on every cell).
std::vector<Rational> interpolate(const TetMesh& m, const GlobalSpace& s, const Field& f);

struct RankCertificate {
    std::size_t rank = 0;
    bool exact = false;  // by elimination over Q
    std::string method;
};

struct DiscreteComplexReport {
    int k = 0;
    std::array<std::size_t, 4> dims{};      // V, Sigma_inc, Sigma_div, Q
    std::array<std::size_t, 4> expected{};
    std::array<RankCertificate, 3> ranks;   // def, inc, div
    bool compositions_zero = false;
    std::size_t rm_kernel = 0;              // independent rigid motions killed by def
    std::size_t nullity_def = 0;
    long alternating_sum = 0;               // 6 - V + Sigma_inc - Sigma_div + Q
    std::size_t two_sided_mismatches = 0;
    bool shared_dofs_consistent = false;
    std::vector<std::string> notes;
    bool pass = false;
};
// Ranks come from exact sparse elimination when `exact_ranks`, otherwise from modular
// ranks (lower bounds over Q) that meet upper bounds implied by the exact compositions
// and the exact rigid-motion kernel.
DiscreteComplexReport verify_discrete_complex(const TetMesh& m, int k, bool exact_ranks = true);

}  // namespace elascomplex
