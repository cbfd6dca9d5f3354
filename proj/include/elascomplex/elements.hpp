#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elascomplex/facetrace.hpp"

namespace elascomplex {

enum class DofKind { pointValue, pointGradient, pointHessian, pointIncValue, edgeMoment, faceMoment, volumeMoment };
enum class EntityType { vertex, edge, face, cell };
std::string to_string(DofKind k);
std::string to_string(EntityType t);

// Field a DOF acts on, derived from the shape function.
enum class DofField {
    value,
    partial,            // d_{axes[0]}
    partial2,           // d_{axes[0]} d_{axes[1]}
    inc,
    curl_t,             // (curl tau) . direction
    normal_derivative,  // d_direction
    tr1,                // on local face `face`
    tr2,
    normal_trace        // tau . n_face
};

struct DofFunctional {
    DofKind kind = DofKind::pointValue;
    EntityType entity = EntityType::vertex;
    int entity_index = 0;  // local vertex, edge, face index (0 for the cell)
    std::string family;    // e.g. "vertex.grad", "face.tr2.sym_curl"
    DofField field = DofField::value;
    std::array<int, 2> axes{0, 0};
    Point3 direction{0, 0, 0};
    int face = -1;
    // Linear functional on the coefficients of the transformed field (components
    // row-major, global monomials up to the shape degree).
    std::vector<Rational> functional;
};

// Edge e joins local vertices vertex_pairs()[e]; face f is opposite local vertex f.
// Frames fix the edge orientation/normals and the face vertex order (hence n_F and
// the face test coordinates); cells sharing an entity must use identical frames.
struct LocalFrames {
    std::array<EdgeFrame, 6> edges;
    std::array<Simplex, 4> faces;
};

// Frames from global vertex ids: edges run from the lower to the higher id,
// face vertices are sorted by id and n_F = (v1 - v0) x (v2 - v0).
LocalFrames default_frames(const Simplex& cell, const std::array<long, 4>& global_ids = {0, 1, 2, 3});

enum class Family { hinc, huzhang, neilan, dgVector };
std::string to_string(Family f);
Family family_from_string(const std::string& name);
// Shape degree for complex index k: hinc k, neilan k+1, huzhang k-2, dgVector k-3.
int shape_degree(Family f, int k);

struct Element {
    Family family = Family::hinc;
    int k = 0;
    Simplex cell;
    LocalFrames frames;
    std::array<FaceFrame, 4> face_frames;
    SpaceBasis shape;
    std::vector<DofFunctional> dofs;

    std::map<std::string, std::size_t> family_counts() const;
    // DOFs on one entity (e.g. entity_count(EntityType::edge, 2)).
    std::size_t entity_count(EntityType t, int index) const;
    std::size_t total_count(EntityType t) const;
};

// Throws std::invalid_argument below the degree threshold (k >= 6, dgVector k >= 3).
Element build_element(Family family, int k, const Simplex& cell, const LocalFrames& frames);
Element build_element(Family family, int k, const Simplex& cell);

Field transform_field(const DofFunctional& d, const Field& f, const Element& e);
Rational apply_dof(const DofFunctional& d, const Field& f, const Element& e);
// Entry (i,j) = dof_i(shape_j); `fields` defaults to the shape basis.
RationalMatrix dof_matrix(const Element& e, const std::vector<std::size_t>& rows = {});
RationalMatrix dof_matrix(const Element& e, const std::vector<Field>& fields, const std::vector<std::size_t>& rows = {});

struct UnisolvenceReport {
    std::size_t dofs = 0, dimension = 0, rank = 0;
    bool pass = false;
    std::optional<Field> kernel_witness;  // nonzero shape function killed by every DOF
};
UnisolvenceReport check_unisolvence(const Element& e, const std::vector<std::size_t>& rows = {});

// Indices of the DOFs attached to the closure of a local face or edge.
std::vector<std::size_t> face_closure_dofs(const Element& e, int face);
std::vector<std::size_t> edge_closure_dofs(const Element& e, int edge);

struct DeterminationReport {
    bool pass = false;
    std::size_t closure_dofs = 0, closure_rank = 0;
    std::optional<Field> counterexample;
};
// Shape functions with vanishing face-closure DOFs have tr1 = tr2 = 0 on the face.
DeterminationReport trace_determination_check(const Element& e, int face);
// For hinc: vertex and edge DOFs on the edge determine tau|_e and (curl tau).t|_e.
DeterminationReport edge_trace_determination_check(const Element& e, int edge);

struct MutationResult {
    int face = 0;
    std::string family;
    std::size_t dropped = 0, kernel_dimension = 0;
    bool pass = false;  // kernel dimension equals the dropped count
};
// Drops each non-empty face DOF family on each face in turn.
std::vector<MutationResult> mutation_test(const Element& e);

}  // namespace elascomplex
