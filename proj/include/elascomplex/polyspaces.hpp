#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "elascomplex/frames.hpp"
#include "elascomplex/linalg.hpp"

namespace elascomplex {

using Field = std::variant<Polynomial, VecPoly, MatPoly>;

enum class Codomain { scalar, vec3, vec2, sym3, sym2, mat3 };
std::string to_string(Codomain c);

struct SpaceSpec {
    int degree = 0;
    Simplex domain;  // tetrahedron (3D spaces) or triangle (2D spaces on a face)
    Codomain codomain = Codomain::scalar;
};

// C(k+d, d) times the number of components.
std::size_t expected_dimension(const SpaceSpec& spec);

class SpaceBasis {
public:
    SpaceBasis() = default;
    explicit SpaceBasis(SpaceSpec spec);

    const SpaceSpec& spec() const { return spec_; }
    const std::vector<Field>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool is_2d() const { return spec_.domain.dim() == 2; }
    const FaceFrame& frame() const { return frame_; }

    // Coordinates of f in this basis; nullopt when f is not in the span.
    std::optional<std::vector<Rational>> coordinates(const Field& f) const;
    Field combine(const std::vector<Rational>& coeffs) const;

private:
    SpaceSpec spec_;
    FaceFrame frame_;
    std::vector<Field> elements_;
    std::vector<Monomial> monomials_;
};

SpaceBasis build_basis(const SpaceSpec& spec);

enum class NamedOp {
    grad, curl, div, def, inc, div_sym,
    koszul_dot_x, koszul_x_cross, koszul_sym_vx, pi_RM,
    sym_curl_F, divdiv_F, hess_F, rot_F,
    dot_x_perp, xxT, x_tau_x, sym_x_perp_v
};
std::string to_string(NamedOp op);

// Applies op on the domain of the basis (Koszul center = domain center, face frame for 2D ops).
Field apply_operator(NamedOp op, const Field& f, const Simplex& domain);

struct OperatorMatrix {
    NamedOp op;
    SpaceSpec from, to;
    RationalMatrix entries;  // columns: images of from-basis in to-basis coordinates
};

// Throws std::domain_error when an image leaves the target span.
OperatorMatrix operator_matrix(NamedOp op, const SpaceBasis& from, const SpaceBasis& to);

// ---- exactness by rank-nullity ----

struct SlotReport {
    std::string space;
    std::size_t dim = 0;
    std::size_t rank_in = 0;      // rank of the incoming map (or the included kernel)
    std::size_t nullity_out = 0;  // nullity of the outgoing map (or quotient dimension at the end)
    bool pass = false;
};

struct ExactnessReport {
    std::string name;
    int k = 0;
    std::vector<SlotReport> slots;
    bool compositions_zero = false;
    std::vector<std::string> notes;  // failure diagnostics
    bool pass = false;
};

// A space in a sequence: a basis (independent fields) with injective ambient coordinates.
struct SequenceSpace {
    std::string name;
    std::vector<Field> basis;
    std::function<std::vector<Rational>(const Field&)> coords;
    bool is_subspace = false;  // images must be checked to lie in span(basis)
};

struct SequenceSpec {
    std::string name;
    int k = 0;
    std::vector<SequenceSpace> spaces;
    std::vector<std::function<Field(const Field&)>> maps;  // maps[i]: spaces[i] -> spaces[i+1]
    std::vector<Field> start_kernel;  // spans the kernel of the first map
    std::vector<Field> end_quotient;  // last space is taken modulo this span
};

ExactnessReport verify_sequence(const SequenceSpec& seq);

// polyDeRham | polyElasticity | koszulElasticity | divdiv2D | hessian2D
ExactnessReport verify_complex(const std::string& name, int k, const Simplex& domain);
int complex_min_degree(const std::string& name);

struct DecompositionReport {
    std::string name;
    int k = 0;
    std::size_t dim_a = 0, dim_b = 0, dim_total = 0, rank_stacked = 0;
    bool pass = false;
};

// 3D: P_vec_RM | P_sym_defKoszul | P_sym_incSym | div_sym_bijective
// 2D: divdiv_vec_RT | divdiv_sym | divdiv_bijective | hess_scalar_P1 | hess_sym | rot_bijective
DecompositionReport verify_decomposition(const std::string& name, int k, const Simplex& domain);

bool radial_kernel_check(int k, const Rational& ell, const Point3& center = {0, 0, 0});

// Helpers shared with the trace/bubble code.
std::vector<Rational> field_coordinates(const Field& f, int max_degree, bool symmetric);
Simplex reference_tet();
Simplex reference_triangle();

}  // namespace elascomplex
