#pragma once

#include <array>
#include <string>
#include <vector>

#include "elascomplex/polyspaces.hpp"

namespace elascomplex {

// n x tau x n
MatPoly tr1(const MatPoly& t, const FaceFrame& f);

enum class Tr2Form {
    primary,    // Pi (tau x grad) x n + grad_F (n . tau Pi)
    def_form,   // 2 def_F (n . tau Pi) - Pi d_n tau Pi
    curl_form,  // n x (curl tau) Pi + (Pi tau . n) grad_F
    sym_form    // sym(n x (curl tau) Pi + grad_F (n . tau Pi))
};
MatPoly tr2(const MatPoly& t, const FaceFrame& f, Tr2Form form = Tr2Form::primary);

// Face i is opposite vertex i, vertices in increasing local order, outward normal.
std::array<FaceFrame, 4> outward_faces(const Simplex& k);
std::vector<Polynomial> face_barycentric(const FaceFrame& f);

// Sum of squared coefficients of f restricted to the simplex s (zero iff f vanishes on s).
Rational restricted_norm2(const Field& f, const Simplex& s);
// Coefficients of every entry of f pulled back to the simplex parameters (degree <= max_deg).
std::vector<Rational> restricted_coordinates(const Field& f, const Simplex& s, int max_deg);

// LHS - RHS of the symmetric Green's identity for inc on K.
Rational greens_inc_residual(const MatPoly& s, const MatPoly& t, const Simplex& k);
// LHS - RHS of the Green's identity for div_F div_F on the face of f, vertex terms included.
Rational greens_divdiv_residual(const MatPoly& t, const Polynomial& v, const FaceFrame& f);

enum class TraceIdentity { defTr1, defTr2, incTr1, incTr2, edgeTT, edgeDivDiv, edgeTr2 };
std::string to_string(TraceIdentity id);
TraceIdentity trace_identity_from_string(const std::string& name);

// Squared-coefficient residual of the identity, restricted to the face (or to the edge
// `edge` of the face for the edge identities). defTr* take a VecPoly, the rest a symmetric MatPoly.
Rational trace_commutation_check(TraceIdentity which, const Field& input, const FaceFrame& f, int edge = 0);

// sym(n_k n_l^T) for the pair (i,j), {k,l} the other two vertices; pairs in lexicographic order.
std::array<Mat3, 6> normal_pair_tensors(const Simplex& k);
std::array<std::array<int, 2>, 6> vertex_pairs();

enum class BubbleKind { tt, incFull, divNormal, divdiv2D, hessian2D };
std::string to_string(BubbleKind kind);

struct BubbleBasis {
    BubbleKind kind;
    int k = 0;
    std::vector<Field> basis;
    std::size_t expected = 0;         // closed-form dimension
    std::size_t kernel_dimension = 0;  // nullity of the defining trace map on the full space
};

// tt, incFull, divNormal on a tetrahedron (degree k); divdiv2D (degree k) and
// hessian2D (degree k-1, matching its bubble complex) on a triangle.
BubbleBasis bubble_basis(BubbleKind kind, int k, const Simplex& domain);

// elasticity | divdiv2D | hessian2D
ExactnessReport verify_bubble_complex(const std::string& name, int k, const Simplex& domain);

}  // namespace elascomplex
