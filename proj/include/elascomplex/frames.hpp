#pragma once

#include <array>
#include <optional>

#include "elascomplex/simplex.hpp"

namespace elascomplex {

// Edge of a face with the orientation induced by the face normal.
struct FaceEdge {
    std::array<int, 2> vertices;  // local face vertex indices, start then end
    Point3 start, end;
    Point3 t;    // end - start
    Point3 nfe;  // t x n, points out of the face
};

class FaceFrame {
public:
    FaceFrame() = default;
    // n defaults to (v1 - v0) x (v2 - v0); a given normal must be parallel to it.
    explicit FaceFrame(const Simplex& face, std::optional<Point3> normal = std::nullopt);

    const Simplex& face() const { return face_; }
    const Point3& n() const { return n_; }
    Rational nn() const { return dot(n_, n_); }
    const Mat3& P() const { return P_; }
    const Point3& origin() const { return face_.center(); }
    // In-plane basis t1 = v1 - v0, t2 = v2 - v0 and its dual basis d1, d2.
    const Point3& t(int a) const { return t_[a]; }
    const Point3& d(int a) const { return d_[a]; }
    const std::array<FaceEdge, 3>& edges() const { return edges_; }
    // Same face with the normal reversed.
    FaceFrame flipped() const;

private:
    Simplex face_;
    Point3 n_;
    Mat3 P_;
    std::array<Point3, 2> t_, d_;
    std::array<FaceEdge, 3> edges_;
};

struct EdgeFrame {
    Simplex edge;
    Point3 t, n1, n2;
    // t = end - start, n1 = t x a (a the first axis not parallel to t), n2 = t x n1.
    static EdgeFrame from_rule(const Point3& start, const Point3& end);
};

// ---- surface calculus; n enters unnormalized ----
VecPoly surface_grad(const Polynomial& p, const FaceFrame& f);           // Pi grad p
VecPoly perp_grad(const Polynomial& p, const FaceFrame& f);              // n x grad p
MatPoly surface_hess(const Polynomial& p, const FaceFrame& f);           // Pi (grad grad p) Pi
MatPoly surface_grad(const VecPoly& v, const FaceFrame& f);              // (i,j) = (Pi grad)_i v_j
MatPoly curl_F(const VecPoly& v, const FaceFrame& f);                    // (i,j) = (n x grad)_j v_i
MatPoly sym_curl_F(const VecPoly& v, const FaceFrame& f);
MatPoly def_F(const VecPoly& w, const FaceFrame& f);                     // sym (Pi grad) w
VecPoly div_F(const MatPoly& m, const FaceFrame& f);                     // (m . grad_F)_i
Polynomial div_F(const VecPoly& v, const FaceFrame& f);
Polynomial divdiv_F(const MatPoly& m, const FaceFrame& f);
VecPoly rot_F(const MatPoly& m, const FaceFrame& f);                     // m . (n x grad)
Polynomial rot_F(const VecPoly& v, const FaceFrame& f);                  // n . curl v
// Column-wise perp divergence: (grad_F^perp . m)_j = sum_i (n x grad)_i m_ij
VecPoly perp_div_cols(const MatPoly& m, const FaceFrame& f);
// Tangential position Pi (x - x_c) and its rotation n x (x - x_c).
VecPoly face_position(const FaceFrame& f);
VecPoly face_position_perp(const FaceFrame& f);

}  // namespace elascomplex
