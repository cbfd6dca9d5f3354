#include "elascomplex/frames.hpp"

#include <stdexcept>

namespace elascomplex {

FaceFrame::FaceFrame(const Simplex& face, std::optional<Point3> normal) : face_(face)
{
    if (face.dim() != 2)
        throw std::invalid_argument("face frame needs a triangle");
    const auto& v = face.vertices();
    t_ = {v[1] - v[0], v[2] - v[0]};
    Point3 natural = cross(t_[0], t_[1]);
    n_ = normal.value_or(natural);
    if (!parallel(n_, natural) || is_zero(n_))
        throw std::invalid_argument("face normal is not normal to the face");
    Rational nn = dot(n_, n_);
    P_ = identity_mat3();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            P_[i][j] -= n_[i] * n_[j] / nn;
    Rational g11 = dot(t_[0], t_[0]), g12 = dot(t_[0], t_[1]), g22 = dot(t_[1], t_[1]);
    Rational det = g11 * g22 - g12 * g12;
    d_[0] = (g22 / det) * t_[0] - (g12 / det) * t_[1];
    d_[1] = (g11 / det) * t_[1] - (g12 / det) * t_[0];
    std::array<int, 3> order = dot(natural, n_) > 0 ? std::array<int, 3>{0, 1, 2} : std::array<int, 3>{0, 2, 1};
    for (int e = 0; e < 3; ++e) {
        int a = order[e], b = order[(e + 1) % 3];
        FaceEdge fe;
        fe.vertices = {a, b};
        fe.start = v[a];
        fe.end = v[b];
        fe.t = v[b] - v[a];
        fe.nfe = cross(fe.t, n_);
        edges_[e] = fe;
    }
}

FaceFrame FaceFrame::flipped() const
{
    return FaceFrame(face_, Rational(-1) * n_);
}

EdgeFrame EdgeFrame::from_rule(const Point3& start, const Point3& end)
{
    EdgeFrame f{Simplex({start, end}), end - start, {}, {}};
    for (int a = 0; a < 3; ++a) {
        Point3 ax = unit_vector(a);
        if (!parallel(f.t, ax)) {
            f.n1 = cross(f.t, ax);
            break;
        }
    }
    f.n2 = cross(f.t, f.n1);
    return f;
}

VecPoly surface_grad(const Polynomial& p, const FaceFrame& f)
{
    VecPoly g = gradient(p);
    VecPoly r(p.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (f.P()[i][j] != 0)
                r[i] += f.P()[i][j] * g[j];
    return r;
}

VecPoly perp_grad(const Polynomial& p, const FaceFrame& f)
{
    return cross(f.n(), gradient(p));
}

MatPoly surface_hess(const Polynomial& p, const FaceFrame& f)
{
    return matmul(matmul(f.P(), hessian(p)), f.P());
}

MatPoly surface_grad(const VecPoly& v, const FaceFrame& f)
{
    return matmul(f.P(), grad(v));
}

MatPoly curl_F(const VecPoly& v, const FaceFrame& f)
{
    // (n x grad)_j v_i = sum_kl eps_jkl n_k d_l v_i, i.e. the transpose of n x (grad v)
    return transpose(cross_left(f.n(), grad(v)));
}

MatPoly sym_curl_F(const VecPoly& v, const FaceFrame& f)
{
    return sym(curl_F(v, f));
}

MatPoly def_F(const VecPoly& w, const FaceFrame& f)
{
    return sym(surface_grad(w, f));
}

VecPoly div_F(const MatPoly& m, const FaceFrame& f)
{
    VecPoly r(m.nvars());
    for (int i = 0; i < 3; ++i) {
        VecPoly row(m(i, 0), m(i, 1), m(i, 2));
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l)
                if (f.P()[j][l] != 0)
                    r[i] += f.P()[j][l] * derive(row[j], l);
    }
    return r;
}

Polynomial div_F(const VecPoly& v, const FaceFrame& f)
{
    Polynomial r(v.nvars());
    for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
            if (f.P()[j][l] != 0)
                r += f.P()[j][l] * derive(v[j], l);
    return r;
}

Polynomial divdiv_F(const MatPoly& m, const FaceFrame& f)
{
    return div_F(div_F(m, f), f);
}

VecPoly rot_F(const MatPoly& m, const FaceFrame& f)
{
    VecPoly r(m.nvars());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r[i] += perp_grad(m(i, j), f)[j];
    return r;
}

Polynomial rot_F(const VecPoly& v, const FaceFrame& f)
{
    return dot(f.n(), curl(v));
}

VecPoly perp_div_cols(const MatPoly& m, const FaceFrame& f)
{
    VecPoly r(m.nvars());
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            r[j] += perp_grad(m(i, j), f)[i];
    return r;
}

VecPoly face_position(const FaceFrame& f)
{
    VecPoly x = VecPoly::position(f.origin());
    VecPoly r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (f.P()[i][j] != 0)
                r[i] += f.P()[i][j] * x[j];
    return r;
}

VecPoly face_position_perp(const FaceFrame& f)
{
    return cross(f.n(), VecPoly::position(f.origin()));
}

}  // namespace elascomplex
