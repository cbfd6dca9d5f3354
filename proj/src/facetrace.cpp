#include "elascomplex/facetrace.hpp"

#include <stdexcept>

namespace elascomplex {

namespace {

MatPoly project_both(const MatPoly& m, const Mat3& p)
{
    return matmul(matmul(p, m), p);
}

VecPoly project(const Mat3& p, const VecPoly& v)
{
    VecPoly out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (p[i][j] != 0)
                out[i] += p[i][j] * v[j];
    return out;
}

std::vector<Point3> simplex_dirs(const Simplex& s)
{
    std::vector<Point3> dirs;
    for (int i = 1; i <= s.dim(); ++i)
        dirs.push_back(s.vertex(i) - s.vertex(0));
    return dirs;
}

Rational norm2(const Polynomial& p, const Simplex& s)
{
    Rational acc = 0;
    for (const auto& [m, c] : compose_affine(p, s.vertex(0), simplex_dirs(s)).terms())
        acc += c * c;
    return acc;
}

Simplex edge_simplex(const FaceEdge& e)
{
    return Simplex({e.start, e.end});
}

std::vector<Rational> restriction_coords(const Polynomial& p, const Simplex& s, int max_deg)
{
    int d = s.dim();
    Polynomial r = compose_affine(p, s.vertex(0), simplex_dirs(s));
    std::vector<Rational> out(monomial_count(max_deg, d));
    if (r.degree() > max_deg)
        throw std::domain_error("restricted degree exceeds coordinate range");
    for (const auto& [m, c] : r.terms())
        out[monomial_index(m, d)] = c;
    return out;
}

void append(std::vector<Rational>& a, const std::vector<Rational>& b)
{
    a.insert(a.end(), b.begin(), b.end());
}

// Coefficients of the restriction of every entry of a field.
std::vector<Rational> field_restriction(const Field& f, const Simplex& s, int max_deg)
{
    std::vector<Rational> out;
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Polynomial>) {
                append(out, restriction_coords(g, s, max_deg));
            } else if constexpr (std::is_same_v<T, VecPoly>) {
                for (int i = 0; i < 3; ++i)
                    append(out, restriction_coords(g[i], s, max_deg));
            } else {
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        append(out, restriction_coords(g(i, j), s, max_deg));
            }
        },
        f);
    return out;
}

// Matrix whose columns are the stacked constraint values of each basis element.
RationalMatrix constraint_matrix(const std::vector<Field>& basis,
                                 const std::function<std::vector<Rational>(const Field&)>& rows)
{
    std::vector<std::vector<Rational>> cols;
    for (const auto& b : basis)
        cols.push_back(rows(b));
    return from_columns(cols, cols.empty() ? 0 : cols[0].size());
}

std::vector<Field> kernel_fields(const std::vector<Field>& basis, const RationalMatrix& m)
{
    RationalMatrix ker = kernel(m);
    std::vector<Field> out;
    for (std::size_t j = 0; j < ker.cols(); ++j) {
        Field acc = std::visit([](const auto& g) -> Field { return std::decay_t<decltype(g)>(3); }, basis[0]);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const Rational& c = ker(i, j);
            if (c == 0)
                continue;
            std::visit([&](auto& a) { a += c * std::get<std::decay_t<decltype(a)>>(basis[i]); }, acc);
        }
        out.push_back(acc);
    }
    return out;
}

std::size_t binomial(int n, int k)
{
    if (k < 0 || n < k)
        return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

}  // namespace

MatPoly tr1(const MatPoly& t, const FaceFrame& f)
{
    return cross_right(cross_left(f.n(), t), f.n());
}

MatPoly tr2(const MatPoly& t, const FaceFrame& f, Tr2Form form)
{
    const Point3& n = f.n();
    const Mat3& p = f.P();
    VecPoly n_tau_pi = project(p, dot_left(n, t));
    switch (form) {
    case Tr2Form::primary:
        return matmul(p, cross_right(cross_nabla_rows(t), n)) + surface_grad(n_tau_pi, f);
    case Tr2Form::def_form:
        return Rational(2) * def_F(n_tau_pi, f) - project_both(directional(t, n), p);
    case Tr2Form::curl_form: {
        VecPoly pi_tau_n = project(p, dot_right(t, n));
        return matmul(cross_left(n, curl_cols(t)), p) + transpose(surface_grad(pi_tau_n, f));
    }
    case Tr2Form::sym_form:
        return sym(matmul(cross_left(n, curl_cols(t)), p) + surface_grad(n_tau_pi, f));
    }
    throw std::logic_error("unknown tr2 form");
}

std::array<FaceFrame, 4> outward_faces(const Simplex& k)
{
    if (k.dim() != 3)
        throw std::invalid_argument("outward faces need a tetrahedron");
    std::array<FaceFrame, 4> out;
    for (int i = 0; i < 4; ++i) {
        std::vector<Point3> v;
        for (int j = 0; j < 4; ++j)
            if (j != i)
                v.push_back(k.vertex(j));
        Point3 n = cross(v[1] - v[0], v[2] - v[0]);
        if (dot(n, k.vertex(i) - v[0]) > 0)
            n = Rational(-1) * n;
        out[i] = FaceFrame(Simplex(v), n);
    }
    return out;
}

std::vector<Polynomial> face_barycentric(const FaceFrame& f)
{
    const Point3& v0 = f.face().vertex(0);
    Polynomial l1 = Polynomial::affine(-dot(f.d(0), v0), f.d(0));
    Polynomial l2 = Polynomial::affine(-dot(f.d(1), v0), f.d(1));
    return {Polynomial::constant(1) - l1 - l2, l1, l2};
}

std::vector<Rational> restricted_coordinates(const Field& f, const Simplex& s, int max_deg)
{
    return field_restriction(f, s, max_deg);
}

Rational restricted_norm2(const Field& f, const Simplex& s)
{
    Rational acc = 0;
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Polynomial>) {
                acc += norm2(g, s);
            } else if constexpr (std::is_same_v<T, VecPoly>) {
                for (int i = 0; i < 3; ++i)
                    acc += norm2(g[i], s);
            } else {
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        acc += norm2(g(i, j), s);
            }
        },
        f);
    return acc;
}

Rational greens_inc_residual(const MatPoly& s, const MatPoly& t, const Simplex& k)
{
    SymMatPoly ss(s), ts(t);
    Rational lhs = integrate_simplex(frobenius(inc(ss).mat(), t), k) - integrate_simplex(frobenius(s, inc(ts).mat()), k);
    Rational rhs = 0;
    for (const auto& f : outward_faces(k)) {
        Rational nn = f.nn();
        // |F| = |N|/2 and the traces carry |N|^2 and |N|: face term = mean / (2 N.N).
        Polynomial face = frobenius(tr1(s, f), tr2(t, f)) - frobenius(tr2(s, f), tr1(t, f));
        rhs += f.face().mean(face) / (2 * nn);
        for (const auto& e : f.edges()) {
            // |e| = |T| against |N|^2 |T|: edge term = mean / (N.N).
            VecPoly ns_n = cross(dot_left(f.n(), s), f.n());
            VecPoly nt_n = cross(dot_left(f.n(), t), f.n());
            Polynomial edge = dot(ns_n, dot_left(e.t, t)) - dot(dot_left(e.t, s), nt_n);
            rhs += edge_simplex(e).mean(edge) / nn;
        }
    }
    return lhs - rhs;
}

Rational greens_divdiv_residual(const MatPoly& t, const Polynomial& v, const FaceFrame& f)
{
    // Both sides multiplied by |N|; with |F| = |N|/2 the face terms carry N.N/2.
    Rational nn = f.nn();
    Rational half_nn = nn / 2;
    Rational lhs = half_nn * f.face().mean(divdiv_F(t, f) * v);
    Rational rhs = half_nn * f.face().mean(frobenius(t, surface_hess(v, f)));
    VecPoly div_t = div_F(t, f);
    for (const auto& e : f.edges()) {
        Rational tt = dot(e.t, e.t);
        Polynomial t_tau_n = dot(e.t, dot_right(t, e.nfe));
        rhs -= (t_tau_n.evaluate(e.end) * v.evaluate(e.end) - t_tau_n.evaluate(e.start) * v.evaluate(e.start)) / tt;
        Simplex es = edge_simplex(e);
        Polynomial nn_term = dot(e.nfe, dot_right(t, e.nfe)) * directional(v, e.nfe);
        Polynomial second = directional(t_tau_n, e.t) * (Rational(1) / tt) + dot(e.nfe, div_t);
        rhs -= es.mean(nn_term) / (tt * nn) - es.mean(second * v);
    }
    return lhs - rhs;
}

std::string to_string(TraceIdentity id)
{
    switch (id) {
    case TraceIdentity::defTr1: return "defTr1";
    case TraceIdentity::defTr2: return "defTr2";
    case TraceIdentity::incTr1: return "incTr1";
    case TraceIdentity::incTr2: return "incTr2";
    case TraceIdentity::edgeTT: return "edgeTT";
    case TraceIdentity::edgeDivDiv: return "edgeDivDiv";
    case TraceIdentity::edgeTr2: return "edgeTr2";
    }
    return "?";
}

TraceIdentity trace_identity_from_string(const std::string& name)
{
    for (auto id : {TraceIdentity::defTr1, TraceIdentity::defTr2, TraceIdentity::incTr1, TraceIdentity::incTr2,
                    TraceIdentity::edgeTT, TraceIdentity::edgeDivDiv, TraceIdentity::edgeTr2})
        if (to_string(id) == name)
            return id;
    throw std::invalid_argument("unknown trace identity: " + name);
}

Rational trace_commutation_check(TraceIdentity which, const Field& input, const FaceFrame& f, int edge)
{
    const Point3& n = f.n();
    const Simplex& face = f.face();
    const FaceEdge& e = f.edges().at(edge);
    Simplex es = edge_simplex(e);
    switch (which) {
    case TraceIdentity::defTr1: {
        const auto& v = std::get<VecPoly>(input);
        return restricted_norm2(tr1(def(v).mat(), f) - sym_curl_F(cross(v, n), f), face);
    }
    case TraceIdentity::defTr2: {
        const auto& v = std::get<VecPoly>(input);
        return restricted_norm2(tr2(def(v).mat(), f) - surface_hess(dot(n, v), f), face);
    }
    case TraceIdentity::incTr1: {
        const auto& t = std::get<MatPoly>(input);
        Polynomial lhs = dot(n, dot_right(inc(SymMatPoly(t)).mat(), n));
        return restricted_norm2(lhs - divdiv_F(tr1(t, f), f), face);
    }
    case TraceIdentity::incTr2: {
        const auto& t = std::get<MatPoly>(input);
        VecPoly lhs = cross(dot_left(n, inc(SymMatPoly(t)).mat()), n);
        return restricted_norm2(lhs - perp_div_cols(tr2(t, f), f), face);
    }
    case TraceIdentity::edgeTT: {
        const auto& t = std::get<MatPoly>(input);
        Rational nn = f.nn();
        Polynomial lhs = dot(e.nfe, dot_right(tr1(t, f), e.nfe));
        Polynomial rhs = Rational(-1) * nn * nn * dot(e.t, dot_right(t, e.t));
        return restricted_norm2(lhs - rhs, es);
    }
    case TraceIdentity::edgeDivDiv: {
        const auto& t = std::get<MatPoly>(input);
        Rational nn = f.nn(), tt = dot(e.t, e.t);
        MatPoly t1 = tr1(t, f);
        Polynomial raw1 = directional(dot(e.t, dot_right(t1, e.nfe)), e.t);
        Polynomial raw2 = dot(e.nfe, div_F(t1, f));
        Polynomial raw3 = directional(dot(e.nfe, dot_right(t, e.t)), e.t);
        Polynomial raw4 = dot(n, dot_right(curl_cols(t), e.t));
        Polynomial lhs = raw1 * (Rational(1) / (tt * nn)) + raw2 * (Rational(1) / nn);
        Polynomial rhs = raw3 * (Rational(1) / tt) - raw4;
        return restricted_norm2(lhs - rhs, es);
    }
    case TraceIdentity::edgeTr2: {
        const auto& t = std::get<MatPoly>(input);
        VecPoly lhs = dot_right(tr2(t, f), e.t);
        VecPoly rhs = dot_right(cross_left(n, curl_cols(t)), e.t) + directional(project(f.P(), dot_right(t, n)), e.t);
        return restricted_norm2(lhs - rhs, es);
    }
    }
    throw std::logic_error("unknown identity");
}

std::array<std::array<int, 2>, 6> vertex_pairs()
{
    return {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
}

std::array<Mat3, 6> normal_pair_tensors(const Simplex& k)
{
    auto faces = outward_faces(k);
    std::array<Mat3, 6> out;
    auto pairs = vertex_pairs();
    for (int p = 0; p < 6; ++p) {
        std::vector<int> other;
        for (int v = 0; v < 4; ++v)
            if (v != pairs[p][0] && v != pairs[p][1])
                other.push_back(v);
        Mat3 a = outer(faces[other[0]].n(), faces[other[1]].n());
        Mat3 b = transpose(a);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                out[p][i][j] = (a[i][j] + b[i][j]) / 2;
    }
    return out;
}

std::string to_string(BubbleKind kind)
{
    switch (kind) {
    case BubbleKind::tt: return "tt";
    case BubbleKind::incFull: return "incFull";
    case BubbleKind::divNormal: return "divNormal";
    case BubbleKind::divdiv2D: return "divdiv2D";
    case BubbleKind::hessian2D: return "hessian2D";
    }
    return "?";
}

namespace {

std::vector<Field> lambda_pair_space(const Simplex& k, int deg, const std::array<Mat3, 6>& tensors)
{
    auto lam = k.barycentric();
    auto pairs = vertex_pairs();
    std::vector<Field> out;
    auto monos = monomials_up_to(deg, 3);
    for (int p = 0; p < 6; ++p) {
        Polynomial ll = lam[pairs[p][0]] * lam[pairs[p][1]];
        MatPoly base = ll * MatPoly::constant(tensors[p]);
        for (const auto& m : monos)
            out.push_back(Polynomial::term(m, 1) * base);
    }
    return out;
}

std::function<std::vector<Rational>(const Field&)> face_trace_rows(const Simplex& k, int which, int deg)
{
    auto faces = outward_faces(k);
    return [faces, which, deg](const Field& fld) {
        const auto& t = std::get<MatPoly>(fld);
        std::vector<Rational> rows;
        for (const auto& f : faces) {
            Field img;
            if (which == 1)
                img = tr1(t, f);
            else if (which == 2)
                img = tr2(t, f);
            else
                img = dot_right(t, f.n());
            append(rows, field_restriction(img, f.face(), deg));
        }
        return rows;
    };
}

std::size_t nullity(const RationalMatrix& m)
{
    return m.cols() - rank(m);
}

std::vector<Field> sym3_basis(int deg, const Simplex& k)
{
    return build_basis({deg, k, Codomain::sym3}).elements();
}

// Constraints of the div_F div_F bubble: n.tau.n and the second edge trace vanish, tau vanishes at vertices.
std::function<std::vector<Rational>(const Field&)> divdiv_bubble_rows(const FaceFrame& f, int deg)
{
    return [f, deg](const Field& fld) {
        const auto& t = std::get<MatPoly>(fld);
        VecPoly div_t = div_F(t, f);
        std::vector<Rational> rows;
        for (const auto& e : f.edges()) {
            Simplex es({e.start, e.end});
            Rational tt = dot(e.t, e.t);
            append(rows, restriction_coords(dot(e.nfe, dot_right(t, e.nfe)), es, deg));
            Polynomial second = directional(dot(e.t, dot_right(t, e.nfe)), e.t) * (Rational(1) / tt) + dot(e.nfe, div_t);
            append(rows, restriction_coords(second, es, deg));
            Mat3 at = t.evaluate(e.start);
            for (auto& r : at)
                rows.insert(rows.end(), r.begin(), r.end());
        }
        return rows;
    };
}

// tau . t vanishes on every edge.
std::function<std::vector<Rational>(const Field&)> rot_bubble_rows(const FaceFrame& f, int deg)
{
    return [f, deg](const Field& fld) {
        const auto& t = std::get<MatPoly>(fld);
        std::vector<Rational> rows;
        for (const auto& e : f.edges())
            append(rows, field_restriction(dot_right(t, e.t), Simplex({e.start, e.end}), deg));
        return rows;
    };
}

}  // namespace

BubbleBasis bubble_basis(BubbleKind kind, int k, const Simplex& domain)
{
    BubbleBasis out{kind, k, {}, 0, 0};
    switch (kind) {
    case BubbleKind::tt: {
        if (k < 2)
            throw std::invalid_argument("tt bubbles need k >= 2");
        out.basis = lambda_pair_space(domain, k - 2, normal_pair_tensors(domain));
        out.expected = static_cast<std::size_t>(k * (k * k - 1));
        out.kernel_dimension = nullity(constraint_matrix(sym3_basis(k, domain), face_trace_rows(domain, 1, k)));
        break;
    }
    case BubbleKind::incFull: {
        if (k < 4)
            throw std::invalid_argument("inc bubbles need k >= 4");
        auto bt = lambda_pair_space(domain, k - 2, normal_pair_tensors(domain));
        out.basis = kernel_fields(bt, constraint_matrix(bt, face_trace_rows(domain, 2, k - 1)));
        out.expected = static_cast<std::size_t>(k * k * k - 6 * k * k + 11 * k);
        auto both = [&](const Field& f) {
            auto r = face_trace_rows(domain, 1, k)(f);
            append(r, face_trace_rows(domain, 2, k - 1)(f));
            return r;
        };
        out.kernel_dimension = nullity(constraint_matrix(sym3_basis(k, domain), both));
        break;
    }
    case BubbleKind::divNormal: {
        if (k < 2)
            throw std::invalid_argument("div bubbles need k >= 2");
        std::array<Mat3, 6> tensors;
        auto pairs = vertex_pairs();
        for (int p = 0; p < 6; ++p) {
            Point3 t = domain.vertex(pairs[p][1]) - domain.vertex(pairs[p][0]);
            tensors[p] = outer(t, t);
        }
        out.basis = lambda_pair_space(domain, k - 2, tensors);
        out.expected = 6 * binomial(k + 1, 3);
        out.kernel_dimension = nullity(constraint_matrix(sym3_basis(k, domain), face_trace_rows(domain, 0, k)));
        break;
    }
    case BubbleKind::divdiv2D: {
        if (k < 3)
            throw std::invalid_argument("divdiv bubbles need k >= 3");
        FaceFrame f(domain);
        auto full = build_basis({k, domain, Codomain::sym2}).elements();
        out.basis = kernel_fields(full, constraint_matrix(full, divdiv_bubble_rows(f, k)));
        out.expected = 3 * binomial(k, 2) - 3;
        out.kernel_dimension = out.basis.size();
        break;
    }
    case BubbleKind::hessian2D: {
        if (k < 5)
            throw std::invalid_argument("hessian bubbles need k >= 5");
        FaceFrame f(domain);
        auto full = build_basis({k - 1, domain, Codomain::sym2}).elements();
        out.basis = kernel_fields(full, constraint_matrix(full, rot_bubble_rows(f, k - 1)));
        out.expected = binomial(k - 3, 2) + 2 * binomial(k, 2) - 3;
        out.kernel_dimension = out.basis.size();
        break;
    }
    }
    return out;
}

ExactnessReport verify_bubble_complex(const std::string& name, int k, const Simplex& domain)
{
    SequenceSpec seq;
    seq.name = name;
    seq.k = k;
    auto ambient = [](int deg, bool symmetric) {
        return [deg, symmetric](const Field& f) { return field_coordinates(f, deg, symmetric); };
    };
    auto sub = [](std::string n, std::vector<Field> basis, std::function<std::vector<Rational>(const Field&)> c) {
        return SequenceSpace{std::move(n), std::move(basis), std::move(c), true};
    };
    auto canonical = [](std::string n, const SpaceBasis& b) {
        return SequenceSpace{std::move(n), b.elements(), [b](const Field& f) {
                                 auto c = b.coordinates(f);
                                 if (!c)
                                     throw std::domain_error("field outside the target space");
                                 return *c;
                             },
                             false};
    };
    auto op = [&domain](NamedOp o) { return [o, domain](const Field& f) { return apply_operator(o, f, domain); }; };

    if (name == "elasticity") {
        if (k < 4)
            throw std::invalid_argument("elasticity bubble complex needs k >= 4");
        auto lam = domain.barycentric();
        Polynomial bk = lam[0] * lam[1] * lam[2] * lam[3];
        std::vector<Field> first;
        SpaceBasis src_basis = build_basis({k - 3, domain, Codomain::vec3});
        for (const auto& e : src_basis.elements())
            first.push_back(bk * std::get<VecPoly>(e));
        seq.spaces = {sub("bK P" + std::to_string(k - 3) + "(R3)", first, ambient(k + 1, false)),
                      sub("B_" + std::to_string(k), bubble_basis(BubbleKind::incFull, k, domain).basis, ambient(k, true)),
                      sub("Bn_" + std::to_string(k - 2), bubble_basis(BubbleKind::divNormal, k - 2, domain).basis,
                          ambient(k - 2, true)),
                      canonical("P" + std::to_string(k - 3) + "(R3)/RM", build_basis({k - 3, domain, Codomain::vec3}))};
        seq.maps = {op(NamedOp::def), op(NamedOp::inc), op(NamedOp::div_sym)};
        for (auto& r : rigid_motions(domain.center()))
            seq.end_quotient.push_back(r);
    } else if (name == "divdiv2D") {
        if (k < 3)
            throw std::invalid_argument("divdiv bubble complex needs k >= 3");
        FaceFrame f(domain);
        auto lam = face_barycentric(f);
        Polynomial bf = lam[0] * lam[1] * lam[2];
        std::vector<Field> first;
        SpaceBasis src_basis = build_basis({k - 2, domain, Codomain::vec2});
        for (const auto& e : src_basis.elements())
            first.push_back(bf * std::get<VecPoly>(e));
        SpaceBasis last = build_basis({k - 2, domain, Codomain::scalar});
        seq.spaces = {sub("bF P" + std::to_string(k - 2) + "(F;R2)", first, ambient(k + 1, false)),
                      sub("P" + std::to_string(k) + "(F;S) bubble", bubble_basis(BubbleKind::divdiv2D, k, domain).basis,
                          ambient(k, true)),
                      canonical("P" + std::to_string(k - 2) + "(F)/P1", last)};
        seq.maps = {op(NamedOp::sym_curl_F), op(NamedOp::divdiv_F)};
        seq.end_quotient = {last.elements()[0], last.elements()[1], last.elements()[2]};
    } else if (name == "hessian2D") {
        if (k < 5)
            throw std::invalid_argument("hessian bubble complex needs k >= 5");
        FaceFrame f(domain);
        auto lam = face_barycentric(f);
        Polynomial bf = lam[0] * lam[1] * lam[2];
        Polynomial bf2 = bf * bf;
        std::vector<Field> first;
        SpaceBasis src_basis = build_basis({k - 5, domain, Codomain::scalar});
        for (const auto& e : src_basis.elements())
            first.push_back(bf2 * std::get<Polynomial>(e));
        SpaceBasis last = build_basis({k - 2, domain, Codomain::vec2});
        seq.spaces = {sub("bF^2 P" + std::to_string(k - 5) + "(F)", first, ambient(k + 1, false)),
                      sub("P" + std::to_string(k - 1) + "(F;S) bubble", bubble_basis(BubbleKind::hessian2D, k, domain).basis,
                          ambient(k - 1, true)),
                      canonical("P" + std::to_string(k - 2) + "(F;R2)/RM_perp", last)};
        seq.maps = {op(NamedOp::hess_F), op(NamedOp::rot_F)};
        seq.end_quotient = {VecPoly::constant(f.t(0)), VecPoly::constant(f.t(1)), face_position(f)};
    } else {
        throw std::invalid_argument("unknown bubble complex: " + name);
    }
    return verify_sequence(seq);
}

}  // namespace elascomplex
