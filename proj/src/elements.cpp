#include "elascomplex/elements.hpp"

#include <algorithm>
#include <stdexcept>

#include "elascomplex/parallel.hpp"

namespace elascomplex {

namespace {

std::vector<Polynomial> field_entries(const Field& f)
{
    std::vector<Polynomial> out;
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Polynomial>) {
                out.push_back(g);
            } else if constexpr (std::is_same_v<T, VecPoly>) {
                out.assign(g.c.begin(), g.c.end());
            } else {
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        out.push_back(g(i, j));
            }
        },
        f);
    return out;
}

Field derive_field(const Field& f, int axis)
{
    return std::visit(
        [axis](const auto& g) -> Field {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Polynomial>) {
                return derive(g, axis);
            } else if constexpr (std::is_same_v<T, VecPoly>) {
                return VecPoly(derive(g[0], axis), derive(g[1], axis), derive(g[2], axis));
            } else {
                MatPoly m;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        m(i, j) = derive(g(i, j), axis);
                return m;
            }
        },
        f);
}

Field directional_field(const Field& f, const Point3& dir)
{
    return std::visit([&dir](const auto& g) -> Field { return directional(g, dir); }, f);
}

Mat3 entry_unit(int i, int j)
{
    Mat3 m = zero_mat3();
    m[i][j] = 1;
    return m;
}

// Moment of the transformed field against `weight` over `s`, as a functional on coefficients.
std::vector<Rational> moment_functional(const Simplex& s, const Field& weight, int deg)
{
    auto w = field_entries(weight);
    auto monos = monomials_up_to(deg, 3);
    std::size_t per = monos.size();
    std::vector<Rational> out(per * w.size());
    for (std::size_t c = 0; c < w.size(); ++c) {
        if (w[c].is_zero())
            continue;
        for (std::size_t a = 0; a < per; ++a) {
            Rational acc = 0;
            for (const auto& [g, coef] : w[c].terms())
                acc += coef * s.monomial_mean(monos[a] * g);
            out[c * per + a] = acc;
        }
    }
    return out;
}

std::vector<Rational> point_functional(const Point3& p, const Field& weight, int deg)
{
    auto w = field_entries(weight);
    auto monos = monomials_up_to(deg, 3);
    std::size_t per = monos.size();
    std::vector<Rational> out(per * w.size());
    for (std::size_t c = 0; c < w.size(); ++c) {
        Rational wc = w[c].evaluate(p);
        if (wc == 0)
            continue;
        for (std::size_t a = 0; a < per; ++a)
            out[c * per + a] = wc * Polynomial::term(monos[a], 1).evaluate(p);
    }
    return out;
}

// Fields at the pivot columns of their coefficient matrix: a basis of their span.
std::vector<Field> independent_subset(const std::vector<Field>& fields, int deg)
{
    if (fields.empty())
        return {};
    std::vector<std::vector<Rational>> cols;
    for (const auto& f : fields)
        cols.push_back(field_coordinates(f, std::max(deg, 0), false));
    auto piv = echelon(from_columns(cols, cols[0].size())).pivot_columns;
    std::vector<Field> out;
    for (auto j : piv)
        out.push_back(fields[j]);
    return out;
}

std::vector<Field> images(NamedOp op, const SpaceBasis& b, const Simplex& domain)
{
    std::vector<Field> out;
    for (const auto& e : b.elements())
        out.push_back(apply_operator(op, e, domain));
    return out;
}

std::vector<Polynomial> edge_powers(const EdgeFrame& ef, int deg)
{
    const Point3& start = ef.edge.vertex(0);
    Rational tt = dot(ef.t, ef.t);
    Polynomial s = Polynomial::affine(-dot(ef.t, start) / tt, (Rational(1) / tt) * ef.t);
    std::vector<Polynomial> out;
    if (deg < 0)
        return out;
    out.push_back(Polynomial::constant(1));
    for (int m = 1; m <= deg; ++m)
        out.push_back(out.back() * s);
    return out;
}

struct Builder {
    Element& e;
    int deg;

    DofFunctional base(DofKind kind, EntityType ent, int idx, std::string fam, DofField field)
    {
        DofFunctional d;
        d.kind = kind;
        d.entity = ent;
        d.entity_index = idx;
        d.family = std::move(fam);
        d.field = field;
        return d;
    }

    void point(DofFunctional d, const Point3& p, const Field& weight)
    {
        d.functional = point_functional(p, weight, deg);
        e.dofs.push_back(std::move(d));
    }

    void moment(DofFunctional d, const Simplex& s, const Field& weight)
    {
        d.functional = moment_functional(s, weight, deg);
        e.dofs.push_back(std::move(d));
    }
};

void add_vertex_sym(Builder& b, int v, bool with_grad, bool with_inc)
{
    const Point3& p = b.e.cell.vertex(v);
    for (auto [i, j] : kSymComponents)
        b.point(b.base(DofKind::pointValue, EntityType::vertex, v, "vertex.value", DofField::value), p,
                MatPoly::constant(entry_unit(i, j)));
    if (with_grad)
        for (int a = 0; a < 3; ++a)
            for (auto [i, j] : kSymComponents) {
                auto d = b.base(DofKind::pointGradient, EntityType::vertex, v, "vertex.grad", DofField::partial);
                d.axes = {a, a};
                b.point(d, p, MatPoly::constant(entry_unit(i, j)));
            }
    if (with_inc)
        for (auto [i, j] : kSymComponents)
            b.point(b.base(DofKind::pointIncValue, EntityType::vertex, v, "vertex.inc", DofField::inc), p,
                    MatPoly::constant(entry_unit(i, j)));
}

void add_vertex_vec(Builder& b, int v)
{
    const Point3& p = b.e.cell.vertex(v);
    for (int c = 0; c < 3; ++c)
        b.point(b.base(DofKind::pointValue, EntityType::vertex, v, "vertex.value", DofField::value), p,
                VecPoly::constant(unit_vector(c)));
    for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) {
            auto d = b.base(DofKind::pointGradient, EntityType::vertex, v, "vertex.grad", DofField::partial);
            d.axes = {a, a};
            b.point(d, p, VecPoly::constant(unit_vector(c)));
        }
    for (int a = 0; a < 3; ++a)
        for (int a2 = a; a2 < 3; ++a2)
            for (int c = 0; c < 3; ++c) {
                auto d = b.base(DofKind::pointHessian, EntityType::vertex, v, "vertex.hess", DofField::partial2);
                d.axes = {a, a2};
                b.point(d, p, VecPoly::constant(unit_vector(c)));
            }
}

void add_edge_normal_pairs(Builder& b, int ed, const std::string& prefix, DofField field, int qdeg)
{
    const EdgeFrame& ef = b.e.frames.edges[ed];
    auto pw = edge_powers(ef, qdeg);
    const Point3 n[2] = {ef.n1, ef.n2};
    const int pairs[3][2] = {{0, 0}, {0, 1}, {1, 1}};
    for (auto& pr : pairs)
        for (const auto& s : pw)
            b.moment(b.base(DofKind::edgeMoment, EntityType::edge, ed, prefix + "nn", field), ef.edge,
                     s * MatPoly::constant(outer(n[pr[0]], n[pr[1]])));
    for (int i = 0; i < 2; ++i)
        for (const auto& s : pw)
            b.moment(b.base(DofKind::edgeMoment, EntityType::edge, ed, prefix + "nt", field), ef.edge,
                     s * MatPoly::constant(outer(n[i], ef.t)));
}

void add_face_family(Builder& b, int f, const std::string& fam, DofField field, const std::vector<Field>& weights)
{
    for (const auto& w : weights) {
        auto d = b.base(DofKind::faceMoment, EntityType::face, f, fam, field);
        d.face = f;
        b.moment(d, b.e.frames.faces[f], w);
    }
}

void add_cell_family(Builder& b, const std::string& fam, const std::vector<Field>& weights)
{
    for (const auto& w : weights)
        b.moment(b.base(DofKind::volumeMoment, EntityType::cell, 0, fam, DofField::value), b.e.cell, w);
}

std::vector<Field> face_vector_tests(const Simplex& face, int deg)
{
    std::vector<Field> out;
    if (deg < 0)
        return out;
    SpaceBasis p = build_basis({deg, face, Codomain::scalar});
    for (int c = 0; c < 3; ++c)
        for (const auto& s : p.elements())
            out.push_back(std::get<Polynomial>(s) * VecPoly::constant(unit_vector(c)));
    return out;
}

void build_hinc(Builder& b)
{
    Element& e = b.e;
    int k = e.k;
    for (int v = 0; v < 4; ++v)
        add_vertex_sym(b, v, true, true);
    for (int ed = 0; ed < 6; ++ed) {
        const EdgeFrame& ef = e.frames.edges[ed];
        for (int c = 0; c < 6; ++c)
            for (const auto& s : edge_powers(ef, k - 4))
                b.moment(b.base(DofKind::edgeMoment, EntityType::edge, ed, "edge.value", DofField::value), ef.edge,
                         s * MatPoly::constant(sym_unit(c)));
        for (int c = 0; c < 3; ++c)
            for (const auto& s : edge_powers(ef, k - 3)) {
                auto d = b.base(DofKind::edgeMoment, EntityType::edge, ed, "edge.curl_t", DofField::curl_t);
                d.direction = ef.t;
                b.moment(d, ef.edge, s * VecPoly::constant(unit_vector(c)));
            }
        add_edge_normal_pairs(b, ed, "edge.inc_", DofField::inc, k - 4);
    }
    for (int f = 0; f < 4; ++f) {
        const Simplex& face = e.frames.faces[f];
        int m = k - 5;
        SpaceBasis p = build_basis({m, face, Codomain::scalar});
        SpaceBasis v = build_basis({m, face, Codomain::vec2});
        add_face_family(b, f, "face.tr1.hess", DofField::tr1, independent_subset(images(NamedOp::hess_F, p, face), m));
        add_face_family(b, f, "face.tr1.sym_xperp", DofField::tr1,
                        independent_subset(images(NamedOp::sym_x_perp_v, v, face), m + 1));
        add_face_family(b, f, "face.tr2.sym_curl", DofField::tr2,
                        independent_subset(images(NamedOp::sym_curl_F, v, face), m));
        add_face_family(b, f, "face.tr2.xxT", DofField::tr2, independent_subset(images(NamedOp::xxT, p, face), m + 2));
    }
    SpaceBasis s = build_basis({k - 4, e.cell, Codomain::sym3});
    SpaceBasis q = build_basis({k - 3, e.cell, Codomain::vec3});
    auto inc_part = independent_subset(images(NamedOp::inc, s, e.cell), k - 6);
    auto sym_part = images(NamedOp::koszul_sym_vx, q, e.cell);
    std::vector<Field> all = inc_part;
    all.insert(all.end(), sym_part.begin(), sym_part.end());
    if (independent_subset(all, k - 2).size() != all.size())
        throw std::logic_error("volume test spaces are not in direct sum");
    add_cell_family(b, "cell.inc", inc_part);
    add_cell_family(b, "cell.sym_qx", sym_part);
}

void build_huzhang(Builder& b)
{
    Element& e = b.e;
    int k = e.k;
    for (int v = 0; v < 4; ++v)
        add_vertex_sym(b, v, false, false);
    for (int ed = 0; ed < 6; ++ed)
        add_edge_normal_pairs(b, ed, "edge.", DofField::value, k - 4);
    for (int f = 0; f < 4; ++f)
        add_face_family(b, f, "face.normal", DofField::normal_trace, face_vector_tests(e.frames.faces[f], k - 5));
    add_cell_family(b, "cell.value", build_basis({k - 4, e.cell, Codomain::sym3}).elements());
}

void build_neilan(Builder& b)
{
    Element& e = b.e;
    int k = e.k;
    for (int v = 0; v < 4; ++v)
        add_vertex_vec(b, v);
    for (int ed = 0; ed < 6; ++ed) {
        const EdgeFrame& ef = e.frames.edges[ed];
        for (int c = 0; c < 3; ++c)
            for (const auto& s : edge_powers(ef, k - 5))
                b.moment(b.base(DofKind::edgeMoment, EntityType::edge, ed, "edge.value", DofField::value), ef.edge,
                         s * VecPoly::constant(unit_vector(c)));
        for (const Point3& n : {ef.n1, ef.n2})
            for (int c = 0; c < 3; ++c)
                for (const auto& s : edge_powers(ef, k - 4)) {
                    auto d = b.base(DofKind::edgeMoment, EntityType::edge, ed, "edge.normal_derivative",
                                    DofField::normal_derivative);
                    d.direction = n;
                    b.moment(d, ef.edge, s * VecPoly::constant(unit_vector(c)));
                }
    }
    for (int f = 0; f < 4; ++f)
        add_face_family(b, f, "face.value", DofField::value, face_vector_tests(e.frames.faces[f], k - 5));
    add_cell_family(b, "cell.value", build_basis({k - 3, e.cell, Codomain::vec3}).elements());
}

void build_dg(Builder& b)
{
    add_cell_family(b, "cell.value", build_basis({b.e.k - 3, b.e.cell, Codomain::vec3}).elements());
}

std::string group_key(const DofFunctional& d)
{
    std::string key = std::to_string(static_cast<int>(d.field)) + ":" + std::to_string(d.axes[0]) + "," +
                      std::to_string(d.axes[1]) + ":" + std::to_string(d.face);
    for (int i = 0; i < 3; ++i)
        key += ":" + to_string(d.direction[i]);
    return key;
}

std::array<int, 3> face_vertices(int f)
{
    std::array<int, 3> out{};
    int n = 0;
    for (int v = 0; v < 4; ++v)
        if (v != f)
            out[n++] = v;
    return out;
}

}  // namespace

std::string to_string(DofKind k)
{
    switch (k) {
    case DofKind::pointValue: return "pointValue";
    case DofKind::pointGradient: return "pointGradient";
    case DofKind::pointHessian: return "pointHessian";
    case DofKind::pointIncValue: return "pointIncValue";
    case DofKind::edgeMoment: return "edgeMoment";
    case DofKind::faceMoment: return "faceMoment";
    case DofKind::volumeMoment: return "volumeMoment";
    }
    return "?";
}

std::string to_string(EntityType t)
{
    switch (t) {
    case EntityType::vertex: return "vertex";
    case EntityType::edge: return "edge";
    case EntityType::face: return "face";
    case EntityType::cell: return "cell";
    }
    return "?";
}

std::string to_string(Family f)
{
    switch (f) {
    case Family::hinc: return "hinc";
    case Family::huzhang: return "huzhang";
    case Family::neilan: return "neilan";
    case Family::dgVector: return "dgVector";
    }
    return "?";
}

Family family_from_string(const std::string& name)
{
    for (auto f : {Family::hinc, Family::huzhang, Family::neilan, Family::dgVector})
        if (to_string(f) == name)
            return f;
    throw std::invalid_argument("unknown element family: " + name);
}

int shape_degree(Family f, int k)
{
    switch (f) {
    case Family::hinc: return k;
    case Family::neilan: return k + 1;
    case Family::huzhang: return k - 2;
    case Family::dgVector: return k - 3;
    }
    return k;
}

LocalFrames default_frames(const Simplex& cell, const std::array<long, 4>& ids)
{
    LocalFrames fr;
    auto pairs = vertex_pairs();
    for (int e = 0; e < 6; ++e) {
        int a = pairs[e][0], b = pairs[e][1];
        if (ids[a] > ids[b])
            std::swap(a, b);
        fr.edges[e] = EdgeFrame::from_rule(cell.vertex(a), cell.vertex(b));
    }
    for (int f = 0; f < 4; ++f) {
        auto fv = face_vertices(f);
        std::sort(fv.begin(), fv.end(), [&](int a, int b) { return ids[a] < ids[b]; });
        fr.faces[f] = Simplex({cell.vertex(fv[0]), cell.vertex(fv[1]), cell.vertex(fv[2])});
    }
    return fr;
}

std::map<std::string, std::size_t> Element::family_counts() const
{
    std::map<std::string, std::size_t> out;
    for (const auto& d : dofs)
        ++out[d.family];
    return out;
}

std::size_t Element::entity_count(EntityType t, int index) const
{
    return static_cast<std::size_t>(std::count_if(dofs.begin(), dofs.end(), [&](const DofFunctional& d) {
        return d.entity == t && d.entity_index == index;
    }));
}

std::size_t Element::total_count(EntityType t) const
{
    return static_cast<std::size_t>(
        std::count_if(dofs.begin(), dofs.end(), [&](const DofFunctional& d) { return d.entity == t; }));
}

Element build_element(Family family, int k, const Simplex& cell, const LocalFrames& frames)
{
    int kmin = family == Family::dgVector ? 3 : 6;
    if (k < kmin)
        throw std::invalid_argument(to_string(family) + " needs k >= " + std::to_string(kmin));
    if (cell.dim() != 3)
        throw std::invalid_argument("elements live on tetrahedra");
    Element e;
    e.family = family;
    e.k = k;
    e.cell = cell;
    e.frames = frames;
    for (int f = 0; f < 4; ++f)
        e.face_frames[f] = FaceFrame(frames.faces[f]);
    int deg = shape_degree(family, k);
    Codomain cod = (family == Family::hinc || family == Family::huzhang) ? Codomain::sym3 : Codomain::vec3;
    e.shape = build_basis({deg, cell, cod});
    Builder b{e, deg};
    switch (family) {
    case Family::hinc: build_hinc(b); break;
    case Family::huzhang: build_huzhang(b); break;
    case Family::neilan: build_neilan(b); break;
    case Family::dgVector: build_dg(b); break;
    }
    return e;
}

Element build_element(Family family, int k, const Simplex& cell)
{
    return build_element(family, k, cell, default_frames(cell));
}

Field transform_field(const DofFunctional& d, const Field& f, const Element& e)
{
    switch (d.field) {
    case DofField::value: return f;
    case DofField::partial: return derive_field(f, d.axes[0]);
    case DofField::partial2: return derive_field(derive_field(f, d.axes[0]), d.axes[1]);
    case DofField::inc: return inc(SymMatPoly(std::get<MatPoly>(f))).mat();
    case DofField::curl_t: return dot_right(curl_cols(std::get<MatPoly>(f)), d.direction);
    case DofField::normal_derivative: return directional_field(f, d.direction);
    case DofField::tr1: return tr1(std::get<MatPoly>(f), e.face_frames.at(d.face));
    case DofField::tr2: return tr2(std::get<MatPoly>(f), e.face_frames.at(d.face));
    case DofField::normal_trace: return dot_right(std::get<MatPoly>(f), e.face_frames.at(d.face).n());
    }
    throw std::logic_error("unknown dof field");
}

Rational apply_dof(const DofFunctional& d, const Field& f, const Element& e)
{
    Field t = transform_field(d, f, e);
    int deg = e.shape.spec().degree;
    std::size_t per = monomial_count(deg, 3);
    auto entries = field_entries(t);
    if (entries.size() * per != d.functional.size())
        throw std::invalid_argument("field type does not match the DOF");
    Rational acc = 0;
    for (std::size_t c = 0; c < entries.size(); ++c)
        for (const auto& [m, coef] : entries[c].terms()) {
            if (m.degree() > deg)
                throw std::domain_error("field degree exceeds the shape degree");
            acc += coef * d.functional[c * per + monomial_index(m, 3)];
        }
    return acc;
}

RationalMatrix dof_matrix(const Element& e, const std::vector<Field>& fields, const std::vector<std::size_t>& rows_in)
{
    std::vector<std::size_t> rows = rows_in;
    if (rows.empty())
        for (std::size_t i = 0; i < e.dofs.size(); ++i)
            rows.push_back(i);
    RationalMatrix out(rows.size(), fields.size());
    int deg = e.shape.spec().degree;
    std::size_t per = monomial_count(deg, 3);
    std::map<std::string, std::vector<std::size_t>> groups;  // key -> positions in rows
    for (std::size_t r = 0; r < rows.size(); ++r)
        groups[group_key(e.dofs.at(rows[r]))].push_back(r);
    // Columns are independent: each worker transforms one shape function per group.
    parallel_for(fields.size(), [&](std::size_t j) {
        for (const auto& [key, members] : groups) {
            const DofFunctional& proto = e.dofs[rows[members.front()]];
            auto entries = field_entries(transform_field(proto, fields[j], e));
            std::vector<std::pair<std::size_t, const Rational*>> terms;
            for (std::size_t c = 0; c < entries.size(); ++c)
                for (const auto& [m, coef] : entries[c].terms()) {
                    if (m.degree() > deg)
                        throw std::domain_error("field degree exceeds the shape degree");
                    terms.emplace_back(c * per + monomial_index(m, 3), &coef);
                }
            for (auto r : members) {
                const auto& fn = e.dofs[rows[r]].functional;
                if (fn.size() != entries.size() * per)
                    throw std::invalid_argument("field type does not match the DOF");
                Rational acc = 0;
                for (const auto& [idx, coef] : terms)
                    if (fn[idx] != 0)
                        acc += *coef * fn[idx];
                out(r, j) = acc;
            }
        }
    });
    return out;
}

RationalMatrix dof_matrix(const Element& e, const std::vector<std::size_t>& rows)
{
    return dof_matrix(e, e.shape.elements(), rows);
}

UnisolvenceReport check_unisolvence(const Element& e, const std::vector<std::size_t>& rows)
{
    UnisolvenceReport rep;
    RationalMatrix m = dof_matrix(e, rows);
    rep.dofs = m.rows();
    rep.dimension = e.shape.size();
    rep.rank = rank(m);
    rep.pass = rep.dofs == rep.dimension && rep.rank == rep.dimension;
    if (rep.rank < rep.dimension) {
        RationalMatrix ker = kernel(m);
        rep.kernel_witness = e.shape.combine(ker.column(0));
    }
    return rep;
}

std::vector<std::size_t> face_closure_dofs(const Element& e, int face)
{
    auto pairs = vertex_pairs();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < e.dofs.size(); ++i) {
        const auto& d = e.dofs[i];
        bool in = false;
        if (d.entity == EntityType::vertex)
            in = d.entity_index != face;
        else if (d.entity == EntityType::edge)
            in = pairs[d.entity_index][0] != face && pairs[d.entity_index][1] != face;
        else if (d.entity == EntityType::face)
            in = d.entity_index == face;
        if (in)
            out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> edge_closure_dofs(const Element& e, int edge)
{
    auto pr = vertex_pairs()[edge];
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < e.dofs.size(); ++i) {
        const auto& d = e.dofs[i];
        if ((d.entity == EntityType::vertex && (d.entity_index == pr[0] || d.entity_index == pr[1])) ||
            (d.entity == EntityType::edge && d.entity_index == edge))
            out.push_back(i);
    }
    return out;
}

namespace {

DeterminationReport determination(const Element& e, const std::vector<std::size_t>& rows,
                                  const std::function<std::vector<Rational>(const Field&)>& traces)
{
    DeterminationReport rep;
    RationalMatrix d = dof_matrix(e, rows);
    std::vector<std::vector<Rational>> tcols;
    for (const auto& s : e.shape.elements())
        tcols.push_back(traces(s));
    RationalMatrix t = from_columns(tcols, tcols[0].size());
    rep.closure_dofs = rows.size();
    rep.closure_rank = rank(d);
    // ker D lies in ker T iff the rows of T lie in the row space of D.
    rep.pass = rank(vstack(d, t)) == rep.closure_rank;
    if (!rep.pass) {
        RationalMatrix ker = kernel(d);
        for (std::size_t j = 0; j < ker.cols(); ++j) {
            auto c = ker.column(j);
            RationalMatrix col(c.size(), 1);
            col.set_column(0, c);
            if (!(t * col).is_zero()) {
                rep.counterexample = e.shape.combine(c);
                break;
            }
        }
    }
    return rep;
}

}  // namespace

DeterminationReport trace_determination_check(const Element& e, int face)
{
    const FaceFrame& f = e.face_frames.at(face);
    int deg = e.shape.spec().degree;
    return determination(e, face_closure_dofs(e, face), [&](const Field& s) {
        const auto& t = std::get<MatPoly>(s);
        auto r = restricted_coordinates(tr1(t, f), f.face(), deg);
        auto r2 = restricted_coordinates(tr2(t, f), f.face(), deg);
        r.insert(r.end(), r2.begin(), r2.end());
        return r;
    });
}

DeterminationReport edge_trace_determination_check(const Element& e, int edge)
{
    const EdgeFrame& ef = e.frames.edges.at(edge);
    int deg = e.shape.spec().degree;
    return determination(e, edge_closure_dofs(e, edge), [&](const Field& s) {
        const auto& t = std::get<MatPoly>(s);
        auto r = restricted_coordinates(t, ef.edge, deg);
        auto r2 = restricted_coordinates(dot_right(curl_cols(t), ef.t), ef.edge, deg);
        r.insert(r.end(), r2.begin(), r2.end());
        return r;
    });
}

std::vector<MutationResult> mutation_test(const Element& e)
{
    std::vector<MutationResult> out;
    RationalMatrix full = dof_matrix(e);
    for (int f = 0; f < 4; ++f) {
        std::map<std::string, std::vector<std::size_t>> fams;
        for (std::size_t i = 0; i < e.dofs.size(); ++i)
            if (e.dofs[i].entity == EntityType::face && e.dofs[i].entity_index == f)
                fams[e.dofs[i].family].push_back(i);
        for (const auto& [name, idx] : fams) {
            std::vector<std::size_t> keep;
            for (std::size_t i = 0; i < e.dofs.size(); ++i)
                if (!std::binary_search(idx.begin(), idx.end(), i))
                    keep.push_back(i);
            MutationResult m;
            m.face = f;
            m.family = name;
            m.dropped = idx.size();
            m.kernel_dimension = e.shape.size() - rank(full.row_subset(keep));
            m.pass = m.kernel_dimension == m.dropped;
            out.push_back(m);
        }
    }
    return out;
}

}  // namespace elascomplex
