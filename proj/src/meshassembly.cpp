#include "elascomplex/meshassembly.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "elascomplex/parallel.hpp"

namespace elascomplex {

namespace {

std::array<int, 3> opposite(int f)
{
    std::array<int, 3> out{};
    int n = 0;
    for (int v = 0; v < 4; ++v)
        if (v != f)
            out[n++] = v;
    return out;
}

int entity_slot(EntityType t)
{
    return static_cast<int>(t);
}

}  // namespace

long TetMesh::euler_characteristic() const
{
    return static_cast<long>(num_vertices()) - static_cast<long>(num_edges()) + static_cast<long>(num_faces()) -
           static_cast<long>(num_tets());
}

Simplex TetMesh::cell(std::size_t t) const
{
    const auto& ids = tets.at(t);
    return Simplex({vertices[ids[0]], vertices[ids[1]], vertices[ids[2]], vertices[ids[3]]});
}

LocalFrames TetMesh::local_frames(std::size_t t) const
{
    LocalFrames fr;
    for (int e = 0; e < 6; ++e)
        fr.edges[e] = edge_frames[tet_edges[t][e]];
    for (int f = 0; f < 4; ++f) {
        const auto& g = faces[tet_faces[t][f]];
        fr.faces[f] = Simplex({vertices[g[0]], vertices[g[1]], vertices[g[2]]});
    }
    return fr;
}

TetMesh assign_global_frames(TetMesh m)
{
    m.edge_frames.clear();
    m.face_normals.clear();
    for (const auto& e : m.edges)
        m.edge_frames.push_back(EdgeFrame::from_rule(m.vertices[e[0]], m.vertices[e[1]]));
    for (const auto& f : m.faces)
        m.face_normals.push_back(cross(m.vertices[f[1]] - m.vertices[f[0]], m.vertices[f[2]] - m.vertices[f[0]]));
    return m;
}

TetMesh make_mesh(std::vector<Point3> vertices, std::vector<std::array<long, 4>> tets)
{
    TetMesh m;
    m.vertices = std::move(vertices);
    m.tets = std::move(tets);
    long nv = static_cast<long>(m.vertices.size());
    if (m.tets.empty())
        throw std::invalid_argument("mesh has no tetrahedra");
    std::set<Point3> distinct(m.vertices.begin(), m.vertices.end());
    if (distinct.size() != m.vertices.size())
        throw std::invalid_argument("duplicate vertex coordinates");
    std::set<std::array<long, 4>> seen;
    std::vector<bool> used(m.vertices.size(), false);
    for (const auto& t : m.tets) {
        for (long id : t) {
            if (id < 0 || id >= nv)
                throw std::invalid_argument("tet references a missing vertex");
            used[id] = true;
        }
        auto s = t;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("tet repeats a vertex");
        if (!seen.insert(s).second)
            throw std::invalid_argument("repeated tet");
    }
    if (std::find(used.begin(), used.end(), false) != used.end())
        throw std::invalid_argument("unused vertex");

    std::map<std::array<long, 2>, long> edge_id;
    std::map<std::array<long, 3>, long> face_id;
    auto pairs = vertex_pairs();
    for (std::size_t t = 0; t < m.tets.size(); ++t) {
        const auto& ids = m.tets[t];
        Simplex cell({m.vertices[ids[0]], m.vertices[ids[1]], m.vertices[ids[2]], m.vertices[ids[3]]});  // throws if flat
        std::array<long, 6> te{};
        for (int e = 0; e < 6; ++e) {
            std::array<long, 2> key{ids[pairs[e][0]], ids[pairs[e][1]]};
            std::sort(key.begin(), key.end());
            auto [it, fresh] = edge_id.try_emplace(key, static_cast<long>(m.edges.size()));
            if (fresh) {
                m.edges.push_back(key);
                m.edge_tets.emplace_back();
            }
            te[e] = it->second;
            m.edge_tets[it->second].push_back(static_cast<long>(t));
        }
        std::array<long, 4> tf{};
        for (int f = 0; f < 4; ++f) {
            auto o = opposite(f);
            std::array<long, 3> key{ids[o[0]], ids[o[1]], ids[o[2]]};
            std::sort(key.begin(), key.end());
            auto [it, fresh] = face_id.try_emplace(key, static_cast<long>(m.faces.size()));
            if (fresh) {
                m.faces.push_back(key);
                m.face_tets.emplace_back();
            }
            tf[f] = it->second;
            m.face_tets[it->second].push_back(static_cast<long>(t));
            if (m.face_tets[it->second].size() > 2)
                throw std::invalid_argument("face shared by more than two tets");
        }
        m.tet_edges.push_back(te);
        m.tet_faces.push_back(tf);

        // hanging or overlapping vertices: no other vertex may lie in the closed tet
        auto lam = cell.barycentric();
        for (long v = 0; v < nv; ++v) {
            if (std::find(ids.begin(), ids.end(), v) != ids.end())
                continue;
            bool inside = true;
            for (const auto& l : lam)
                if (l.evaluate(m.vertices[v]) < 0)
                    inside = false;
            if (inside)
                throw std::invalid_argument("nonconforming mesh: vertex " + std::to_string(v) + " lies on tet " +
                                            std::to_string(t));
        }
    }
    return assign_global_frames(std::move(m));
}

TetMesh load_mesh(const std::string& text)
{
    std::vector<Point3> vertices;
    std::vector<std::array<long, 4>> tets;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag))
            continue;
        auto bad = [&](const std::string& why) {
            return std::invalid_argument("mesh line " + std::to_string(lineno) + ": " + why);
        };
        std::vector<std::string> fields;
        for (std::string f; ls >> f;)
            fields.push_back(f);
        if (tag == "v") {
            if (fields.size() != 3)
                throw bad("expected 'v x y z'");
            Point3 p;
            for (int i = 0; i < 3; ++i) {
                try {
                    p[i] = parse_rational(fields[i]);
                } catch (const std::exception&) {
                    throw bad("bad coordinate '" + fields[i] + "'");
                }
            }
            vertices.push_back(p);
        } else if (tag == "t") {
            if (fields.size() != 4)
                throw bad("expected 't i j k l'");
            std::array<long, 4> t{};
            for (int i = 0; i < 4; ++i) {
                std::size_t used = 0;
                try {
                    t[i] = std::stol(fields[i], &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != fields[i].size())
                    throw bad("bad vertex index '" + fields[i] + "'");
            }
            tets.push_back(t);
        } else {
            throw bad("unknown record '" + tag + "'");
        }
    }
    return make_mesh(std::move(vertices), std::move(tets));
}

TetMesh builtin_mesh(const std::string& name)
{
    if (name == "reftet")
        return load_mesh("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nt 0 1 2 3\n");
    if (name == "twotet")
        return load_mesh("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nv 1 1 1\nt 0 1 2 3\nt 1 2 3 4\n");
    if (name == "cube6") {
        // Kuhn subdivision: one tet per monotone path from corner 0 to corner 7.
        std::ostringstream s;
        for (int i = 0; i < 8; ++i)
            s << "v " << (i & 1) << ' ' << ((i >> 1) & 1) << ' ' << ((i >> 2) & 1) << '\n';
        std::array<int, 3> axes{0, 1, 2};
        do {
            int c = 0;
            s << "t 0";
            for (int a : axes) {
                c |= 1 << a;
                s << ' ' << c;
            }
            s << '\n';
        } while (std::next_permutation(axes.begin(), axes.end()));
        return load_mesh(s.str());
    }
    throw std::invalid_argument("unknown built-in mesh: " + name);
}

Point3 induced_tangent(const TetMesh& m, std::size_t t, int face, int edge)
{
    auto of = outward_faces(m.cell(t));
    auto pr = vertex_pairs()[edge];
    const Point3& a = m.vertices[m.tets[t][pr[0]]];
    const Point3& b = m.vertices[m.tets[t][pr[1]]];
    for (const auto& fe : of.at(face).edges()) {
        if (fe.start == a && fe.end == b)
            return fe.t;
        if (fe.start == b && fe.end == a)
            return fe.t;
    }
    throw std::invalid_argument("edge is not on the face");
}

std::size_t expected_global_dimension(Family family, int k, const TetMesh& m)
{
    std::array<std::size_t, 4> per{};
    switch (family) {
    case Family::neilan:
        per = {30, static_cast<std::size_t>(3 * (k - 4) + 6 * (k - 3)), static_cast<std::size_t>(3 * (k - 4) * (k - 3) / 2),
               static_cast<std::size_t>(k * (k - 1) * (k - 2) / 2)};
        break;
    case Family::hinc:
        per = {30, static_cast<std::size_t>(14 * (k - 3) + 3), static_cast<std::size_t>(3 * (k - 3) * (k - 4) - 6),
               static_cast<std::size_t>(k * k * k - 6 * k * k + 11 * k)};
        break;
    case Family::huzhang:
        per = {6, static_cast<std::size_t>(5 * (k - 3)), static_cast<std::size_t>(3 * (k - 4) * (k - 3) / 2),
               static_cast<std::size_t>((k - 1) * (k - 2) * (k - 3))};
        break;
    case Family::dgVector:
        per = {0, 0, 0, static_cast<std::size_t>(k * (k - 1) * (k - 2) / 2)};
        break;
    }
    return per[0] * m.num_vertices() + per[1] * m.num_edges() + per[2] * m.num_faces() + per[3] * m.num_tets();
}

std::size_t GlobalSpace::global_index(const TetMesh& m, std::size_t tet, const DofFunctional& d,
                                      std::size_t position) const
{
    std::size_t id = 0;
    switch (d.entity) {
    case EntityType::vertex: id = static_cast<std::size_t>(m.tets[tet][d.entity_index]); break;
    case EntityType::edge: id = static_cast<std::size_t>(m.tet_edges[tet][d.entity_index]); break;
    case EntityType::face: id = static_cast<std::size_t>(m.tet_faces[tet][d.entity_index]); break;
    case EntityType::cell: id = tet; break;
    }
    int slot = entity_slot(d.entity);
    if (position >= per_entity[slot])
        throw std::logic_error("DOF position outside its entity block");
    return offset[slot] + id * per_entity[slot] + position;
}

GlobalSpace build_global_space(const TetMesh& m, Family family, int k)
{
    GlobalSpace s;
    s.family = family;
    s.k = k;
    s.elements.resize(m.num_tets());
    parallel_for(m.num_tets(), [&](std::size_t t) {
        s.elements[t] = build_element(family, k, m.cell(t), m.local_frames(t));
    });
    const Element& first = s.elements.front();
    s.per_entity = {first.entity_count(EntityType::vertex, 0), first.entity_count(EntityType::edge, 0),
                    first.entity_count(EntityType::face, 0), first.entity_count(EntityType::cell, 0)};
    std::array<std::size_t, 4> counts{m.num_vertices(), m.num_edges(), m.num_faces(), m.num_tets()};
    std::size_t acc = 0;
    for (int i = 0; i < 4; ++i) {
        s.offset[i] = acc;
        acc += s.per_entity[i] * counts[i];
    }
    s.dimension = acc;
    for (std::size_t t = 0; t < m.num_tets(); ++t) {
        const Element& e = s.elements[t];
        std::map<std::pair<int, int>, std::size_t> position;
        std::vector<std::size_t> l2g;
        for (const auto& d : e.dofs) {
            std::size_t& p = position[{entity_slot(d.entity), d.entity_index}];
            l2g.push_back(s.global_index(m, t, d, p++));
        }
        for (const auto& [key, n] : position)
            if (n != s.per_entity[key.first])
                throw std::logic_error("cells disagree on the DOFs per entity");
        s.local_to_global.push_back(std::move(l2g));
    }
    std::size_t expected = expected_global_dimension(family, k, m);
    if (s.dimension != expected)
        throw std::logic_error(to_string(family) + " global dimension " + std::to_string(s.dimension) +
                               " differs from the closed form " + std::to_string(expected));
    return s;
}

ConsistencyReport shared_dof_consistency(const TetMesh& m, const GlobalSpace& s)
{
    ConsistencyReport rep;
    std::map<std::size_t, const DofFunctional*> first;
    for (std::size_t t = 0; t < m.num_tets(); ++t)
        for (std::size_t i = 0; i < s.elements[t].dofs.size(); ++i) {
            const DofFunctional& d = s.elements[t].dofs[i];
            auto [it, fresh] = first.try_emplace(s.local_to_global[t][i], &d);
            if (fresh)
                continue;
            ++rep.shared_dofs;
            if (it->second->functional != d.functional || it->second->family != d.family ||
                it->second->field != d.field || it->second->axes != d.axes || it->second->direction != d.direction)
                ++rep.mismatches;
        }
    rep.pass = rep.mismatches == 0;
    return rep;
}

std::string to_string(GlobalOp op)
{
    switch (op) {
    case GlobalOp::def: return "def";
    case GlobalOp::inc: return "inc";
    case GlobalOp::div: return "div";
    }
    return "?";
}

GlobalOperator global_operator(const TetMesh& m, GlobalOp op, const GlobalSpace& from, const GlobalSpace& to)
{
    NamedOp named = op == GlobalOp::def ? NamedOp::def : op == GlobalOp::inc ? NamedOp::inc : NamedOp::div_sym;
    std::size_t nt = m.num_tets();
    // Local block: target DOFs of op applied to the local nodal basis, M D_S^{-1}.
    std::vector<RationalMatrix> blocks(nt);
    parallel_for(nt, [&](std::size_t t) {
        const Element& src = from.elements[t];
        const Element& dst = to.elements[t];
        std::vector<Field> images;
        for (const auto& f : src.shape.elements())
            images.push_back(apply_operator(named, f, src.cell));
        blocks[t] = certified_left_solve(dof_matrix(src), dof_matrix(dst, images));
    });

    GlobalOperator out;
    out.op = op;
    out.matrix = SparseRationalMatrix(to.dimension, from.dimension);
    // global target row -> (tet, local row)
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> owners(to.dimension);
    for (std::size_t t = 0; t < nt; ++t)
        for (std::size_t r = 0; r < to.local_to_global[t].size(); ++r)
            owners[to.local_to_global[t][r]].emplace_back(t, r);
    for (std::size_t R = 0; R < to.dimension; ++R) {
        const auto& own = owners[R];
        auto row_of = [&](std::size_t i) {
            std::map<std::size_t, Rational> row;
            auto [t, r] = own[i];
            for (std::size_t j = 0; j < from.local_to_global[t].size(); ++j)
                row[from.local_to_global[t][j]] = blocks[t](r, j);
            return row;
        };
        auto base = row_of(0);
        for (std::size_t i = 1; i < own.size(); ++i) {
            auto other = row_of(i);
            std::set<std::size_t> cols;
            for (const auto& [j, v] : base)
                cols.insert(j);
            for (const auto& [j, v] : other)
                cols.insert(j);
            for (auto j : cols) {
                auto a = base.find(j), b = other.find(j);
                Rational va = a == base.end() ? Rational(0) : a->second;
                Rational vb = b == other.end() ? Rational(0) : b->second;
                ++out.two_sided_checks;
                if (va != vb)
                    ++out.two_sided_mismatches;
                if (a == base.end() && vb != 0)
                    base[j] = vb;
            }
        }
        for (const auto& [j, v] : base)
            if (v != 0)
                out.matrix.add(R, j, v);
    }
    out.matrix.compress();
    if (out.two_sided_mismatches)
        throw std::runtime_error(to_string(op) + ": " + std::to_string(out.two_sided_mismatches) +
                                 " shared target DOFs differ between adjacent cells");
    return out;
}

std::vector<Rational> interpolate(const TetMesh& m, const GlobalSpace& s, const Field& f)
{
    std::vector<Rational> out(s.dimension);
    std::vector<bool> set(s.dimension, false);
    for (std::size_t t = 0; t < m.num_tets(); ++t) {
        const Element& e = s.elements[t];
        for (std::size_t i = 0; i < e.dofs.size(); ++i) {
            Rational v = apply_dof(e.dofs[i], f, e);
            std::size_t g = s.local_to_global[t][i];
            if (set[g] && out[g] != v)
                throw std::runtime_error("interpolant is not single-valued");
            out[g] = v;
            set[g] = true;
        }
    }
    return out;
}

namespace {

std::vector<Field> rigid_motions()
{
    std::vector<Field> out;
    for (int i = 0; i < 3; ++i)
        out.push_back(VecPoly::constant(unit_vector(i)));
    VecPoly x(Polynomial::variable(0), Polynomial::variable(1), Polynomial::variable(2));
    for (int i = 0; i < 3; ++i)
        out.push_back(cross(unit_vector(i), x));
    return out;
}

std::vector<Rational> multiply(const SparseRationalMatrix& a, const std::vector<Rational>& v)
{
    std::vector<Rational> out(a.rows());
    for (const auto& tr : a.triplets())
        out[tr.row] += tr.value * v[tr.col];
    return out;
}

std::size_t modular_rank(const SparseRationalMatrix& a, std::size_t attempt)
{
    return rank_lower_bound(a, attempt);
}

}  // namespace

DiscreteComplexReport verify_discrete_complex(const TetMesh& m, int k, bool exact_ranks)
{
    DiscreteComplexReport rep;
    rep.k = k;
    GlobalSpace V = build_global_space(m, Family::neilan, k);
    GlobalSpace S = build_global_space(m, Family::hinc, k);
    GlobalSpace D = build_global_space(m, Family::huzhang, k);
    GlobalSpace Q = build_global_space(m, Family::dgVector, k);
    rep.dims = {V.dimension, S.dimension, D.dimension, Q.dimension};
    rep.expected = {expected_global_dimension(Family::neilan, k, m), expected_global_dimension(Family::hinc, k, m),
                    expected_global_dimension(Family::huzhang, k, m),
                    expected_global_dimension(Family::dgVector, k, m)};
    rep.shared_dofs_consistent = true;
    for (const GlobalSpace* s : {&V, &S, &D, &Q})
        rep.shared_dofs_consistent = rep.shared_dofs_consistent && shared_dof_consistency(m, *s).pass;

    GlobalOperator def, inc, div;
    try {
        def = global_operator(m, GlobalOp::def, V, S);
        inc = global_operator(m, GlobalOp::inc, S, D);
        div = global_operator(m, GlobalOp::div, D, Q);
    } catch (const std::runtime_error& err) {
        rep.notes.push_back(err.what());
        rep.two_sided_mismatches = 1;
        return rep;
    }
    rep.two_sided_mismatches = def.two_sided_mismatches + inc.two_sided_mismatches + div.two_sided_mismatches;
    rep.notes.push_back("two-sided checks: def " + std::to_string(def.two_sided_checks) + ", inc " +
                        std::to_string(inc.two_sided_checks) + ", div " + std::to_string(div.two_sided_checks));

    auto id = inc.matrix * def.matrix;
    auto di = div.matrix * inc.matrix;
    rep.compositions_zero = id.triplets().empty() && di.triplets().empty();

    std::vector<std::vector<Rational>> rm;
    bool killed = true;
    for (const auto& f : rigid_motions()) {
        rm.push_back(interpolate(m, V, f));
        for (const auto& v : multiply(def.matrix, rm.back()))
            killed = killed && v == 0;
    }
    rep.rm_kernel = killed ? rank(from_columns(rm, V.dimension)) : 0;

    if (exact_ranks) {
        rep.ranks[0] = {echelon(def.matrix).rank, true, "sparse elimination over Q"};
        rep.ranks[1] = {echelon(inc.matrix).rank, true, "sparse elimination over Q"};
        rep.ranks[2] = {echelon(div.matrix).rank, true, "sparse elimination over Q"};
    } else {
        // rank_p <= rank over Q; upper bounds from the exact kernel and compositions
        const std::string how = "modular lower bound meets exact upper bound";
        for (std::size_t attempt = 0; attempt < 3; ++attempt) {
            std::size_t ld = modular_rank(def.matrix, attempt), li = modular_rank(inc.matrix, attempt),
                        lv = modular_rank(div.matrix, attempt);
            std::size_t ud = V.dimension - rep.rm_kernel;
            std::size_t ui = rep.compositions_zero ? S.dimension - ld : std::min(S.dimension, D.dimension);
            std::size_t uv = std::min(Q.dimension, rep.compositions_zero ? D.dimension - li : D.dimension);
            rep.ranks[0] = {ld, ld == ud, ld == ud ? how : "lower bound only"};
            rep.ranks[1] = {li, li == ui, li == ui ? how : "lower bound only"};
            rep.ranks[2] = {lv, lv == uv, lv == uv ? how : "lower bound only"};
            if (rep.ranks[0].exact && rep.ranks[1].exact && rep.ranks[2].exact)
                break;
        }
    }
    bool ranks_known = rep.ranks[0].exact && rep.ranks[1].exact && rep.ranks[2].exact;
    rep.nullity_def = V.dimension - rep.ranks[0].rank;
    rep.alternating_sum = 6 - static_cast<long>(V.dimension) + static_cast<long>(S.dimension) -
                          static_cast<long>(D.dimension) + static_cast<long>(Q.dimension);
    bool slots = rep.nullity_def == 6 && rep.ranks[0].rank == S.dimension - rep.ranks[1].rank &&
                 rep.ranks[1].rank == D.dimension - rep.ranks[2].rank && rep.ranks[2].rank == Q.dimension;
    if (!ranks_known)
        rep.notes.push_back("ranks not certified");
    rep.pass = ranks_known && slots && rep.dims == rep.expected && rep.compositions_zero && rep.rm_kernel == 6 &&
               rep.alternating_sum == 0 && rep.two_sided_mismatches == 0 && rep.shared_dofs_consistent;
    return rep;
}

}  // namespace elascomplex
