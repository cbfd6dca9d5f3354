#include "elascomplex/polyspaces.hpp"

#include <stdexcept>

namespace elascomplex {

namespace {

int components(Codomain c)
{
    switch (c) {
    case Codomain::scalar: return 1;
    case Codomain::vec3: return 3;
    case Codomain::vec2: return 2;
    case Codomain::sym3: return 6;
    case Codomain::sym2: return 3;
    case Codomain::mat3: return 9;
    }
    return 0;
}

bool is_2d_codomain(Codomain c)
{
    return c == Codomain::vec2 || c == Codomain::sym2;
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

bool field_is_zero(const Field& f)
{
    return std::visit([](const auto& g) { return g.is_zero(); }, f);
}

// Components of a 2D field in the face frame: scalar p, v.d_a, d_a.tau.d_b.
std::vector<Polynomial> face_components(const Field& f, Codomain c, const FaceFrame& fr)
{
    std::vector<Polynomial> out;
    switch (c) {
    case Codomain::scalar:
        out.push_back(std::get<Polynomial>(f));
        break;
    case Codomain::vec2: {
        const auto& v = std::get<VecPoly>(f);
        for (int a = 0; a < 2; ++a)
            out.push_back(dot(fr.d(a), v));
        break;
    }
    case Codomain::sym2: {
        const auto& m = std::get<MatPoly>(f);
        const int pairs[3][2] = {{0, 0}, {1, 1}, {0, 1}};
        for (auto& p : pairs)
            out.push_back(dot(fr.d(p[0]), dot_right(m, fr.d(p[1]))));
        break;
    }
    default:
        throw std::logic_error("not a face codomain");
    }
    return out;
}

std::vector<Polynomial> volume_components(const Field& f, Codomain c)
{
    std::vector<Polynomial> out;
    switch (c) {
    case Codomain::scalar:
        out.push_back(std::get<Polynomial>(f));
        break;
    case Codomain::vec3: {
        const auto& v = std::get<VecPoly>(f);
        out.assign(v.c.begin(), v.c.end());
        break;
    }
    case Codomain::sym3: {
        const auto& m = std::get<MatPoly>(f);
        for (auto [i, j] : kSymComponents)
            out.push_back(m(i, j));
        break;
    }
    case Codomain::mat3: {
        const auto& m = std::get<MatPoly>(f);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                out.push_back(m(i, j));
        break;
    }
    default:
        throw std::logic_error("not a volume codomain");
    }
    return out;
}

bool holds_expected(const Field& f, Codomain c)
{
    switch (c) {
    case Codomain::scalar: return std::holds_alternative<Polynomial>(f);
    case Codomain::vec3:
    case Codomain::vec2: return std::holds_alternative<VecPoly>(f);
    default: return std::holds_alternative<MatPoly>(f);
    }
}

Field scaled_sum(const std::vector<Field>& basis, const std::vector<Rational>& c)
{
    if (basis.empty())
        throw std::invalid_argument("empty basis");
    Field out = std::visit([](const auto& g) -> Field { return std::decay_t<decltype(g)>(3); }, basis[0]);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (c[i] == 0)
            continue;
        std::visit(
            [&](auto& acc) {
                using T = std::decay_t<decltype(acc)>;
                acc += c[i] * std::get<T>(basis[i]);
            },
            out);
    }
    return out;
}

std::size_t exact_rank(const std::vector<std::vector<Rational>>& cols, std::size_t rows)
{
    if (cols.empty())
        return 0;
    return rank(from_columns(cols, rows));
}

}  // namespace

std::string to_string(Codomain c)
{
    switch (c) {
    case Codomain::scalar: return "scalar";
    case Codomain::vec3: return "vec3";
    case Codomain::vec2: return "vec2";
    case Codomain::sym3: return "sym3";
    case Codomain::sym2: return "sym2";
    case Codomain::mat3: return "mat3";
    }
    return "?";
}

std::size_t expected_dimension(const SpaceSpec& spec)
{
    if (spec.degree < 0)
        return 0;
    int d = spec.domain.dim();
    return static_cast<std::size_t>(components(spec.codomain)) * binomial(spec.degree + d, d);
}

Simplex reference_tet()
{
    return Simplex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

Simplex reference_triangle()
{
    return Simplex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
}

SpaceBasis::SpaceBasis(SpaceSpec spec) : spec_(std::move(spec))
{
    int d = spec_.domain.dim();
    if (d != 2 && d != 3)
        throw std::invalid_argument("spaces live on triangles or tetrahedra");
    if (is_2d_codomain(spec_.codomain) && d != 2)
        throw std::invalid_argument("2D codomain needs a triangle");
    if ((spec_.codomain == Codomain::vec3 || spec_.codomain == Codomain::sym3 || spec_.codomain == Codomain::mat3) && d != 3)
        throw std::invalid_argument("3D codomain needs a tetrahedron");
    if (spec_.degree < 0)
        return;
    monomials_ = monomials_up_to(spec_.degree, d);

    std::vector<Polynomial> scalars;
    if (d == 3) {
        for (const auto& m : monomials_)
            scalars.push_back(Polynomial::term(m, 1));
    } else {
        frame_ = FaceFrame(spec_.domain);
        std::array<std::vector<Polynomial>, 2> pw;
        for (int a = 0; a < 2; ++a) {
            Polynomial xi = Polynomial::affine(-dot(frame_.t(a), frame_.origin()), frame_.t(a));
            pw[a].push_back(Polynomial::constant(1));
            for (int e = 1; e <= spec_.degree; ++e)
                pw[a].push_back(pw[a].back() * xi);
        }
        for (const auto& m : monomials_)
            scalars.push_back(pw[0][m.exp[0]] * pw[1][m.exp[1]]);
    }

    switch (spec_.codomain) {
    case Codomain::scalar:
        elements_.assign(scalars.begin(), scalars.end());
        break;
    case Codomain::vec3:
        for (int c = 0; c < 3; ++c)
            for (const auto& s : scalars)
                elements_.push_back(s * VecPoly::constant(unit_vector(c)));
        break;
    case Codomain::vec2:
        for (int a = 0; a < 2; ++a)
            for (const auto& s : scalars)
                elements_.push_back(s * VecPoly::constant(frame_.t(a)));
        break;
    case Codomain::sym3:
        for (int c = 0; c < 6; ++c)
            for (const auto& s : scalars)
                elements_.push_back(s * MatPoly::constant(sym_unit(c)));
        break;
    case Codomain::sym2: {
        const auto& t = frame_;
        Mat3 units[3] = {outer(t.t(0), t.t(0)), outer(t.t(1), t.t(1)), zero_mat3()};
        Mat3 a = outer(t.t(0), t.t(1)), b = outer(t.t(1), t.t(0));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                units[2][i][j] = a[i][j] + b[i][j];
        for (auto& u : units)
            for (const auto& s : scalars)
                elements_.push_back(s * MatPoly::constant(u));
        break;
    }
    case Codomain::mat3:
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (const auto& s : scalars)
                    elements_.push_back(s * MatPoly::constant(outer(unit_vector(i), unit_vector(j))));
        break;
    }
}

SpaceBasis build_basis(const SpaceSpec& spec)
{
    return SpaceBasis(spec);
}

std::optional<std::vector<Rational>> SpaceBasis::coordinates(const Field& f) const
{
    if (!holds_expected(f, spec_.codomain))
        return std::nullopt;
    std::size_t per = monomials_.size();
    std::vector<Rational> out(elements_.size());
    if (elements_.empty())
        return field_is_zero(f) ? std::optional(out) : std::nullopt;
    int d = spec_.domain.dim();
    std::vector<Polynomial> comps;
    if (d == 3) {
        if (spec_.codomain == Codomain::sym3 && !std::get<MatPoly>(f).is_symmetric())
            return std::nullopt;
        comps = volume_components(f, spec_.codomain);
    } else {
        for (auto& p : face_components(f, spec_.codomain, frame_))
            comps.push_back(compose_affine(p, frame_.origin(), {frame_.d(0), frame_.d(1)}));
    }
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (comps[c].degree() > spec_.degree)
            return std::nullopt;
        for (const auto& [m, coef] : comps[c].terms())
            out[c * per + monomial_index(m, d)] = coef;
    }
    // Face fields must also be tangential and constant along the normal.
    if (d == 2 && !(combine(out) == f))
        return std::nullopt;
    return out;
}

Field SpaceBasis::combine(const std::vector<Rational>& coeffs) const
{
    if (coeffs.size() != elements_.size())
        throw std::invalid_argument("coefficient count does not match the basis");
    return scaled_sum(elements_, coeffs);
}

std::vector<Rational> field_coordinates(const Field& f, int max_degree, bool symmetric)
{
    std::vector<Polynomial> comps;
    if (std::holds_alternative<Polynomial>(f))
        comps = volume_components(f, Codomain::scalar);
    else if (std::holds_alternative<VecPoly>(f))
        comps = volume_components(f, Codomain::vec3);
    else
        comps = volume_components(f, symmetric ? Codomain::sym3 : Codomain::mat3);
    std::size_t per = monomial_count(max_degree, 3);
    std::vector<Rational> out(per * comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (comps[c].degree() > max_degree)
            throw std::domain_error("field degree exceeds coordinate range");
        for (const auto& [m, coef] : comps[c].terms())
            out[c * per + monomial_index(m, 3)] = coef;
    }
    return out;
}

std::string to_string(NamedOp op)
{
    switch (op) {
    case NamedOp::grad: return "grad";
    case NamedOp::curl: return "curl";
    case NamedOp::div: return "div";
    case NamedOp::def: return "def";
    case NamedOp::inc: return "inc";
    case NamedOp::div_sym: return "div";
    case NamedOp::koszul_dot_x: return "tau.x";
    case NamedOp::koszul_x_cross: return "x*tau*x";
    case NamedOp::koszul_sym_vx: return "sym(v x^T)";
    case NamedOp::pi_RM: return "pi_RM";
    case NamedOp::sym_curl_F: return "sym curl_F";
    case NamedOp::divdiv_F: return "div_F div_F";
    case NamedOp::hess_F: return "hess_F";
    case NamedOp::rot_F: return "rot_F";
    case NamedOp::dot_x_perp: return "tau.x_perp";
    case NamedOp::xxT: return "x x^T v";
    case NamedOp::x_tau_x: return "x.tau.x";
    case NamedOp::sym_x_perp_v: return "sym(x_perp v^T)";
    }
    return "?";
}

Field apply_operator(NamedOp op, const Field& f, const Simplex& domain)
{
    const Point3& c = domain.center();
    auto face = [&] { return FaceFrame(domain); };
    switch (op) {
    case NamedOp::grad: return gradient(std::get<Polynomial>(f));
    case NamedOp::curl: return curl(std::get<VecPoly>(f));
    case NamedOp::div: return div(std::get<VecPoly>(f));
    case NamedOp::def: return def(std::get<VecPoly>(f)).mat();
    case NamedOp::inc: return inc(SymMatPoly(std::get<MatPoly>(f))).mat();
    case NamedOp::div_sym: return div_row(std::get<MatPoly>(f));
    case NamedOp::koszul_dot_x: return koszul_dot_x(SymMatPoly(std::get<MatPoly>(f)), c);
    case NamedOp::koszul_x_cross: return koszul_x_cross(SymMatPoly(std::get<MatPoly>(f)), c).mat();
    case NamedOp::koszul_sym_vx: return koszul_sym_vx(std::get<VecPoly>(f), c).mat();
    case NamedOp::pi_RM: return pi_RM(std::get<VecPoly>(f), c);
    case NamedOp::sym_curl_F: return sym_curl_F(std::get<VecPoly>(f), face());
    case NamedOp::divdiv_F: return divdiv_F(std::get<MatPoly>(f), face());
    case NamedOp::hess_F: return surface_hess(std::get<Polynomial>(f), face());
    case NamedOp::rot_F: return rot_F(std::get<MatPoly>(f), face());
    case NamedOp::dot_x_perp: return dot_right(std::get<MatPoly>(f), face_position_perp(face()));
    case NamedOp::xxT: {
        VecPoly x = face_position(face());
        return std::get<Polynomial>(f) * outer(x, x);
    }
    case NamedOp::x_tau_x: {
        VecPoly x = face_position(face());
        return dot(x, dot_right(std::get<MatPoly>(f), x));
    }
    case NamedOp::sym_x_perp_v: return sym(outer(face_position_perp(face()), std::get<VecPoly>(f)));
    }
    throw std::logic_error("unknown operator");
}

OperatorMatrix operator_matrix(NamedOp op, const SpaceBasis& from, const SpaceBasis& to)
{
    OperatorMatrix out{op, from.spec(), to.spec(), RationalMatrix(to.size(), from.size())};
    for (std::size_t j = 0; j < from.size(); ++j) {
        auto coords = to.coordinates(apply_operator(op, from.elements()[j], from.spec().domain));
        if (!coords)
            throw std::domain_error(to_string(op) + ": image of basis element " + std::to_string(j) +
                                    " is not in the target space");
        out.entries.set_column(j, *coords);
    }
    return out;
}

ExactnessReport verify_sequence(const SequenceSpec& seq)
{
    ExactnessReport rep;
    rep.name = seq.name;
    rep.k = seq.k;
    std::size_t n = seq.spaces.size();
    if (n < 2 || seq.maps.size() + 1 != n)
        throw std::invalid_argument("sequence needs n spaces and n-1 maps");

    auto coords_of = [&](std::size_t i, const Field& f) { return seq.spaces[i].coords(f); };
    auto coord_rows = [&](std::size_t i) { return coords_of(i, seq.spaces[i].basis.front()).size(); };

    bool ok = true;
    std::vector<std::size_t> ranks(n - 1);
    std::vector<std::vector<std::vector<Rational>>> images(n - 1);
    std::vector<std::vector<Field>> image_fields(n - 1);
    rep.compositions_zero = true;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto& src = seq.spaces[i];
        const auto& dst = seq.spaces[i + 1];
        for (const auto& b : src.basis) {
            image_fields[i].push_back(seq.maps[i](b));
            images[i].push_back(coords_of(i + 1, image_fields[i].back()));
        }
        ranks[i] = exact_rank(images[i], coord_rows(i + 1));
        if (dst.is_subspace) {
            std::vector<std::vector<Rational>> cols;
            for (const auto& b : dst.basis)
                cols.push_back(coords_of(i + 1, b));
            std::size_t rb = exact_rank(cols, coord_rows(i + 1));
            if (rb != dst.basis.size()) {
                ok = false;
                rep.notes.push_back(dst.name + ": basis is dependent");
            }
            cols.insert(cols.end(), images[i].begin(), images[i].end());
            if (exact_rank(cols, coord_rows(i + 1)) != rb) {
                ok = false;
                rep.notes.push_back(src.name + " -> " + dst.name + ": image leaves the target space");
            }
        }
    }
    for (std::size_t i = 0; i + 2 < n; ++i) {
        for (std::size_t j = 0; j < image_fields[i].size(); ++j) {
            if (!field_is_zero(seq.maps[i + 1](image_fields[i][j]))) {
                rep.compositions_zero = false;
                rep.notes.push_back("composition " + seq.spaces[i].name + " -> " + seq.spaces[i + 2].name +
                                    " is nonzero on basis element " + std::to_string(j));
                break;
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        SlotReport s;
        s.space = seq.spaces[i].name;
        s.dim = seq.spaces[i].basis.size();
        if (i == 0) {
            std::vector<std::vector<Rational>> cols;
            bool in_kernel = true;
            for (const auto& f : seq.start_kernel) {
                cols.push_back(coords_of(0, f));
                in_kernel = in_kernel && field_is_zero(seq.maps[0](f));
            }
            s.rank_in = exact_rank(cols, coord_rows(0));
            if (!in_kernel || s.rank_in != seq.start_kernel.size()) {
                ok = false;
                rep.notes.push_back(s.space + ": stated kernel is not an independent subset of the kernel");
            }
        } else {
            s.rank_in = ranks[i - 1];
        }
        if (i + 1 < n) {
            s.nullity_out = s.dim - ranks[i];
        } else {
            s.nullity_out = s.dim - seq.end_quotient.size();
            if (!seq.end_quotient.empty()) {
                auto cols = images[i - 1];
                for (const auto& q : seq.end_quotient)
                    cols.push_back(coords_of(i, q));
                if (exact_rank(cols, coord_rows(i)) != s.dim) {
                    ok = false;
                    rep.notes.push_back(s.space + ": image and quotient do not span");
                }
            }
        }
        s.pass = s.rank_in == s.nullity_out;
        if (!s.pass)
            rep.notes.push_back(s.space + ": rank in " + std::to_string(s.rank_in) + " != nullity out " +
                                std::to_string(s.nullity_out));
        ok = ok && s.pass;
        rep.slots.push_back(s);
    }
    rep.pass = ok && rep.compositions_zero;
    return rep;
}

namespace {

SequenceSpace canonical(const std::string& name, const SpaceBasis& b)
{
    SequenceSpace s;
    s.name = name;
    s.basis = b.elements();
    s.coords = [b](const Field& f) {
        auto c = b.coordinates(f);
        if (!c)
            throw std::domain_error("field outside " + to_string(b.spec().codomain) + " P_" +
                                    std::to_string(b.spec().degree));
        return *c;
    };
    return s;
}

std::function<Field(const Field&)> op_on(NamedOp op, const Simplex& domain)
{
    return [op, domain](const Field& f) { return apply_operator(op, f, domain); };
}

std::string pname(const std::string& base, int deg, const std::string& cod)
{
    return base + std::to_string(deg) + cod;
}

}  // namespace

int complex_min_degree(const std::string& name)
{
    if (name == "polyDeRham")
        return 2;
    if (name == "polyElasticity" || name == "koszulElasticity")
        return 3;
    if (name == "divdiv2D")
        return 2;
    if (name == "hessian2D")
        return 1;
    throw std::invalid_argument("unknown complex: " + name);
}

ExactnessReport verify_complex(const std::string& name, int k, const Simplex& domain)
{
    int kmin = complex_min_degree(name);
    if (k < kmin)
        throw std::invalid_argument(name + " needs k >= " + std::to_string(kmin));
    auto B = [&](int deg, Codomain c) { return build_basis({deg, domain, c}); };
    SequenceSpec seq;
    seq.name = name;
    seq.k = k;
    const Point3& c = domain.center();
    if (name == "polyDeRham" || name == "polyElasticity" || name == "koszulElasticity") {
        if (domain.dim() != 3)
            throw std::invalid_argument(name + " lives on a tetrahedron");
    } else if (domain.dim() != 2) {
        throw std::invalid_argument(name + " lives on a triangle");
    }

    if (name == "polyDeRham") {
        seq.spaces = {canonical(pname("P", k + 1, ""), B(k + 1, Codomain::scalar)),
                      canonical(pname("P", k, "(R3)"), B(k, Codomain::vec3)),
                      canonical(pname("P", k - 1, "(R3)"), B(k - 1, Codomain::vec3)),
                      canonical(pname("P", k - 2, ""), B(k - 2, Codomain::scalar))};
        seq.maps = {op_on(NamedOp::grad, domain), op_on(NamedOp::curl, domain), op_on(NamedOp::div, domain)};
        seq.start_kernel = {Polynomial::constant(1)};
    } else if (name == "polyElasticity") {
        seq.spaces = {canonical(pname("P", k + 1, "(R3)"), B(k + 1, Codomain::vec3)),
                      canonical(pname("P", k, "(S)"), B(k, Codomain::sym3)),
                      canonical(pname("P", k - 2, "(S)"), B(k - 2, Codomain::sym3)),
                      canonical(pname("P", k - 3, "(R3)"), B(k - 3, Codomain::vec3))};
        seq.maps = {op_on(NamedOp::def, domain), op_on(NamedOp::inc, domain), op_on(NamedOp::div_sym, domain)};
        for (auto& r : rigid_motions(c))
            seq.start_kernel.push_back(r);
    } else if (name == "koszulElasticity") {
        SequenceSpace rm;
        rm.name = "RM";
        for (auto& r : rigid_motions(c))
            rm.basis.push_back(r);
        rm.coords = [](const Field& f) { return field_coordinates(f, 1, false); };
        rm.is_subspace = true;
        seq.spaces = {canonical(pname("P", k - 3, "(R3)"), B(k - 3, Codomain::vec3)),
                      canonical(pname("P", k - 2, "(S)"), B(k - 2, Codomain::sym3)),
                      canonical(pname("P", k, "(S)"), B(k, Codomain::sym3)),
                      canonical(pname("P", k + 1, "(R3)"), B(k + 1, Codomain::vec3)), rm};
        seq.maps = {op_on(NamedOp::koszul_sym_vx, domain), op_on(NamedOp::koszul_x_cross, domain),
                    op_on(NamedOp::koszul_dot_x, domain), op_on(NamedOp::pi_RM, domain)};
    } else if (name == "divdiv2D") {
        SpaceBasis v = B(k + 1, Codomain::vec2);
        seq.spaces = {canonical(pname("P", k + 1, "(F;R2)"), v), canonical(pname("P", k, "(F;S)"), B(k, Codomain::sym2)),
                      canonical(pname("P", k - 2, "(F)"), B(k - 2, Codomain::scalar))};
        seq.maps = {op_on(NamedOp::sym_curl_F, domain), op_on(NamedOp::divdiv_F, domain)};
        seq.start_kernel = {VecPoly::constant(v.frame().t(0)), VecPoly::constant(v.frame().t(1)),
                            face_position(v.frame())};
    } else if (name == "hessian2D") {
        SpaceBasis p = B(k + 2, Codomain::scalar);
        seq.spaces = {canonical(pname("P", k + 2, "(F)"), p), canonical(pname("P", k, "(F;S)"), B(k, Codomain::sym2)),
                      canonical(pname("P", k - 1, "(F;R2)"), B(k - 1, Codomain::vec2))};
        seq.maps = {op_on(NamedOp::hess_F, domain), op_on(NamedOp::rot_F, domain)};
        seq.start_kernel = {p.elements()[0], p.elements()[1], p.elements()[2]};
    }
    return verify_sequence(seq);
}

DecompositionReport verify_decomposition(const std::string& name, int k, const Simplex& domain)
{
    DecompositionReport rep;
    rep.name = name;
    rep.k = k;
    auto B = [&](int deg, Codomain c) { return build_basis({deg, domain, c}); };
    auto images = [&](NamedOp op, const SpaceBasis& from, const SpaceBasis& to) {
        std::vector<std::vector<Rational>> cols;
        for (const auto& e : from.elements()) {
            auto c = to.coordinates(apply_operator(op, e, domain));
            if (!c)
                throw std::domain_error(name + ": image leaves the total space");
            cols.push_back(*c);
        }
        return cols;
    };
    auto coords = [&](const std::vector<Field>& fs, const SpaceBasis& to) {
        std::vector<std::vector<Rational>> cols;
        for (const auto& f : fs)
            cols.push_back(*to.coordinates(f));
        return cols;
    };
    // Direct sum A + B = total.
    auto direct = [&](std::vector<std::vector<Rational>> a, const std::vector<std::vector<Rational>>& b,
                      std::size_t dim) {
        rep.dim_total = dim;
        rep.dim_a = exact_rank(a, dim);
        rep.dim_b = exact_rank(b, dim);
        a.insert(a.end(), b.begin(), b.end());
        rep.rank_stacked = exact_rank(a, dim);
        rep.pass = rep.dim_a + rep.dim_b == dim && rep.rank_stacked == dim;
    };
    // op restricted to span(sources) is a bijection onto a space of dimension dim.
    auto bijection = [&](const std::vector<Field>& sources, const std::vector<std::vector<Rational>>& src_coords,
                         std::size_t src_rows, NamedOp op, const SpaceBasis& to) {
        rep.dim_total = to.size();
        rep.dim_a = exact_rank(src_coords, src_rows);
        std::vector<std::vector<Rational>> img;
        for (const auto& s : sources) {
            auto c = to.coordinates(apply_operator(op, s, domain));
            if (!c)
                throw std::domain_error(name + ": image leaves the target space");
            img.push_back(*c);
        }
        rep.dim_b = exact_rank(img, to.size());
        rep.rank_stacked = rep.dim_b;
        rep.pass = rep.dim_a == to.size() && rep.dim_b == to.size() && sources.size() == to.size();
    };
    auto sources_of = [&](NamedOp op, const SpaceBasis& from) {
        std::vector<Field> out;
        for (const auto& e : from.elements())
            out.push_back(apply_operator(op, e, domain));
        return out;
    };

    if (name == "P_vec_RM") {
        SpaceBasis total = B(k + 1, Codomain::vec3);
        std::vector<Field> rm;
        for (auto& r : rigid_motions(domain.center()))
            rm.push_back(r);
        direct(images(NamedOp::koszul_dot_x, B(k, Codomain::sym3), total), coords(rm, total), total.size());
    } else if (name == "P_sym_defKoszul") {
        SpaceBasis total = B(k, Codomain::sym3);
        direct(images(NamedOp::def, B(k + 1, Codomain::vec3), total),
               images(NamedOp::koszul_x_cross, B(k - 2, Codomain::sym3), total), total.size());
    } else if (name == "P_sym_incSym") {
        SpaceBasis total = B(k - 2, Codomain::sym3);
        direct(images(NamedOp::inc, B(k, Codomain::sym3), total),
               images(NamedOp::koszul_sym_vx, B(k - 3, Codomain::vec3), total), total.size());
    } else if (name == "div_sym_bijective") {
        SpaceBasis q = B(k, Codomain::vec3);
        SpaceBasis sym_space = B(k + 1, Codomain::sym3);
        auto src = sources_of(NamedOp::koszul_sym_vx, q);
        bijection(src, coords(src, sym_space), sym_space.size(), NamedOp::div_sym, q);
    } else if (name == "divdiv_vec_RT") {
        SpaceBasis total = B(k + 2, Codomain::vec2);
        const auto& fr = total.frame();
        std::vector<Field> rt = {VecPoly::constant(fr.t(0)), VecPoly::constant(fr.t(1)), face_position(fr)};
        direct(images(NamedOp::dot_x_perp, B(k + 1, Codomain::sym2), total), coords(rt, total), total.size());
    } else if (name == "divdiv_sym") {
        SpaceBasis total = B(k, Codomain::sym2);
        direct(images(NamedOp::sym_curl_F, B(k + 1, Codomain::vec2), total),
               images(NamedOp::xxT, B(k - 2, Codomain::scalar), total), total.size());
    } else if (name == "divdiv_bijective") {
        SpaceBasis p = B(k - 2, Codomain::scalar);
        SpaceBasis sym_space = B(k, Codomain::sym2);
        auto src = sources_of(NamedOp::xxT, p);
        bijection(src, coords(src, sym_space), sym_space.size(), NamedOp::divdiv_F, p);
    } else if (name == "hess_scalar_P1") {
        SpaceBasis total = B(k + 2, Codomain::scalar);
        std::vector<Field> p1(total.elements().begin(), total.elements().begin() + 3);
        direct(images(NamedOp::x_tau_x, B(k, Codomain::sym2), total), coords(p1, total), total.size());
    } else if (name == "hess_sym") {
        SpaceBasis total = B(k, Codomain::sym2);
        direct(images(NamedOp::hess_F, B(k + 2, Codomain::scalar), total),
               images(NamedOp::sym_x_perp_v, B(k - 1, Codomain::vec2), total), total.size());
    } else if (name == "rot_bijective") {
        SpaceBasis v = B(k - 1, Codomain::vec2);
        SpaceBasis sym_space = B(k, Codomain::sym2);
        auto src = sources_of(NamedOp::sym_x_perp_v, v);
        bijection(src, coords(src, sym_space), sym_space.size(), NamedOp::rot_F, v);
    } else {
        throw std::invalid_argument("unknown decomposition: " + name);
    }
    return rep;
}

bool radial_kernel_check(int k, const Rational& ell, const Point3& center)
{
    if (ell <= 0)
        throw std::invalid_argument("ell must be positive");
    SpaceBasis p = build_basis({k, reference_tet(), Codomain::scalar});
    VecPoly x = VecPoly::position(center);
    RationalMatrix m(p.size(), p.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
        const auto& e = std::get<Polynomial>(p.elements()[j]);
        Polynomial img = ell * e + dot(x, gradient(e));
        m.set_column(j, *p.coordinates(img));
    }
    return rank(m) == p.size();
}

}  // namespace elascomplex
