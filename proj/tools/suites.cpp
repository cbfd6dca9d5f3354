#include "suites.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "elascomplex/parallel.hpp"
#include "elascomplex/sampling.hpp"

namespace elascomplex::suites {

namespace {

Check check(std::string name, json expected, json actual)
{
    bool pass = expected == actual;
    return {std::move(name), std::move(expected), std::move(actual), pass};
}

Check flag(std::string name, bool ok, json detail = json())
{
    return {std::move(name), true, ok, ok, std::move(detail)};
}

json slots_json(const ExactnessReport& r)
{
    json out = json::array();
    for (const auto& s : r.slots)
        out.push_back({{"space", s.space}, {"dim", s.dim}, {"rank_in", s.rank_in}, {"nullity_out", s.nullity_out},
                       {"pass", s.pass}});
    return out;
}

std::size_t binom(int n, int r)
{
    if (r < 0 || n < r)
        return 0;
    std::size_t out = 1;
    for (int i = 1; i <= r; ++i)
        out = out * static_cast<std::size_t>(n - r + i) / static_cast<std::size_t>(i);
    return out;
}

// Nonnegative aggregate: zero iff every residual is zero.
Rational sum_squares(const std::vector<Rational>& rs)
{
    Rational s = 0;
    for (const auto& r : rs)
        s += r * r;
    return s;
}

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

template <class F>
Report timed(std::string suite, json params, F&& body)
{
    Report r;
    r.suite = std::move(suite);
    r.params = std::move(params);
    auto t0 = std::chrono::steady_clock::now();
    body(r);
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

json points_json(const Simplex& s)
{
    json out = json::array();
    for (const auto& v : s.vertices())
        out.push_back({rational_string(v[0]), rational_string(v[1]), rational_string(v[2])});
    return out;
}

}  // namespace

bool Report::pass() const
{
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

void Report::add(std::vector<Check> more)
{
    for (auto& c : more)
        checks.push_back(std::move(c));
}

json Report::to_json() const
{
    json cs = json::array();
    for (const auto& c : checks) {
        json j = {{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}};
        if (!c.detail.is_null())
            j["detail"] = c.detail;
        cs.push_back(std::move(j));
    }
    return {{"suite", suite}, {"parameters", params}, {"checks", cs}, {"pass", pass()}};
}

std::string rational_string(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

json element_json(const Element& e)
{
    json counts = json::object();
    const char* names[] = {"vertex", "edge", "face", "cell"};
    for (int t = 0; t < 4; ++t) {
        json per = json::array();
        int n = t == 0 ? 4 : t == 1 ? 6 : t == 2 ? 4 : 1;
        for (int i = 0; i < n; ++i)
            per.push_back(e.entity_count(static_cast<EntityType>(t), i));
        counts[names[t]] = per;
    }
    std::map<std::string, std::size_t> kinds;
    for (const auto& d : e.dofs)
        ++kinds[to_string(d.kind)];
    json fams = json::object();
    for (const auto& [k, v] : e.family_counts())
        fams[k] = v;
    json kinds_json = json::object();
    for (const auto& [k, v] : kinds)
        kinds_json[k] = v;
    return {{"family", to_string(e.family)}, {"k", e.k},           {"shape_degree", e.shape.spec().degree},
            {"dimension", e.shape.size()},    {"dofs", e.dofs.size()}, {"entity_counts", counts},
            {"dof_kinds", kinds_json},        {"dof_families", fams}, {"vertices", points_json(e.cell)}};
}

const std::vector<std::string>& complex_names_3d()
{
    static const std::vector<std::string> n{"polyDeRham", "polyElasticity", "koszulElasticity"};
    return n;
}

const std::vector<std::string>& complex_names_2d()
{
    static const std::vector<std::string> n{"divdiv2D", "hessian2D"};
    return n;
}

const std::vector<std::string>& decomposition_names_3d()
{
    static const std::vector<std::string> n{"P_vec_RM", "P_sym_defKoszul", "P_sym_incSym", "div_sym_bijective"};
    return n;
}

const std::vector<std::string>& decomposition_names_2d()
{
    static const std::vector<std::string> n{"divdiv_vec_RT", "divdiv_sym",     "divdiv_bijective",
                                            "hess_scalar_P1", "hess_sym", "rot_bijective"};
    return n;
}

std::vector<Check> complex_checks(const std::string& name, int k)
{
    bool is2d = name == "divdiv2D" || name == "hessian2D";
    Simplex dom = is2d ? reference_triangle() : reference_tet();
    auto r = verify_complex(name, k, dom);
    std::string tag = name + "[k=" + std::to_string(k) + "]";
    std::vector<Check> out;
    out.push_back(flag(tag + ".compositions_zero", r.compositions_zero));
    out.push_back(flag(tag + ".exact", r.pass, slots_json(r)));
    if (name == "polyElasticity") {
        auto m = operator_matrix(NamedOp::inc, build_basis({k, dom, Codomain::sym3}),
                                 build_basis({k - 2, dom, Codomain::sym3}));
        out.push_back(check(tag + ".rank_inc", static_cast<std::size_t>((k + 4) * (k * k - k) / 2), rank(m.entries)));
    }
    if (name == "koszulElasticity") {
        auto m = operator_matrix(NamedOp::koszul_dot_x, build_basis({k, dom, Codomain::sym3}),
                                 build_basis({k + 1, dom, Codomain::vec3}));
        out.push_back(check(tag + ".dim_Psym_x", static_cast<std::size_t>((k + 4) * (k + 3) * (k + 2) / 2 - 6),
                            rank(m.entries)));
    }
    return out;
}

std::vector<Check> decomposition_checks(const std::string& name, int k)
{
    bool is2d = std::find(decomposition_names_2d().begin(), decomposition_names_2d().end(), name) !=
                decomposition_names_2d().end();
    auto r = verify_decomposition(name, k, is2d ? reference_triangle() : reference_tet());
    std::string tag = name + "[k=" + std::to_string(k) + "]";
    return {flag(tag, r.pass,
                 {{"dim_a", r.dim_a}, {"dim_b", r.dim_b}, {"dim_total", r.dim_total}, {"rank_stacked", r.rank_stacked}})};
}

std::vector<Check> green_inc_checks(int pairs, int degree, std::uint64_t seed)
{
    Sampler s(seed);
    Simplex ref = reference_tet(), other = s.tet();
    std::vector<Rational> on_ref, on_other;
    for (int i = 0; i < pairs; ++i) {
        MatPoly a = s.sym(degree), b = s.sym(degree);
        on_ref.push_back(greens_inc_residual(a, b, ref));
        on_other.push_back(greens_inc_residual(a, b, other));
    }
    std::string n = std::to_string(pairs);
    return {check("green_inc.reference_tet[" + n + " pairs]", "0/1", rational_string(sum_squares(on_ref))),
            check("green_inc.random_tet[" + n + " pairs]", "0/1", rational_string(sum_squares(on_other)))};
}

std::vector<Check> green_divdiv_checks(int pairs, int degree, std::uint64_t seed)
{
    Sampler s(seed);
    Simplex tri = reference_triangle();
    FaceFrame f(tri);
    SpaceBasis tb = build_basis({degree, tri, Codomain::sym2});
    SpaceBasis vb = build_basis({degree, tri, Codomain::scalar});
    std::vector<Rational> res;
    for (int i = 0; i < pairs; ++i) {
        auto t = std::get<MatPoly>(s.combination(tb));
        auto v = std::get<Polynomial>(s.combination(vb));
        res.push_back(greens_divdiv_residual(t, v, f));
    }
    return {check("green_divdiv.reference_triangle[" + std::to_string(pairs) + " pairs]", "0/1",
                  rational_string(sum_squares(res)))};
}

std::vector<Check> identity_checks(int inputs, int degree, std::uint64_t seed)
{
    Sampler s(seed);
    std::vector<Check> out;
    for (auto id : {TraceIdentity::defTr1, TraceIdentity::defTr2, TraceIdentity::incTr1, TraceIdentity::incTr2,
                    TraceIdentity::edgeTT, TraceIdentity::edgeDivDiv, TraceIdentity::edgeTr2}) {
        bool vec_input = id == TraceIdentity::defTr1 || id == TraceIdentity::defTr2;
        Rational total = 0;
        for (int i = 0; i < inputs; ++i) {
            auto faces = outward_faces(s.tet());
            Field in = vec_input ? Field(s.vec(degree)) : Field(s.sym(degree));
            total += trace_commutation_check(id, in, faces[i % 4], i % 3);
        }
        out.push_back(check("identity." + to_string(id) + "[" + std::to_string(inputs) + " inputs]", "0/1",
                            rational_string(total)));
    }
    return out;
}

std::vector<Check> tr2_form_checks(int inputs, int degree, std::uint64_t seed)
{
    Sampler s(seed);
    bool agree = true, odd = true;
    for (int i = 0; i < inputs; ++i) {
        auto faces = outward_faces(s.tet());
        MatPoly t = s.sym(degree);
        const FaceFrame& f = faces[i % 4];
        MatPoly p = tr2(t, f);
        for (auto form : {Tr2Form::def_form, Tr2Form::curl_form, Tr2Form::sym_form})
            agree = agree && tr2(t, f, form) == p;
        odd = odd && tr2(t, f.flipped()) == Rational(-1) * p && tr1(t, f.flipped()) == tr1(t, f);
    }
    return {flag("tr2.forms_agree", agree), flag("tr2.odd_tr1.even", odd)};
}

std::vector<Check> bubble_checks(int k)
{
    Simplex K = reference_tet();
    std::vector<Check> out;
    std::string tag = "[k=" + std::to_string(k) + "]";
    auto tt = bubble_basis(BubbleKind::tt, k, K);
    out.push_back(check("dim_Bt" + tag, static_cast<std::size_t>(k * (k * k - 1)), tt.basis.size()));
    out.push_back(check("Bt_is_tr1_kernel" + tag, tt.kernel_dimension, tt.basis.size()));
    auto full = bubble_basis(BubbleKind::incFull, k, K);
    out.push_back(check("dim_B" + tag, static_cast<std::size_t>(k * k * k - 6 * k * k + 11 * k), full.basis.size()));
    out.push_back(check("B_is_trace_kernel" + tag, full.kernel_dimension, full.basis.size()));
    bool vanish = true;
    auto pairs = vertex_pairs();
    for (const auto& b : full.basis)
        for (const auto& pr : pairs)
            vanish = vanish && restricted_norm2(b, Simplex({K.vertex(pr[0]), K.vertex(pr[1])})) == 0;
    out.push_back(flag("B_vanishes_on_edges" + tag, vanish));
    auto bn = bubble_basis(BubbleKind::divNormal, k - 2, K);
    out.push_back(check("dim_Bn[degree " + std::to_string(k - 2) + "]", 6 * binom(k - 1, 3), bn.basis.size()));
    out.push_back(check("Bn_is_normal_kernel[degree " + std::to_string(k - 2) + "]", bn.kernel_dimension,
                        bn.basis.size()));
    auto el = verify_bubble_complex("elasticity", k, K);
    out.push_back(flag("bubble_complex.elasticity" + tag, el.pass, slots_json(el)));
    for (const char* name : {"divdiv2D", "hessian2D"}) {
        int kmin = std::string(name) == "divdiv2D" ? 3 : 5;
        if (k < kmin)
            continue;
        auto r = verify_bubble_complex(name, k, reference_triangle());
        out.push_back(flag(std::string("bubble_complex.") + name + tag, r.pass, slots_json(r)));
    }
    return out;
}

std::vector<Check> entity_count_checks(const Element& e)
{
    int k = e.k;
    std::array<std::size_t, 4> per{};
    switch (e.family) {
    case Family::hinc:
        per = {30, static_cast<std::size_t>(14 * (k - 3) + 3), static_cast<std::size_t>(3 * (k - 3) * (k - 4) - 6),
               static_cast<std::size_t>(k * k * k - 6 * k * k + 11 * k)};
        break;
    case Family::neilan:
        per = {30, static_cast<std::size_t>(9 * k - 30), 3 * binom(k - 3, 2), 3 * binom(k, 3)};
        break;
    case Family::huzhang:
        per = {6, static_cast<std::size_t>(5 * (k - 3)), 3 * binom(k - 3, 2), 6 * binom(k - 1, 3)};
        break;
    case Family::dgVector:
        per = {0, 0, 0, 3 * binom(k, 3)};
        break;
    }
    std::vector<Check> out;
    const char* names[] = {"vertex", "edge", "face", "cell"};
    std::size_t total = 0;
    for (int t = 0; t < 4; ++t) {
        int n = t == 0 ? 4 : t == 1 ? 6 : t == 2 ? 4 : 1;
        json actual = json::array(), expected = json::array();
        for (int i = 0; i < n; ++i) {
            actual.push_back(e.entity_count(static_cast<EntityType>(t), i));
            expected.push_back(per[t]);
        }
        total += per[t] * static_cast<std::size_t>(n);
        out.push_back(check(std::string("dofs_per_") + names[t], expected, actual));
    }
    out.push_back(check("dofs_total", e.shape.size(), e.dofs.size()));
    out.push_back(check("tally_total", total, e.dofs.size()));
    return out;
}

std::vector<Check> unisolvence_checks(const Element& e, const std::vector<std::size_t>& rows)
{
    auto r = check_unisolvence(e, rows);
    json actual = {{"dofs", r.dofs}, {"dimension", r.dimension}, {"rank", r.rank}};
    json expected = {{"dofs", r.dimension}, {"dimension", r.dimension}, {"rank", r.dimension}};
    std::vector<Check> out{check("unisolvent", expected, actual)};
    if (r.kernel_witness)
        out.back().detail = {{"kernel_dimension", r.dimension - r.rank}};
    return out;
}

std::vector<Check> determination_checks(const Element& e)
{
    std::vector<Check> out;
    for (int f = 0; f < 4; ++f) {
        auto r = trace_determination_check(e, f);
        out.push_back(flag("trace_determination.face" + std::to_string(f), r.pass,
                           {{"closure_dofs", r.closure_dofs}, {"closure_rank", r.closure_rank},
                            {"counterexample", r.counterexample.has_value()}}));
    }
    for (int ed = 0; ed < 6; ++ed)
        out.push_back(flag("edge_determination.edge" + std::to_string(ed), edge_trace_determination_check(e, ed).pass));
    return out;
}

std::vector<Check> mutation_checks(const Element& e)
{
    std::vector<Check> out;
    for (const auto& m : mutation_test(e))
        out.push_back(check("mutation.face" + std::to_string(m.face) + "." + m.family, m.dropped, m.kernel_dimension));
    if (out.empty())
        out.push_back(flag("mutation.has_face_families", false));
    return out;
}

std::vector<Check> assemble_checks(const TetMesh& m, int k, bool exact_ranks)
{
    auto r = verify_discrete_complex(m, k, exact_ranks);
    std::vector<Check> out;
    const char* spaces[] = {"V", "Sigma_inc", "Sigma_div", "Q"};
    for (int i = 0; i < 4; ++i)
        out.push_back(check(std::string("dim_") + spaces[i], r.expected[i], r.dims[i]));
    out.push_back(check("alternating_sum", 0, r.alternating_sum));
    out.push_back(flag("shared_dofs_single_valued", r.shared_dofs_consistent));
    out.push_back(check("two_sided_mismatches", 0, r.two_sided_mismatches));
    out.push_back(flag("compositions_zero", r.compositions_zero));
    out.push_back(check("rigid_motions_in_kernel", 6, r.rm_kernel));
    const char* ops[] = {"def", "inc", "div"};
    for (int i = 0; i < 3; ++i)
        out.push_back(flag(std::string("rank_") + ops[i] + "_certified", r.ranks[i].exact,
                           {{"rank", r.ranks[i].rank}, {"method", r.ranks[i].method}}));
    out.push_back(check("nullity_def", 6, r.nullity_def));
    out.push_back(check("rank_def=nullity_inc", r.dims[1] - r.ranks[1].rank, r.ranks[0].rank));
    out.push_back(check("rank_inc=nullity_div", r.dims[2] - r.ranks[2].rank, r.ranks[1].rank));
    out.push_back(check("rank_div=dim_Q", r.dims[3], r.ranks[2].rank));
    return out;
}

TetMesh resolve_mesh(const std::string& mesh)
{
    if (mesh == "reftet" || mesh == "twotet" || mesh == "cube6")
        return builtin_mesh(mesh);
    std::ifstream in(mesh);
    if (!in)
        throw std::invalid_argument("unknown mesh '" + mesh + "' (not a built-in name or readable file)");
    std::stringstream text;
    text << in.rdbuf();
    return load_mesh(text.str());
}

Report run_complexes(int k, bool only_2d)
{
    std::vector<std::string> names = complex_names_2d(), decs = decomposition_names_2d();
    if (!only_2d) {
        names.insert(names.begin(), complex_names_3d().begin(), complex_names_3d().end());
        decs.insert(decs.begin(), decomposition_names_3d().begin(), decomposition_names_3d().end());
    }
    json skipped = json::array();
    std::vector<std::string> run;
    for (const auto& n : names)
        (k >= complex_min_degree(n) ? run.push_back(n) : skipped.push_back(n));
    require(!run.empty(), "k is below the threshold of every requested complex");
    return timed("complexes", {{"k", k}, {"only_2d", only_2d}, {"skipped", skipped}}, [&](Report& r) {
        for (const auto& n : run)
            r.add(complex_checks(n, k));
        for (const auto& d : decs) {
            bool is2d = std::find(decomposition_names_2d().begin(), decomposition_names_2d().end(), d) !=
                        decomposition_names_2d().end();
            if (k >= (is2d ? 2 : 3))
                r.add(decomposition_checks(d, k));
            else
                r.params["skipped"].push_back(d);
        }
    });
}

Report run_traces(int degree, std::uint64_t seed)
{
    require(degree >= 1 && degree <= 6, "--degree must be in 1..6");
    return timed("traces", {{"degree", degree}, {"seed", seed}}, [&](Report& r) {
        r.add(tr2_form_checks(20, degree, seed));
        r.add(green_inc_checks(20, degree, seed + 1));
        r.add(green_divdiv_checks(20, degree, seed + 2));
        r.add(identity_checks(20, degree, seed + 3));
    });
}

Report run_bubbles(int k)
{
    require(k >= 4, "bubbles need --k >= 4");
    return timed("bubbles", {{"k", k}}, [&](Report& r) { r.add(bubble_checks(k)); });
}

Report run_unisolvence(Family family, int k, const std::string& tet, std::uint64_t seed, const std::string& drop_family)
{
    require(tet == "ref" || tet == "random", "--tet must be ref or random");
    require(k >= (family == Family::dgVector ? 3 : 6), to_string(family) + " needs a larger --k");
    Simplex cell = tet == "ref" ? reference_tet() : Sampler(seed).tet();
    json params = {{"family", to_string(family)}, {"k", k}, {"tet", tet}};
    if (tet == "random")
        params["seed"] = seed;
    if (!drop_family.empty())
        params["drop_family"] = drop_family;
    return timed("unisolvence", params, [&](Report& r) {
        Element e = build_element(family, k, cell);
        r.params["element"] = element_json(e);
        std::vector<std::size_t> rows;
        if (!drop_family.empty()) {
            auto fams = e.family_counts();
            require(fams.count(drop_family) > 0, "no DOF family named '" + drop_family + "'");
            // drop the family on the first entity that carries it
            int entity = -1;
            for (std::size_t i = 0; i < e.dofs.size(); ++i) {
                const auto& d = e.dofs[i];
                if (d.family == drop_family && entity < 0)
                    entity = d.entity_index;
                if (!(d.family == drop_family && d.entity_index == entity))
                    rows.push_back(i);
            }
        }
        r.add(entity_count_checks(e));
        r.add(unisolvence_checks(e, rows));
        if (family == Family::hinc && drop_family.empty()) {
            r.add(determination_checks(e));
            r.add(mutation_checks(e));
        }
    });
}

Report run_assemble(const std::string& mesh, int k)
{
    require(k >= 6, "assemble needs --k >= 6");
    TetMesh m = resolve_mesh(mesh);
    json counts = {{"vertices", m.num_vertices()}, {"edges", m.num_edges()}, {"faces", m.num_faces()},
                   {"tets", m.num_tets()}};
    return timed("assemble", {{"mesh", mesh}, {"k", k}, {"entities", counts}},
                 [&](Report& r) { r.add(assemble_checks(m, k)); });
}

std::vector<Report> run_all(int k, std::uint64_t seed)
{
    require(k >= 6, "all needs --k >= 6");
    std::vector<std::function<Report()>> jobs = {
        [&] { return run_complexes(k, false); },
        [&] { return run_traces(4, seed); },
        [&] { return run_bubbles(k); },
        [&] { return run_unisolvence(Family::hinc, k, "ref", seed); },
        [&] { return run_unisolvence(Family::huzhang, k, "ref", seed); },
        [&] { return run_unisolvence(Family::neilan, k, "ref", seed); },
        [&] { return run_assemble("reftet", k); },
        [&] { return run_assemble("twotet", k); },
        [&] { return run_assemble("cube6", k); },
    };
    std::vector<Report> out(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) { out[i] = jobs[i](); });
    return out;
}

}  // namespace elascomplex::suites
