#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "elascomplex/parallel.hpp"
#include "suites.hpp"

using namespace elascomplex;
using namespace elascomplex::suites;

namespace {

constexpr int kSchemaVersion = 1;

void print_report(const Report& r)
{
    std::cout << "== " << r.suite << ' ' << r.params.dump() << '\n';
    for (const auto& c : r.checks) {
        std::cout << (c.pass ? "  PASS  " : "  FAIL  ") << c.name;
        if (!c.actual.is_boolean())
            std::cout << "  expected=" << c.expected.dump() << " actual=" << c.actual.dump();
        if (!c.pass && !c.detail.is_null())
            std::cout << "  detail=" << c.detail.dump();
        std::cout << '\n';
    }
    std::printf("  %s  %zu checks  %.2fs\n", r.pass() ? "ok" : "FAILED", r.checks.size(), r.wall_seconds);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact verification of polynomial and finite element elasticity complexes"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_path;
    std::uint64_t seed = 1;
    app.add_option("--out", out_path, "Write the JSON report here");
    app.add_option("--seed", seed, "Seed for random tets and inputs");

    int k = 6, degree = 4;
    bool only_2d = false;
    std::string family = "hinc", tet = "ref", mesh = "reftet", drop;

    auto* complexes = app.add_subcommand("complexes", "Polynomial complexes and decompositions");
    complexes->add_option("--k", k)->required();
    complexes->add_flag("--2d", only_2d, "Only the two-dimensional complexes");

    auto* traces = app.add_subcommand("traces", "Trace formulas, Green's identities, commutation identities");
    traces->add_option("--degree", degree)->required();

    auto* bubbles = app.add_subcommand("bubbles", "Bubble spaces and bubble complexes");
    bubbles->add_option("--k", k)->required();

    auto* unisolvence = app.add_subcommand("unisolvence", "DOF counts, unisolvence, trace determination");
    unisolvence->add_option("--family", family)->required()->check(
        CLI::IsMember({"hinc", "huzhang", "neilan", "dgVector"}));
    unisolvence->add_option("--k", k)->required();
    unisolvence->add_option("--tet", tet)->check(CLI::IsMember({"ref", "random"}));
    unisolvence->add_option("--drop", drop, "Drop one DOF family on its first entity");

    auto* assemble = app.add_subcommand("assemble", "Global spaces and the discrete complex on a mesh");
    assemble->add_option("--mesh", mesh, "reftet | twotet | cube6 | mesh file")->required();
    assemble->add_option("--k", k)->required();

    auto* all = app.add_subcommand("all", "Every suite");
    all->add_option("--k", k)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::vector<Report> reports;
    try {
        if (*complexes)
            reports.push_back(run_complexes(k, only_2d));
        else if (*traces)
            reports.push_back(run_traces(degree, seed));
        else if (*bubbles)
            reports.push_back(run_bubbles(k));
        else if (*unisolvence)
            reports.push_back(run_unisolvence(family_from_string(family), k, tet, seed, drop));
        else if (*assemble)
            reports.push_back(run_assemble(mesh, k));
        else if (*all)
            reports = run_all(k, seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    bool pass = true;
    json body = json::array();
    for (const auto& r : reports) {
        print_report(r);
        pass = pass && r.pass();
        body.push_back(r.to_json());
    }
    std::cout << (pass ? "ALL PASS" : "FAILURES PRESENT") << "  (threads " << thread_count() << ")\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return 2;
        }
        json doc = {{"schema", "elascomplex-report"}, {"version", kSchemaVersion}, {"pass", pass}, {"reports", body}};
        out << doc.dump(2) << '\n';
    }
    return pass ? 0 : 1;
}
