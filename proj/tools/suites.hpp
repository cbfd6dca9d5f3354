#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "elascomplex/meshassembly.hpp"

namespace elascomplex::suites {

using json = nlohmann::ordered_json;

struct Check {
    std::string name;
    json expected, actual;
    bool pass = false;
    json detail;  // optional diagnostics
};

struct Report {
    std::string suite;
    json params = json::object();
    std::vector<Check> checks;
    double wall_seconds = 0;  // printed, never serialized

    bool pass() const;
    void add(std::vector<Check> more);
    json to_json() const;
};

// Lossless "p/q" string.
std::string rational_string(const Rational& q);
json element_json(const Element& e);

// Building blocks, each a list of named checks.
std::vector<Check> complex_checks(const std::string& name, int k);
std::vector<Check> decomposition_checks(const std::string& name, int k);
std::vector<Check> green_inc_checks(int pairs, int degree, std::uint64_t seed);
std::vector<Check> green_divdiv_checks(int pairs, int degree, std::uint64_t seed);
std::vector<Check> identity_checks(int inputs, int degree, std::uint64_t seed);
std::vector<Check> tr2_form_checks(int inputs, int degree, std::uint64_t seed);
std::vector<Check> bubble_checks(int k);
std::vector<Check> entity_count_checks(const Element& e);
std::vector<Check> unisolvence_checks(const Element& e, const std::vector<std::size_t>& rows = {});
std::vector<Check> determination_checks(const Element& e);
std::vector<Check> mutation_checks(const Element& e);
std::vector<Check> assemble_checks(const TetMesh& m, int k, bool exact_ranks = true);

const std::vector<std::string>& complex_names_3d();
const std::vector<std::string>& complex_names_2d();
const std::vector<std::string>& decomposition_names_3d();
const std::vector<std::string>& decomposition_names_2d();

// Subcommand suites. Invalid parameters throw std::invalid_argument.
Report run_complexes(int k, bool only_2d);
Report run_traces(int degree, std::uint64_t seed);
Report run_bubbles(int k);
Report run_unisolvence(Family family, int k, const std::string& tet, std::uint64_t seed,
                       const std::string& drop_family = "");
Report run_assemble(const std::string& mesh, int k);
std::vector<Report> run_all(int k, std::uint64_t seed);

// Built-in name or path to a mesh file.
TetMesh resolve_mesh(const std::string& mesh);

}  // namespace elascomplex::suites
