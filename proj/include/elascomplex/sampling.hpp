#pragma once

#include <cstdint>
#include <random>

#include "elascomplex/polyspaces.hpp"

namespace elascomplex {

// Seeded generator of small rational data; identical seeds give identical draws.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    Rational rational(int max_num = 9, int max_den = 5);
    Point3 point();
    Polynomial poly(int deg, double density = 0.6);
    VecPoly vec(int deg);
    MatPoly sym(int deg);
    Field combination(const SpaceBasis& b);
    // Tetrahedron with small rational vertices and nonzero volume.
    Simplex tet();
    Simplex triangle();

private:
    std::uint64_t next() { return rng_(); }
    std::mt19937_64 rng_;
};

}  // namespace elascomplex
