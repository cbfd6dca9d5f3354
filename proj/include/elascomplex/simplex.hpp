#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "elascomplex/tensor.hpp"

namespace elascomplex {

class Simplex {
public:
    Simplex() = default;
    // dim = vertices.size() - 1; center defaults to the barycenter.
    explicit Simplex(std::vector<Point3> vertices);
    Simplex(std::vector<Point3> vertices, Point3 center);

    int dim() const { return static_cast<int>(vertices_.size()) - 1; }
    const std::vector<Point3>& vertices() const { return vertices_; }
    const Point3& vertex(int i) const { return vertices_.at(i); }
    const Point3& center() const { return center_; }
    Point3 barycenter() const;
    // Squared d-dimensional measure (length^2, area^2, volume^2).
    const Rational& measure_squared() const { return measure_sq_; }
    // Signed volume for dim 3 (det of edge vectors / 6).
    Rational signed_volume() const;

    // Barycentric coordinates as affine functions of x (dim 3 only).
    std::vector<Polynomial> barycentric() const;

    // Average of p over the simplex (integral divided by measure).
    Rational mean(const Polynomial& p) const;
    Rational monomial_mean(const Monomial& m) const;  // cached

private:

    std::vector<Point3> vertices_;
    Point3 center_{0, 0, 0};
    Rational measure_sq_;

    struct Cache {
        std::mutex mu;
        std::map<Monomial, Rational, GradedLex> means;
        std::vector<std::vector<Polynomial>> coord_powers;
    };
    std::shared_ptr<Cache> cache_;
};

// Exact integral for dim 3; measure-relative (mean) value for dim 1 and 2.
Rational integrate_simplex(const Polynomial& p, const Simplex& s);

Rational factorial(int n);

}  // namespace elascomplex
