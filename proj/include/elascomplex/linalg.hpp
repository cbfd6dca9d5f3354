#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "elascomplex/rational.hpp"

namespace elascomplex {

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const;
    RationalMatrix transpose() const;
    RationalMatrix column_subset(const std::vector<std::size_t>& idx) const;
    RationalMatrix row_subset(const std::vector<std::size_t>& idx) const;
    std::vector<Rational> column(std::size_t j) const;
    void set_column(std::size_t j, const std::vector<Rational>& v);

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

// [a | b] and [a ; b].
RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix vstack(const RationalMatrix& a, const RationalMatrix& b);
// Columns given as coordinate vectors.
RationalMatrix from_columns(const std::vector<std::vector<Rational>>& cols, std::size_t rows);

struct Triplet {
    std::size_t row, col;
    Rational value;
};

class SparseRationalMatrix {
public:
    SparseRationalMatrix() = default;
    SparseRationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<Triplet>& triplets() const { return triplets_; }
    void add(std::size_t r, std::size_t c, const Rational& v);
    // Sorts by (row, col) and merges duplicates.
    void compress();
    RationalMatrix to_dense() const;
    static SparseRationalMatrix from_dense(const RationalMatrix& m);
    friend SparseRationalMatrix operator*(const SparseRationalMatrix& a, const SparseRationalMatrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Triplet> triplets_;
};

// ---- exact elimination over Q ----

struct EchelonResult {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;  // increasing
};

// Rank and pivot columns (those of the reduced row echelon form).
EchelonResult echelon(const RationalMatrix& a);
EchelonResult echelon(const SparseRationalMatrix& a);
std::size_t rank(const RationalMatrix& a);
// Basis of {x : a x = 0}, one column per free column of the RREF.
RationalMatrix kernel(const RationalMatrix& a);
// Solves a x = b for square nonsingular a; throws if singular.
std::vector<Rational> solve(const RationalMatrix& a, const std::vector<Rational>& b);

// ---- modular arithmetic ----

std::uint32_t prime_at(std::size_t i);  // deterministic list of 31-bit primes

class ModMatrix {
public:
    ModMatrix() = default;
    ModMatrix(std::size_t rows, std::size_t cols, std::uint32_t p) : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t prime() const { return p_; }
    std::uint32_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint32_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    std::uint32_t* row(std::size_t i) { return a_.data() + i * cols_; }
    const std::uint32_t* row(std::size_t i) const { return a_.data() + i * cols_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::uint32_t p_ = 0;
    std::vector<std::uint32_t> a_;
};

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);
// nullopt when a denominator is divisible by p.
std::optional<std::uint32_t> reduce_mod(const Rational& q, std::uint32_t p);
std::optional<ModMatrix> reduce_mod(const RationalMatrix& a, std::uint32_t p);
std::optional<ModMatrix> reduce_mod(const SparseRationalMatrix& a, std::uint32_t p);

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref_mod(ModMatrix& a);
std::size_t rank_mod(ModMatrix a);
ModMatrix multiply_mod(const ModMatrix& a, const ModMatrix& b);
// Inverse of a square matrix mod p; nullopt if singular mod p.
std::optional<ModMatrix> inverse_mod(const ModMatrix& a);

// Rank of a modulo the first usable prime: a certified lower bound on the rank over Q.
std::size_t rank_lower_bound(const RationalMatrix& a, std::size_t prime_index = 0);
std::size_t rank_lower_bound(const SparseRationalMatrix& a, std::size_t prime_index = 0);

// Rational reconstruction of u modulo m; nullopt if no fraction with
// |num|, den <= sqrt(m/2) exists.
std::optional<Rational> rational_reconstruct(const mpz_class& u, const mpz_class& m);

// Kernel basis of a computed by multimodular RREF and rational reconstruction,
// then verified exactly (a * K == 0, identity on free columns). The returned
// rank is certified: rank_p <= rank_Q and the verified kernel bounds rank_Q from above.
struct CertifiedKernel {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
    RationalMatrix basis;  // cols = a.cols() - rank
};
CertifiedKernel certified_kernel(const RationalMatrix& a);

// Solves x a = r for every row r of rhs (a square, nonsingular) by multimodular
// inversion and rational reconstruction; each solution is verified exactly.
RationalMatrix certified_left_solve(const RationalMatrix& a, const RationalMatrix& rhs);

}  // namespace elascomplex
