#include <gtest/gtest.h>

#include <random>

#include "elascomplex/linalg.hpp"

using namespace elascomplex;

namespace {

RationalMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, int rank_cap = -1)
{
    std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
    if (rank_cap < 0) {
        RationalMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = frac(num(rng), den(rng));
        return m;
    }
    RationalMatrix a = random_matrix(r, static_cast<std::size_t>(rank_cap), rng);
    RationalMatrix b = random_matrix(static_cast<std::size_t>(rank_cap), c, rng);
    return a * b;
}

}  // namespace

TEST(Linalg, RankOfProducts)
{
    std::mt19937_64 rng(1);
    for (int cap : {0, 1, 5, 9}) {
        RationalMatrix m = random_matrix(12, 10, rng, cap);
        EXPECT_EQ(rank(m), static_cast<std::size_t>(cap));
        EXPECT_EQ(rank_lower_bound(m), static_cast<std::size_t>(cap));
    }
    EXPECT_EQ(rank(RationalMatrix::identity(7)), 7u);
}

TEST(Linalg, KernelAnnihilates)
{
    std::mt19937_64 rng(2);
    RationalMatrix m = random_matrix(8, 13, rng, 6);
    RationalMatrix k = kernel(m);
    EXPECT_EQ(k.cols(), 7u);
    EXPECT_TRUE((m * k).is_zero());
    EXPECT_EQ(rank(k), 7u);
    CertifiedKernel ck = certified_kernel(m);
    EXPECT_EQ(ck.rank, 6u);
    EXPECT_EQ(ck.basis, k);  // both are the RREF kernel basis
}

TEST(Linalg, PivotColumnsAreLexFirst)
{
    RationalMatrix m(2, 4);
    m(0, 1) = 1;
    m(1, 1) = 2;
    m(0, 3) = 1;
    EchelonResult e = echelon(m);
    EXPECT_EQ(e.rank, 2u);
    EXPECT_EQ(e.pivot_columns, (std::vector<std::size_t>{1, 3}));
}

TEST(Linalg, SolveAndLeftSolve)
{
    std::mt19937_64 rng(3);
    RationalMatrix a = random_matrix(9, 9, rng);
    std::vector<Rational> b(9);
    for (std::size_t i = 0; i < 9; ++i)
        b[i] = frac(static_cast<long>(i) - 4, 3);
    auto x = solve(a, b);
    for (std::size_t i = 0; i < 9; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < 9; ++j)
            s += a(i, j) * x[j];
        EXPECT_EQ(s, b[i]);
    }
    RationalMatrix r = random_matrix(4, 9, rng);
    RationalMatrix xs = certified_left_solve(a, r);
    EXPECT_EQ(xs * a, r);
    RationalMatrix sing = random_matrix(5, 5, rng, 4);
    EXPECT_THROW(solve(sing, std::vector<Rational>(5, 1)), std::domain_error);
}

TEST(Linalg, RationalReconstruction)
{
    mpz_class m = mpz_class(prime_at(0)) * prime_at(1);
    Rational q = frac(-355, 113);
    mpz_class dinv;
    mpz_invert(dinv.get_mpz_t(), q.get_den_mpz_t(), m.get_mpz_t());
    mpz_class u = (q.get_num() * dinv) % m;
    if (u < 0)
        u += m;
    auto r = rational_reconstruct(u, m);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, q);
}

TEST(Linalg, SparseProduct)
{
    std::mt19937_64 rng(4);
    RationalMatrix a = random_matrix(5, 6, rng), b = random_matrix(6, 3, rng);
    auto c = SparseRationalMatrix::from_dense(a) * SparseRationalMatrix::from_dense(b);
    EXPECT_EQ(c.to_dense(), a * b);
    EXPECT_EQ(echelon(SparseRationalMatrix::from_dense(a)).rank, rank(a));
}
