#include "elascomplex/linalg.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace elascomplex {

// ---- dense / sparse containers ----

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

bool RationalMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

RationalMatrix RationalMatrix::column_subset(const std::vector<std::size_t>& idx) const
{
    RationalMatrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j)
            m(i, j) = (*this)(i, idx[j]);
    return m;
}

RationalMatrix RationalMatrix::row_subset(const std::vector<std::size_t>& idx) const
{
    RationalMatrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(i, j) = (*this)(idx[i], j);
    return m;
}

std::vector<Rational> RationalMatrix::column(std::size_t j) const
{
    std::vector<Rational> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        v[i] = (*this)(i, j);
    return v;
}

void RationalMatrix::set_column(std::size_t j, const std::vector<Rational>& v)
{
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, j) = v[i];
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix product dimension mismatch");
    RationalMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (b(k, j) != 0)
                    c(i, j) += x * b(k, j);
        }
    return c;
}

RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("hstack row mismatch");
    RationalMatrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

RationalMatrix vstack(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.cols() != b.cols())
        throw std::invalid_argument("vstack column mismatch");
    RationalMatrix m(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(a.rows() + i, j) = b(i, j);
    return m;
}

RationalMatrix from_columns(const std::vector<std::vector<Rational>>& cols, std::size_t rows)
{
    RationalMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw std::invalid_argument("column length mismatch");
        m.set_column(j, cols[j]);
    }
    return m;
}

void SparseRationalMatrix::add(std::size_t r, std::size_t c, const Rational& v)
{
    if (r >= rows_ || c >= cols_)
        throw std::out_of_range("sparse entry out of range");
    if (v != 0)
        triplets_.push_back({r, c, v});
}

void SparseRationalMatrix::compress()
{
    std::sort(triplets_.begin(), triplets_.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Triplet> out;
    for (auto& t : triplets_) {
        if (!out.empty() && out.back().row == t.row && out.back().col == t.col)
            out.back().value += t.value;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Triplet& t) { return t.value == 0; }), out.end());
    triplets_ = std::move(out);
}

RationalMatrix SparseRationalMatrix::to_dense() const
{
    RationalMatrix m(rows_, cols_);
    for (const auto& t : triplets_)
        m(t.row, t.col) += t.value;
    return m;
}

SparseRationalMatrix SparseRationalMatrix::from_dense(const RationalMatrix& m)
{
    SparseRationalMatrix s(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0)
                s.triplets_.push_back({i, j, m(i, j)});
    return s;
}

SparseRationalMatrix operator*(const SparseRationalMatrix& a, const SparseRationalMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("sparse product dimension mismatch");
    std::vector<std::vector<const Triplet*>> brows(b.rows_);
    for (const auto& t : b.triplets_)
        brows[t.row].push_back(&t);
    std::map<std::pair<std::size_t, std::size_t>, Rational> acc;
    for (const auto& t : a.triplets_)
        for (const Triplet* u : brows[t.col])
            acc[{t.row, u->col}] += t.value * u->value;
    SparseRationalMatrix c(a.rows_, b.cols_);
    for (auto& [rc, v] : acc)
        if (v != 0)
            c.triplets_.push_back({rc.first, rc.second, v});
    return c;
}

// ---- exact elimination with content-normalized integer rows ----

namespace {

using IntRow = std::vector<std::pair<std::uint32_t, mpz_class>>;

IntRow to_int_row(const std::vector<std::pair<std::uint32_t, Rational>>& r)
{
    mpz_class l = 1;
    for (const auto& [c, q] : r)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    IntRow out;
    out.reserve(r.size());
    for (const auto& [c, q] : r) {
        mpz_class v = q.get_num() * (l / q.get_den());
        out.emplace_back(c, std::move(v));
    }
    return out;
}

void normalize_content(IntRow& r)
{
    if (r.empty())
        return;
    mpz_class g = 0;
    for (const auto& e : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
        if (g == 1)
            break;
    }
    if (r.front().second < 0)
        g = -g;
    if (g != 1)
        for (auto& e : r)
            mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

// r <- a*r - b*p where a, b make the entry at column col vanish.
void eliminate(IntRow& r, const IntRow& p, std::uint32_t col, const mpz_class& rc, const mpz_class& pc)
{
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), rc.get_mpz_t(), pc.get_mpz_t());
    mpz_class a = pc / g, b = rc / g;
    IntRow out;
    out.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    mpz_class t;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            if (r[i].first != col) {
                t = a * r[i].second;
                out.emplace_back(r[i].first, t);
            }
            ++i;
        } else if (i == r.size() || p[j].first < r[i].first) {
            if (p[j].first != col) {
                t = -b * p[j].second;
                out.emplace_back(p[j].first, t);
            }
            ++j;
        } else {
            if (r[i].first != col) {
                t = a * r[i].second;
                mpz_submul(t.get_mpz_t(), b.get_mpz_t(), p[j].second.get_mpz_t());
                if (t != 0)
                    out.emplace_back(r[i].first, t);
            }
            ++i;
            ++j;
        }
    }
    r = std::move(out);
    normalize_content(r);
}

const mpz_class* entry(const IntRow& r, std::uint32_t col)
{
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& e, std::uint32_t c) { return e.first < c; });
    return (it != r.end() && it->first == col) ? &it->second : nullptr;
}

std::size_t row_cost(const IntRow& r)
{
    return r.size() * 64 + mpz_sizeinbase(r.front().second.get_mpz_t(), 2);
}

struct IntEchelon {
    std::vector<IntRow> rows;  // pivot rows, increasing lead column
    std::vector<std::size_t> pivots;
};

IntEchelon int_echelon(std::vector<IntRow> rows, std::size_t ncols)
{
    std::vector<std::vector<std::size_t>> bucket(ncols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        normalize_content(rows[i]);
        if (!rows[i].empty())
            bucket[rows[i].front().first].push_back(i);
    }
    IntEchelon out;
    for (std::uint32_t c = 0; c < ncols; ++c) {
        auto cand = std::move(bucket[c]);
        bucket[c].clear();
        if (cand.empty())
            continue;
        std::size_t best = 0;
        for (std::size_t k = 1; k < cand.size(); ++k)
            if (row_cost(rows[cand[k]]) < row_cost(rows[cand[best]]))
                best = k;
        std::size_t piv = cand[best];
        for (std::size_t k = 0; k < cand.size(); ++k) {
            if (k == best)
                continue;
            IntRow& r = rows[cand[k]];
            mpz_class rc = r.front().second;
            mpz_class pc = rows[piv].front().second;
            eliminate(r, rows[piv], c, rc, pc);
            if (!r.empty())
                bucket[r.front().first].push_back(cand[k]);
        }
        out.pivots.push_back(c);
        out.rows.push_back(std::move(rows[piv]));
    }
    return out;
}

std::vector<IntRow> int_rows(const RationalMatrix& a)
{
    std::vector<IntRow> rows;
    rows.reserve(a.rows());
    std::vector<std::pair<std::uint32_t, Rational>> tmp;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        tmp.clear();
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0)
                tmp.emplace_back(static_cast<std::uint32_t>(j), a(i, j));
        rows.push_back(to_int_row(tmp));
    }
    return rows;
}

std::vector<IntRow> int_rows(const SparseRationalMatrix& a)
{
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> tmp(a.rows());
    SparseRationalMatrix s = a;
    s.compress();
    for (const auto& t : s.triplets())
        tmp[t.row].emplace_back(static_cast<std::uint32_t>(t.col), t.value);
    std::vector<IntRow> rows;
    rows.reserve(a.rows());
    for (auto& r : tmp)
        rows.push_back(to_int_row(r));
    return rows;
}

}  // namespace

EchelonResult echelon(const RationalMatrix& a)
{
    IntEchelon e = int_echelon(int_rows(a), a.cols());
    return {e.pivots.size(), e.pivots};
}

EchelonResult echelon(const SparseRationalMatrix& a)
{
    IntEchelon e = int_echelon(int_rows(a), a.cols());
    return {e.pivots.size(), e.pivots};
}

std::size_t rank(const RationalMatrix& a)
{
    return echelon(a).rank;
}

RationalMatrix kernel(const RationalMatrix& a)
{
    IntEchelon e = int_echelon(int_rows(a), a.cols());
    std::size_t r = e.rows.size();
    // back substitution to reduced form
    for (std::size_t i = r; i-- > 0;) {
        auto pc = static_cast<std::uint32_t>(e.pivots[i]);
        for (std::size_t j = 0; j < i; ++j) {
            const mpz_class* v = entry(e.rows[j], pc);
            if (!v)
                continue;
            mpz_class rc = *v;
            mpz_class lead = e.rows[i].front().second;
            eliminate(e.rows[j], e.rows[i], pc, rc, lead);
        }
    }
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (!is_pivot[j])
            free_cols.push_back(j);
    RationalMatrix k(a.cols(), free_cols.size());
    std::map<std::size_t, std::size_t> free_index;
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        free_index[free_cols[f]] = f;
        k(free_cols[f], f) = 1;
    }
    for (std::size_t i = 0; i < r; ++i) {
        const mpz_class& lead = e.rows[i].front().second;
        for (const auto& [c, v] : e.rows[i]) {
            if (c == e.pivots[i])
                continue;
            k(e.pivots[i], free_index.at(c)) = Rational(-v, lead);
        }
    }
    for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j)
            k(i, j).canonicalize();
    return k;
}

std::vector<Rational> solve(const RationalMatrix& a, const std::vector<Rational>& b)
{
    if (a.rows() != a.cols() || b.size() != a.rows())
        throw std::invalid_argument("solve needs a square system");
    RationalMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = -b[i];
    }
    RationalMatrix k = kernel(aug);
    if (k.cols() != 1 || k(a.cols(), 0) != 1)
        throw std::domain_error("singular system");
    std::vector<Rational> x(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        x[i] = k(i, 0);
    return x;
}

// ---- modular arithmetic ----

std::uint32_t prime_at(std::size_t i)
{
    static std::mutex mu;
    static std::vector<std::uint32_t> primes;
    std::lock_guard<std::mutex> lock(mu);
    while (primes.size() <= i) {
        mpz_class p = primes.empty() ? mpz_class((1UL << 31) - (1UL << 24)) : mpz_class(primes.back());
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        primes.push_back(static_cast<std::uint32_t>(p.get_ui()));
    }
    return primes[i];
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p)
{
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1)
        throw std::domain_error("not invertible mod p");
    if (t < 0)
        t += p;
    return static_cast<std::uint32_t>(t);
}

std::optional<std::uint32_t> reduce_mod(const Rational& q, std::uint32_t p)
{
    unsigned long d = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (d == 0)
        return std::nullopt;
    unsigned long n = mpz_fdiv_ui(q.get_num_mpz_t(), p);
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(n) * inv_mod(static_cast<std::uint32_t>(d), p)) % p);
}

std::optional<ModMatrix> reduce_mod(const RationalMatrix& a, std::uint32_t p)
{
    ModMatrix m(a.rows(), a.cols(), p);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0)
                continue;
            auto v = reduce_mod(a(i, j), p);
            if (!v)
                return std::nullopt;
            m(i, j) = *v;
        }
    return m;
}

std::optional<ModMatrix> reduce_mod(const SparseRationalMatrix& a, std::uint32_t p)
{
    ModMatrix m(a.rows(), a.cols(), p);
    for (const auto& t : a.triplets()) {
        auto v = reduce_mod(t.value, p);
        if (!v)
            return std::nullopt;
        m(t.row, t.col) = static_cast<std::uint32_t>((m(t.row, t.col) + static_cast<std::uint64_t>(*v)) % p);
    }
    return m;
}

std::vector<std::size_t> rref_mod(ModMatrix& a)
{
    const std::uint64_t p = a.prime();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && a(piv, c) == 0)
            ++piv;
        if (piv == a.rows())
            continue;
        if (piv != r)
            std::swap_ranges(a.row(piv), a.row(piv) + a.cols(), a.row(r));
        std::uint32_t* pr = a.row(r);
        std::uint64_t inv = inv_mod(pr[c], static_cast<std::uint32_t>(p));
        nz.clear();
        for (std::size_t j = c; j < a.cols(); ++j)
            if (pr[j]) {
                pr[j] = static_cast<std::uint32_t>(pr[j] * inv % p);
                nz.push_back(j);
            }
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r)
                continue;
            std::uint32_t* ri = a.row(i);
            std::uint64_t f = ri[c];
            if (f == 0)
                continue;
            std::uint64_t nf = p - f;
            for (std::size_t j : nz)
                ri[j] = static_cast<std::uint32_t>((ri[j] + nf * pr[j]) % p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank_mod(ModMatrix a)
{
    // forward elimination only
    const std::uint64_t p = a.prime();
    std::size_t r = 0;
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && a(piv, c) == 0)
            ++piv;
        if (piv == a.rows())
            continue;
        if (piv != r)
            std::swap_ranges(a.row(piv), a.row(piv) + a.cols(), a.row(r));
        std::uint32_t* pr = a.row(r);
        std::uint64_t inv = inv_mod(pr[c], static_cast<std::uint32_t>(p));
        nz.clear();
        for (std::size_t j = c; j < a.cols(); ++j)
            if (pr[j]) {
                pr[j] = static_cast<std::uint32_t>(pr[j] * inv % p);
                nz.push_back(j);
            }
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            std::uint32_t* ri = a.row(i);
            std::uint64_t f = ri[c];
            if (f == 0)
                continue;
            std::uint64_t nf = p - f;
            for (std::size_t j : nz)
                ri[j] = static_cast<std::uint32_t>((ri[j] + nf * pr[j]) % p);
        }
        ++r;
    }
    return r;
}

ModMatrix multiply_mod(const ModMatrix& a, const ModMatrix& b)
{
    if (a.cols() != b.rows() || a.prime() != b.prime())
        throw std::invalid_argument("modular product mismatch");
    const std::uint64_t p = a.prime();
    ModMatrix c(a.rows(), b.cols(), a.prime());
    std::vector<std::uint64_t> acc(b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        const std::uint32_t* ai = a.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            std::uint64_t x = ai[k];
            if (x == 0)
                continue;
            const std::uint32_t* bk = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                acc[j] = (acc[j] + x * bk[j]) % p;
        }
        std::uint32_t* ci = c.row(i);
        for (std::size_t j = 0; j < b.cols(); ++j)
            ci[j] = static_cast<std::uint32_t>(acc[j]);
    }
    return c;
}

std::optional<ModMatrix> inverse_mod(const ModMatrix& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("inverse of a non-square matrix");
    std::size_t n = a.rows();
    ModMatrix aug(n, 2 * n, a.prime());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref_mod(aug);
    if (piv.size() < n || piv[n - 1] != n - 1)
        return std::nullopt;
    ModMatrix inv(n, n, a.prime());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = aug(i, n + j);
    return inv;
}

std::size_t rank_lower_bound(const RationalMatrix& a, std::size_t prime_index)
{
    for (std::size_t i = prime_index;; ++i) {
        auto m = reduce_mod(a, prime_at(i));
        if (m)
            return rank_mod(std::move(*m));
    }
}

std::size_t rank_lower_bound(const SparseRationalMatrix& a, std::size_t prime_index)
{
    for (std::size_t i = prime_index;; ++i) {
        auto m = reduce_mod(a, prime_at(i));
        if (m)
            return rank_mod(std::move(*m));
    }
}

std::optional<Rational> rational_reconstruct(const mpz_class& u, const mpz_class& m)
{
    mpz_class bound;
    mpz_class half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = m, r1 = u % m;
    if (r1 < 0)
        r1 += m;
    if (r1 <= bound)
        return Rational(r1);
    mpz_class s0 = 0, s1 = 1, q, t;
    while (r1 > bound) {
        mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
        t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    mpz_class as = abs(s1);
    if (as == 0 || as > bound)
        return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), as.get_mpz_t());
    if (g != 1)
        return std::nullopt;
    Rational q2(r1, s1);
    q2.canonicalize();
    return q2;
}

namespace {

// Incremental Chinese remaindering of a vector of residues.
class CrtAccumulator {
public:
    explicit CrtAccumulator(std::size_t n) : values_(n, 0) {}

    void add(const std::vector<std::uint32_t>& residues, std::uint32_t p)
    {
        if (modulus_ == 0) {
            for (std::size_t i = 0; i < values_.size(); ++i)
                values_[i] = residues[i];
            modulus_ = p;
            return;
        }
        std::uint64_t minv = inv_mod(static_cast<std::uint32_t>(mpz_fdiv_ui(modulus_.get_mpz_t(), p)), p);
        for (std::size_t i = 0; i < values_.size(); ++i) {
            std::uint64_t cur = mpz_fdiv_ui(values_[i].get_mpz_t(), p);
            std::uint64_t diff = (residues[i] + static_cast<std::uint64_t>(p) - cur) % p;
            std::uint64_t h = diff * minv % p;
            if (h)
                mpz_addmul_ui(values_[i].get_mpz_t(), modulus_.get_mpz_t(), h);
        }
        modulus_ *= p;
    }

    std::optional<std::vector<Rational>> reconstruct() const
    {
        std::vector<Rational> out(values_.size());
        for (std::size_t i = 0; i < values_.size(); ++i) {
            auto q = rational_reconstruct(values_[i], modulus_);
            if (!q)
                return std::nullopt;
            out[i] = std::move(*q);
        }
        return out;
    }

private:
    std::vector<mpz_class> values_;
    mpz_class modulus_ = 0;
};

// Sparse integer rows of a (each row scaled by the lcm of its denominators).
std::vector<IntRow> scaled_rows(const RationalMatrix& a)
{
    return int_rows(a);
}

}  // namespace

CertifiedKernel certified_kernel(const RationalMatrix& a)
{
    const std::size_t n = a.cols();
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> free_cols;
    std::unique_ptr<CrtAccumulator> crt;
    std::size_t used = 0;
    std::size_t next_attempt = 1;
    std::vector<IntRow> arows = scaled_rows(a);
    for (std::size_t pi = 0; pi < 4096; ++pi) {
        std::uint32_t p = prime_at(pi);
        auto m = reduce_mod(a, p);
        if (!m)
            continue;
        auto piv = rref_mod(*m);
        if (crt && piv != pivots) {
            if (piv.size() <= pivots.size())
                continue;  // unlucky prime
            crt.reset();
        }
        if (!crt) {
            pivots = piv;
            free_cols.clear();
            std::vector<bool> isp(n, false);
            for (auto c : pivots)
                isp[c] = true;
            for (std::size_t j = 0; j < n; ++j)
                if (!isp[j])
                    free_cols.push_back(j);
            crt = std::make_unique<CrtAccumulator>(pivots.size() * free_cols.size());
            used = 0;
            next_attempt = 1;
        }
        std::vector<std::uint32_t> res(pivots.size() * free_cols.size());
        for (std::size_t i = 0; i < pivots.size(); ++i)
            for (std::size_t f = 0; f < free_cols.size(); ++f)
                res[i * free_cols.size() + f] = (*m)(i, free_cols[f]);
        crt->add(res, p);
        ++used;
        if (used < next_attempt)
            continue;
        next_attempt = used + std::max<std::size_t>(1, used / 2);
        auto vals = crt->reconstruct();
        if (!vals)
            continue;
        RationalMatrix k(n, free_cols.size());
        for (std::size_t f = 0; f < free_cols.size(); ++f) {
            k(free_cols[f], f) = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i)
                k(pivots[i], f) = -(*vals)[i * free_cols.size() + f];
        }
        // exact verification a * k == 0 using integer rows of a
        bool ok = true;
        std::vector<mpz_class> col(n);
        mpz_class s;
        for (std::size_t f = 0; f < free_cols.size() && ok; ++f) {
            mpz_class l = 1;
            for (std::size_t i = 0; i < n; ++i)
                if (k(i, f) != 0)
                    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), k(i, f).get_den_mpz_t());
            for (std::size_t i = 0; i < n; ++i)
                col[i] = k(i, f) == 0 ? mpz_class(0) : mpz_class(k(i, f).get_num() * (l / k(i, f).get_den()));
            for (const auto& row : arows) {
                s = 0;
                for (const auto& [c, v] : row)
                    if (col[c] != 0)
                        mpz_addmul(s.get_mpz_t(), v.get_mpz_t(), col[c].get_mpz_t());
                if (s != 0) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok)
            return {pivots.size(), pivots, std::move(k)};
    }
    throw std::runtime_error("certified kernel did not converge");
}

RationalMatrix certified_left_solve(const RationalMatrix& a, const RationalMatrix& rhs)
{
    if (a.rows() != a.cols() || rhs.cols() != a.rows())
        throw std::invalid_argument("certified_left_solve dimension mismatch");
    const std::size_t n = a.rows(), m = rhs.rows();
    CrtAccumulator crt(m * n);
    std::size_t used = 0, next_attempt = 2;
    // integer columns of a: a = A_int * diag(1/colden)
    std::vector<mpz_class> colden(n, 1);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            mpz_lcm(colden[j].get_mpz_t(), colden[j].get_mpz_t(), a(i, j).get_den_mpz_t());
    std::vector<std::vector<std::pair<std::size_t, mpz_class>>> arows(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a(i, j) != 0)
                arows[i].emplace_back(j, a(i, j).get_num() * (colden[j] / a(i, j).get_den()));
    for (std::size_t pi = 0; pi < 8192; ++pi) {
        std::uint32_t p = prime_at(pi);
        auto am = reduce_mod(a, p);
        auto rm = reduce_mod(rhs, p);
        if (!am || !rm)
            continue;
        auto inv = inverse_mod(*am);
        if (!inv)
            continue;
        ModMatrix x = multiply_mod(*rm, *inv);
        std::vector<std::uint32_t> res(m * n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                res[i * n + j] = x(i, j);
        crt.add(res, p);
        ++used;
        if (used < next_attempt)
            continue;
        next_attempt = used + std::max<std::size_t>(1, used / 2);
        auto vals = crt.reconstruct();
        if (!vals)
            continue;
        RationalMatrix sol(m, n);
        bool ok = true;
        std::vector<mpz_class> acc(n);
        for (std::size_t i = 0; i < m && ok; ++i) {
            mpz_class l = 1;
            for (std::size_t j = 0; j < n; ++j) {
                sol(i, j) = (*vals)[i * n + j];
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), sol(i, j).get_den_mpz_t());
            }
            for (auto& v : acc)
                v = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (sol(i, k) == 0)
                    continue;
                mpz_class xk = sol(i, k).get_num() * (l / sol(i, k).get_den());
                for (const auto& [j, v] : arows[k])
                    mpz_addmul(acc[j].get_mpz_t(), xk.get_mpz_t(), v.get_mpz_t());
            }
            // acc_j = l * colden_j * (x a)_ij must equal l * colden_j * rhs_ij
            for (std::size_t j = 0; j < n && ok; ++j) {
                Rational expect = rhs(i, j) * Rational(l * colden[j]);
                if (Rational(acc[j]) != expect)
                    ok = false;
            }
        }
        if (ok)
            return sol;
    }
    throw std::runtime_error("certified solve did not converge");
}

}  // namespace elascomplex
