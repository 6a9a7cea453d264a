#ifndef SYMMETROID_MATRIX_HPP
#define SYMMETROID_MATRIX_HPP

#include "bigint.hpp"
#include "finite_field.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace symmetroid {

/// Dense row-major matrix.
template <typename T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : r_(rows), c_(cols), a_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data) : r_(rows), c_(cols), a_(std::move(data))
    {
        if (a_.size() != rows * cols)
            throw Error("Matrix: data size mismatch");
    }
    Matrix(std::initializer_list<std::initializer_list<T>> rows)
    {
        r_ = rows.size();
        c_ = r_ ? rows.begin()->size() : 0;
        for (const auto& row : rows) {
            if (row.size() != c_)
                throw Error("Matrix: ragged initializer");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n, const T& zero, const T& one)
    {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    std::vector<T> row(std::size_t i) const { return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t k = 0; k < c_; ++k)
            std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t k = 0; k < r_; ++k)
            std::swap((*this)(k, i), (*this)(k, j));
    }

    Matrix transpose() const
    {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    template <typename F>
    auto map(F f) const -> Matrix<decltype(f(std::declval<T>()))>
    {
        using U = decltype(f(std::declval<T>()));
        std::vector<U> d;
        d.reserve(a_.size());
        for (const auto& x : a_)
            d.push_back(f(x));
        return Matrix<U>(r_, c_, std::move(d));
    }

    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.c_ != b.r_)
            throw Error("Matrix: shape mismatch in product");
        Matrix m(a.r_, b.c_, T(0));
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                if (a(i, k) == 0)
                    continue;
                for (std::size_t j = 0; j < b.c_; ++j)
                    m(i, j) += a(i, k) * b(k, j);
            }
        return m;
    }

    std::vector<T> operator*(const std::vector<T>& v) const
    {
        if (v.size() != c_)
            throw Error("Matrix: shape mismatch in matrix-vector product");
        std::vector<T> out(r_, T(0));
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                out[i] += (*this)(i, j) * v[j];
        return out;
    }

private:
    std::size_t r_ = 0;
    std::size_t c_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<BigRat>;

/// Determinant of the submatrix on `rows` x `cols` (equal length, at most 20
/// columns) by Laplace expansion memoised over column subsets. Works for any
/// commutative T with +, -, *; `zero` and `one` seed the recursion. Only ring
/// operations are used, so polynomial entries are fine.
template <typename T>
T minor_det(const Matrix<T>& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
            const T& zero, const T& one)
{
    std::size_t k = rows.size();
    if (cols.size() != k)
        throw Error("minor_det: non-square selection");
    if (k == 0)
        return one;
    if (k > 20)
        throw Error("minor_det: selection too large");
    // value[S] = det of rows[0..|S|) against the columns cols[j], j in S.
    std::unordered_map<std::uint32_t, T> value;
    value.emplace(0u, one);
    std::vector<std::uint32_t> layer{0u};
    for (std::size_t r = 0; r < k; ++r) {
        std::unordered_map<std::uint32_t, T> next_value;
        std::vector<std::uint32_t> next_layer;
        for (std::uint32_t s : layer) {
            const T& base = value.at(s);
            if (base == zero)
                continue;
            for (std::size_t j = 0; j < k; ++j) {
                if (s & (1u << j))
                    continue;
                const T& e = m(rows[r], cols[j]);
                if (e == zero)
                    continue;
                // Sign of placing column j in row r: parity of the chosen columns after j.
                int after = __builtin_popcount(s >> (j + 1));
                std::uint32_t t = s | (1u << j);
                T term = base * e;
                auto it = next_value.find(t);
                if (it == next_value.end()) {
                    next_layer.push_back(t);
                    it = next_value.emplace(t, zero).first;
                }
                if (after % 2)
                    it->second = it->second - term;
                else
                    it->second = it->second + term;
            }
        }
        value = std::move(next_value);
        layer = std::move(next_layer);
    }
    auto it = value.find((1u << k) - 1);
    return it == value.end() ? zero : it->second;
}

template <typename T>
T determinant(const Matrix<T>& m, const T& zero, const T& one)
{
    if (m.rows() != m.cols())
        throw Error("determinant: non-square matrix");
    std::vector<std::size_t> idx(m.rows());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    return minor_det(m, idx, idx, zero, one);
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
inline BigInt det_bareiss(IntMatrix m)
{
    std::size_t n = m.rows();
    if (n != m.cols())
        throw Error("det_bareiss: non-square matrix");
    if (n == 0)
        return 1;
    BigInt prev = 1;
    int sgn_ = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t i = k + 1;
            while (i < n && m(i, k) == 0)
                ++i;
            if (i == n)
                return 0;
            m.swap_rows(i, k);
            sgn_ = -sgn_;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = v;
            }
        prev = m(k, k);
    }
    return sgn_ * m(n - 1, n - 1);
}

/// Reduced row echelon form over Q; returns the pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t i = r;
        while (i < m.rows() && m(i, c) == 0)
            ++i;
        if (i == m.rows())
            continue;
        m.swap_rows(i, r);
        BigRat inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t k = 0; k < m.rows(); ++k) {
            if (k == r || m(k, c) == 0)
                continue;
            BigRat f = m(k, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(k, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(RatMatrix m) { return rref(m).size(); }

inline std::size_t rank(const IntMatrix& m)
{
    return rank(m.map([](const BigInt& x) { return BigRat(x); }));
}

/// Basis of {v : m v = 0} over Q, one vector per free column.
inline std::vector<std::vector<BigRat>> nullspace(RatMatrix m)
{
    auto piv = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : piv)
        is_pivot[c] = true;
    std::vector<std::vector<BigRat>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<BigRat> v(m.cols(), BigRat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i)
            v[piv[i]] = -m(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<std::vector<BigRat>> nullspace(const IntMatrix& m)
{
    return nullspace(m.map([](const BigInt& x) { return BigRat(x); }));
}

/// Scales a rational vector to a primitive integer vector whose first nonzero entry is positive.
inline std::vector<BigInt> primitive_integer_vector(const std::vector<BigRat>& v)
{
    BigInt den = 1, g = 0;
    for (const auto& a : v)
        den = lcm(den, a.get_den());
    std::vector<BigInt> out;
    for (const auto& a : v) {
        out.push_back(a.get_num() * (den / a.get_den()));
        g = gcd(g, out.back());
    }
    if (g == 0)
        return out;
    int s = 0;
    for (const auto& a : out)
        if (a != 0) {
            s = sgn(a);
            break;
        }
    for (auto& a : out)
        a = a / g * s;
    return out;
}

/// Row echelon form over a field given by a table class (PrimeField or GaloisField).
template <typename Field>
std::size_t rank_over(const Field& F, Matrix<typename Field::value_type> m)
{
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t i = r;
        while (i < m.rows() && F.is_zero(m(i, c)))
            ++i;
        if (i == m.rows())
            continue;
        m.swap_rows(i, r);
        auto inv = F.inv(m(r, c));
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) = F.mul(m(r, j), inv);
        for (std::size_t k = r + 1; k < m.rows(); ++k) {
            if (F.is_zero(m(k, c)))
                continue;
            auto f = m(k, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(k, j) = F.sub(m(k, j), F.mul(f, m(r, j)));
        }
        ++r;
    }
    return r;
}

/// Basis of the right kernel over a finite field.
template <typename Field>
std::vector<std::vector<typename Field::value_type>> nullspace_over(const Field& F, Matrix<typename Field::value_type> m)
{
    using V = typename Field::value_type;
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t i = r;
        while (i < m.rows() && F.is_zero(m(i, c)))
            ++i;
        if (i == m.rows())
            continue;
        m.swap_rows(i, r);
        V inv = F.inv(m(r, c));
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(r, j) = F.mul(m(r, j), inv);
        for (std::size_t k = 0; k < m.rows(); ++k) {
            if (k == r || F.is_zero(m(k, c)))
                continue;
            V f = m(k, c);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(k, j) = F.sub(m(k, j), F.mul(f, m(r, j)));
        }
        piv.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : piv)
        is_pivot[c] = true;
    std::vector<std::vector<V>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<V> v(m.cols(), F.zero());
        v[f] = F.one();
        for (std::size_t i = 0; i < piv.size(); ++i)
            v[piv[i]] = F.neg(m(i, f));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Rank of an integer matrix reduced mod p.
inline std::size_t fp_rank(const IntMatrix& m, std::uint64_t p)
{
    if (!is_prime(p))
        throw Error("fp_rank: modulus " + std::to_string(p) + " is not prime");
    PrimeField F(p);
    return rank_over(F, m.map([&](const BigInt& x) { return F.from_integer(x); }));
}

/// Result of smith_normal_form: U * M * V = S.
struct SmithForm
{
    IntMatrix U;
    IntMatrix S;
    IntMatrix V;

    /// Diagonal entries d_1 | d_2 | ... up to min(rows, cols), zeros included.
    std::vector<BigInt> divisors() const
    {
        std::vector<BigInt> d;
        for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
            d.push_back(S(i, i));
        return d;
    }
};

namespace detail {

inline void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& f)
{
    if (f == 0)
        return;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(src, j) != 0)
            m(dst, j) -= f * m(src, j);
}

inline void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& f)
{
    if (f == 0)
        return;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m(i, src) != 0)
            m(i, dst) -= f * m(i, src);
}

inline void row_negate(IntMatrix& m, std::size_t r)
{
    for (std::size_t j = 0; j < m.cols(); ++j)
        m(r, j) = -m(r, j);
}

} // namespace detail

/// Smith normal form with transforms, pivoting on the entry of least absolute value.
inline SmithForm smith_normal_form(const IntMatrix& M)
{
    std::size_t m = M.rows(), n = M.cols();
    SmithForm f{IntMatrix::identity(m, 0, 1), M, IntMatrix::identity(n, 0, 1)};
    IntMatrix& S = f.S;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        while (true) {
            // Least nonzero |entry| in the trailing block.
            std::size_t pi = m, pj = n;
            BigInt best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (S(i, j) != 0 && (pi == m || abs(S(i, j)) < best)) {
                        best = abs(S(i, j));
                        pi = i;
                        pj = j;
                    }
            if (pi == m)
                return f;
            S.swap_rows(t, pi);
            f.U.swap_rows(t, pi);
            S.swap_cols(t, pj);
            f.V.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (S(i, t) == 0)
                    continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
                detail::row_axpy(S, i, t, q);
                detail::row_axpy(f.U, i, t, q);
                if (S(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (S(t, j) == 0)
                    continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
                detail::col_axpy(S, j, t, q);
                detail::col_axpy(f.V, j, t, q);
                if (S(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // Divisibility: fold an offending row into row t and go again.
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == m)
                break;
            detail::row_axpy(S, t, bad, BigInt(-1));
            detail::row_axpy(f.U, t, bad, BigInt(-1));
        }
        if (S(t, t) < 0) {
            detail::row_negate(S, t);
            detail::row_negate(f.U, t);
        }
    }
    return f;
}

/// Elementary divisors of the row lattice of M (nonzero ones only, ascending,
/// each dividing the next), plus the rank.
///
/// Rows are folded one by one into an echelon basis by gcd steps, with entries
/// above each pivot kept reduced, before a final Smith form on the basis.
struct LatticeSummary
{
    std::size_t rank = 0;
    std::vector<BigInt> divisors;
};

inline LatticeSummary elementary_divisors(const std::vector<std::vector<BigInt>>& rows, std::size_t ncols)
{
    // basis[c] is the echelon row whose leading column is c (empty if none).
    std::vector<std::vector<BigInt>> basis(ncols);
    for (const auto& input : rows) {
        std::vector<BigInt> v = input;
        for (std::size_t c = 0; c < ncols; ++c) {
            if (v[c] == 0)
                continue;
            auto& b = basis[c];
            if (b.empty()) {
                if (v[c] < 0)
                    for (auto& x : v)
                        x = -x;
                b = std::move(v);
                break;
            }
            // Extended gcd combination of b and v on column c.
            BigInt g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b[c].get_mpz_t(), v[c].get_mpz_t());
            BigInt bu = b[c] / g, vu = v[c] / g;
            std::vector<BigInt> nb(ncols), nv(ncols);
            for (std::size_t j = c; j < ncols; ++j) {
                nb[j] = s * b[j] + t * v[j];
                nv[j] = bu * v[j] - vu * b[j];
            }
            b = std::move(nb);
            v = std::move(nv);
            // Keep the new basis row small relative to later pivots.
            for (std::size_t j = c + 1; j < ncols; ++j) {
                if (basis[j].empty() || b[j] == 0)
                    continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), b[j].get_mpz_t(), basis[j][j].get_mpz_t());
                if (q != 0)
                    for (std::size_t k = j; k < ncols; ++k)
                        b[k] -= q * basis[j][k];
            }
        }
    }
    std::vector<std::vector<BigInt>> kept;
    for (auto& b : basis)
        if (!b.empty())
            kept.push_back(std::move(b));
    LatticeSummary out;
    out.rank = kept.size();
    if (kept.empty())
        return out;
    IntMatrix bm(kept.size(), ncols, BigInt(0));
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j)
            bm(i, j) = kept[i][j];
    // The echelon basis is already triangular; its Smith form gives the divisors.
    auto sf = smith_normal_form(bm);
    for (auto& d : sf.divisors())
        if (d != 0)
            out.divisors.push_back(d);
    return out;
}

} // namespace symmetroid

#endif // SYMMETROID_MATRIX_HPP
