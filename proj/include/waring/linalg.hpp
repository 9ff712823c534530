#pragma once

// Exact dense linear algebra over Q(i). Elimination runs fraction-free over
// the Gaussian integers after clearing row denominators (Bareiss); solutions
// are recovered by exact back-substitution.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "waring/error.hpp"
#include "waring/param_poly.hpp"
#include "waring/scalar.hpp"

namespace waring {

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ExactMatrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
        std::size_t c = rows.empty() ? 0 : rows.front().size();
        ExactMatrix m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c)
                throw Error(ErrorKind::DegreeMismatch, "ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    static ExactMatrix identity(std::size_t n) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = Scalar(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Scalar> row(std::size_t i) const {
        return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
    }

    ExactMatrix transpose() const {
        ExactMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<Scalar> operator*(std::span<const Scalar> x) const {
        if (x.size() != cols_)
            throw Error(ErrorKind::DegreeMismatch, "matrix-vector size mismatch");
        std::vector<Scalar> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!(*this)(i, j).is_zero() && !x[j].is_zero())
                    y[i] += (*this)(i, j) * x[j];
        return y;
    }

    friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

// ---------------------------------------------------------------------------
// Gaussian integers
// ---------------------------------------------------------------------------

struct GaussInt {
    mpz_class re{0}, im{0};

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    mpz_class norm() const { return re * re + im * im; }

    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussInt operator-(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }
    friend bool operator==(const GaussInt&, const GaussInt&) = default;

    /// a / b when b divides a exactly.
    static GaussInt exact_div(const GaussInt& a, const GaussInt& b) {
        if (sgn(b.im) == 0) {
            GaussInt q;
            mpz_divexact(q.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
            mpz_divexact(q.im.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
            return q;
        }
        GaussInt num = a * GaussInt{b.re, -b.im};
        mpz_class n = b.norm();
        GaussInt q;
        mpz_divexact(q.re.get_mpz_t(), num.re.get_mpz_t(), n.get_mpz_t());
        mpz_divexact(q.im.get_mpz_t(), num.im.get_mpz_t(), n.get_mpz_t());
        return q;
    }

    /// Nearest-integer quotient (Euclidean division in Z[i]).
    static GaussInt round_div(const GaussInt& a, const GaussInt& b) {
        GaussInt num = a * GaussInt{b.re, -b.im};
        mpz_class n = b.norm();
        auto rnd = [&](const mpz_class& x) {
            mpz_class t = 2 * x + n, q;
            mpz_class d = 2 * n;
            mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), d.get_mpz_t());
            return q;
        };
        return {rnd(num.re), rnd(num.im)};
    }

    static GaussInt gcd(GaussInt a, GaussInt b) {
        while (!b.is_zero()) {
            GaussInt r = a - round_div(a, b) * b;
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    Scalar to_scalar() const { return Scalar(mpq_class(re), mpq_class(im)); }
};

namespace detail {

/// Row scaled by the lcm of its denominators, as Gaussian integers.
inline std::vector<GaussInt> integral_row(std::span<const Scalar> row) {
    mpz_class l = 1;
    for (const auto& s : row) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.re().get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.im().get_den_mpz_t());
    }
    std::vector<GaussInt> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
        mpq_class r = row[j].re() * l, i = row[j].im() * l;
        out[j] = GaussInt{r.get_num(), i.get_num()};
    }
    return out;
}

struct Echelon {
    std::vector<std::vector<GaussInt>> rows; // nonzero rows only
    std::vector<std::size_t> pivots;         // pivot column of each row
};

/// Fraction-free row echelon form. Every intermediate entry is a minor of the
/// scaled input, so each division below is exact.
inline Echelon bareiss_echelon(const ExactMatrix& m) {
    std::vector<std::vector<GaussInt>> a;
    a.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto r = m.row(i);
        a.push_back(integral_row(r));
    }
    const std::size_t rows = m.rows(), cols = m.cols();
    Echelon out;
    GaussInt prev{1, 0};
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero())
            ++p;
        if (p == rows)
            continue;
        std::swap(a[r], a[p]);
        const GaussInt piv = a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const GaussInt lead = a[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                GaussInt v = piv * a[i][j];
                if (!lead.is_zero() && !a[r][j].is_zero())
                    v = v - lead * a[r][j];
                a[i][j] = v.is_zero() ? v : GaussInt::exact_div(v, prev);
            }
            a[i][c] = GaussInt{};
        }
        prev = piv;
        out.pivots.push_back(c);
        ++r;
    }
    a.resize(r);
    out.rows = std::move(a);
    return out;
}

/// Solves the echelon system for the pivot unknowns given values of the free
/// unknowns (entries of x at non-pivot columns) and a right-hand side.
inline void back_substitute(const Echelon& e, std::vector<Scalar>& x, std::span<const Scalar> rhs) {
    for (std::size_t k = e.rows.size(); k-- > 0;) {
        const auto& row = e.rows[k];
        std::size_t p = e.pivots[k];
        Scalar acc = rhs.empty() ? Scalar() : rhs[k];
        for (std::size_t j = p + 1; j < x.size(); ++j)
            if (!row[j].is_zero() && !x[j].is_zero())
                acc -= row[j].to_scalar() * x[j];
        x[p] = acc / row[p].to_scalar();
    }
}

} // namespace detail

/// Exact rank; 0 for an empty matrix.
inline std::size_t rank(const ExactMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0)
        return 0;
    return detail::bareiss_echelon(m).pivots.size();
}

/// Rescales v to a primitive Gaussian-integer vector (content a unit), with
/// the first nonzero entry in the quadrant re > 0, im >= 0.
inline std::vector<Scalar> primitive_gaussian(std::span<const Scalar> v) {
    auto ints = detail::integral_row(v);
    GaussInt g;
    for (const auto& z : ints)
        if (!z.is_zero())
            g = g.is_zero() ? z : GaussInt::gcd(g, z);
    if (g.is_zero())
        return {v.begin(), v.end()};
    for (auto& z : ints)
        z = GaussInt::exact_div(z, g);
    auto first = std::find_if(ints.begin(), ints.end(), [](const GaussInt& z) { return !z.is_zero(); });
    GaussInt unit{1, 0};
    if (sgn(first->re) <= 0 && sgn(first->im) > 0)
        unit = {0, -1};
    else if (sgn(first->re) < 0 && sgn(first->im) <= 0)
        unit = {-1, 0};
    else if (sgn(first->re) >= 0 && sgn(first->im) < 0)
        unit = {0, 1};
    std::vector<Scalar> out;
    out.reserve(ints.size());
    for (const auto& z : ints)
        out.push_back((z * unit).to_scalar());
    return out;
}

/// Basis of the right kernel, one primitive Gaussian-integer vector per free
/// column (in column order).
inline std::vector<std::vector<Scalar>> kernel_basis(const ExactMatrix& m) {
    const std::size_t cols = m.cols();
    detail::Echelon e;
    if (m.rows() > 0 && cols > 0)
        e = detail::bareiss_echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Scalar> x(cols);
        x[f] = Scalar(1);
        detail::back_substitute(e, x, {});
        basis.push_back(primitive_gaussian(x));
    }
    return basis;
}

/// Some x with m x = b, or nullopt when the system is inconsistent.
inline std::optional<std::vector<Scalar>> solve(const ExactMatrix& m, std::span<const Scalar> b) {
    if (b.size() != m.rows())
        throw Error(ErrorKind::DegreeMismatch, "right-hand side has wrong length");
    ExactMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    std::vector<Scalar> x(m.cols());
    if (m.rows() == 0)
        return x;
    auto e = detail::bareiss_echelon(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols())
        return std::nullopt;
    std::vector<Scalar> rhs;
    for (const auto& row : e.rows)
        rhs.push_back(row[m.cols()].to_scalar());
    for (auto& row : e.rows)
        row.pop_back();
    detail::back_substitute(e, x, rhs);
    return x;
}

// ---------------------------------------------------------------------------
// Symbolic determinants
// ---------------------------------------------------------------------------

using ParamMatrix = std::vector<std::vector<ParamPolynomial>>;

inline constexpr std::size_t kMaxSymbolicMinor = 8;

/// Determinant of the submatrix on (rowset, colset), expanded in the
/// parameters. Laplace expansion along rows, memoized on the set of columns
/// still available.
inline ParamPolynomial symbolic_minor(const ParamMatrix& m, std::span<const std::size_t> rowset,
                                      std::span<const std::size_t> colset) {
    if (rowset.size() != colset.size())
        throw Error(ErrorKind::DegreeMismatch, "minor needs as many rows as columns");
    const std::size_t k = rowset.size();
    if (k > kMaxSymbolicMinor)
        throw Error(ErrorKind::MinorTooLarge,
                    "minor of size " + std::to_string(k) + " exceeds " + std::to_string(kMaxSymbolicMinor));
    if (m.empty())
        throw Error(ErrorKind::DegreeMismatch, "empty parametric matrix");
    const std::size_t nparams = m.front().front().nparams();
    for (auto r : rowset)
        if (r >= m.size())
            throw Error(ErrorKind::DegreeMismatch, "row index out of range");
    for (auto c : colset)
        if (c >= m.front().size())
            throw Error(ErrorKind::DegreeMismatch, "column index out of range");
    if (k == 0)
        return ParamPolynomial::constant(nparams, Scalar(1));

    std::map<unsigned, ParamPolynomial> memo;
    auto det = [&](auto&& self, unsigned mask) -> ParamPolynomial {
        // the row being expanded is determined by how many columns are used
        std::size_t used = k - static_cast<std::size_t>(__builtin_popcount(mask));
        if (mask == 0)
            return ParamPolynomial::constant(nparams, Scalar(1));
        if (auto it = memo.find(mask); it != memo.end())
            return it->second;
        ParamPolynomial acc(nparams);
        int sign = 1;
        for (std::size_t j = 0; j < k; ++j) {
            if (!(mask & (1U << j)))
                continue;
            const auto& entry = m[rowset[used]][colset[j]];
            if (!entry.is_zero()) {
                ParamPolynomial term = entry * self(self, mask & ~(1U << j));
                if (sign > 0)
                    acc += term;
                else
                    acc -= term;
            }
            sign = -sign;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return det(det, (1U << k) - 1U);
}

} // namespace waring
