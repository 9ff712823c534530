#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "test_util.hpp"

using namespace waring;

namespace {

ExactMatrix M(std::vector<std::vector<Scalar>> rows) { return ExactMatrix::from_rows(rows); }

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, bool gaussian) {
    std::uniform_int_distribution<long> d(-5, 5);
    ExactMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = gaussian ? Scalar(mpq_class(d(rng)), mpq_class(d(rng))) : Scalar(mpq_class(d(rng), 1 + (i + j) % 3));
    return m;
}

ExactMatrix product(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t k = 0; k < a.cols(); ++k)
                out(i, j) += a(i, k) * b(k, j);
    return out;
}

/// Leibniz determinant; independent of the elimination code.
Scalar leibniz(const std::vector<std::vector<Scalar>>& a) {
    const std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Scalar det;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                inversions += perm[i] > perm[j];
        Scalar t(inversions % 2 ? -1 : 1);
        for (std::size_t i = 0; i < n; ++i)
            t *= a[i][perm[i]];
        det += t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

bool gaussian_integer(const Scalar& s) { return s.re().get_den() == 1 && s.im().get_den() == 1; }

} // namespace

TEST(Rank, Examples) {
    EXPECT_EQ(rank(ExactMatrix::identity(3)), 3u);
    EXPECT_EQ(rank(ExactMatrix(2, 5)), 0u);
    EXPECT_EQ(rank(M({{1, 2}, {2, 4}})), 1u);
    EXPECT_EQ(rank(ExactMatrix(0, 0)), 0u);
    EXPECT_EQ(rank(M({{1, Scalar::i()}, {Scalar::i(), -1}})), 1u);
    EXPECT_EQ(rank(M({{1, Scalar::i()}, {Scalar::i(), 1}})), 2u);
}

TEST(Rank, TransposeProperty) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 80; ++k) {
        std::size_t r = 1 + k % 6, c = 1 + (k * 7) % 5, inner = 1 + k % 3;
        auto m = k % 2 ? random_matrix(rng, r, c, k % 4 == 1) : product(random_matrix(rng, r, inner, true), random_matrix(rng, inner, c, false));
        EXPECT_EQ(rank(m), rank(m.transpose()));
        if (k % 2 == 0) {
            EXPECT_LE(rank(m), inner);
        }
    }
}

TEST(Kernel, Examples) {
    EXPECT_TRUE(kernel_basis(ExactMatrix::identity(2)).empty());
    auto k = kernel_basis(M({{1, 1}}));
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0], (std::vector<Scalar>{1, -1}));
    EXPECT_EQ(kernel_basis(ExactMatrix(1, 3)).size(), 3u);
}

TEST(Kernel, Properties) {
    std::mt19937_64 rng(6);
    for (int k = 0; k < 60; ++k) {
        std::size_t r = 1 + k % 4, c = 2 + k % 5, inner = 1 + k % 2;
        auto m = product(random_matrix(rng, r, inner, k % 3 == 0), random_matrix(rng, inner, c, k % 3 == 1));
        auto ker = kernel_basis(m);
        EXPECT_EQ(rank(m) + ker.size(), c);
        for (const auto& v : ker) {
            for (const auto& e : m * std::span<const Scalar>(v))
                EXPECT_TRUE(e.is_zero());
            EXPECT_TRUE(std::all_of(v.begin(), v.end(), gaussian_integer));
            EXPECT_EQ(primitive_gaussian(v), v);
        }
        if (!ker.empty()) {
            EXPECT_EQ(rank(ExactMatrix::from_rows(ker)), ker.size());
        }
    }
}

TEST(Kernel, PrimitiveNormalization) {
    std::vector<Scalar> v{Scalar(mpq_class(0)), Scalar(mpq_class(0), mpq_class(2, 3)), Scalar(mpq_class(4, 3))};
    auto p = primitive_gaussian(v);
    // scaled to Gaussian integers with unit content, first nonzero entry in the first quadrant
    EXPECT_EQ(p, (std::vector<Scalar>{0, 1, Scalar(mpq_class(0), mpq_class(-2))}));
}

TEST(Solve, Examples) {
    auto x = solve(ExactMatrix::identity(2), std::vector<Scalar>{1, 2});
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, (std::vector<Scalar>{1, 2}));
    auto y = solve(M({{1, 1}}), std::vector<Scalar>{3});
    ASSERT_TRUE(y);
    EXPECT_EQ((*y)[0] + (*y)[1], Scalar(3));
    EXPECT_FALSE(solve(M({{1}, {0}}), std::vector<Scalar>{0, 1}));
}

TEST(Solve, RandomConsistentSystems) {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 50; ++k) {
        std::size_t r = 2 + k % 4, c = 1 + k % 5;
        auto m = random_matrix(rng, r, c, k % 2 == 0);
        auto x0 = random_matrix(rng, c, 1, true).transpose().row(0);
        auto b = m * std::span<const Scalar>(x0);
        auto x = solve(m, b);
        ASSERT_TRUE(x);
        EXPECT_EQ(m * std::span<const Scalar>(*x), b);
        // perturb b out of the column space when possible
        if (rank(m) < r) {
            auto ker = kernel_basis(m.transpose());
            auto bad = b;
            for (std::size_t i = 0; i < r; ++i)
                bad[i] += ker[0][i].conj();
            EXPECT_FALSE(solve(m, bad));
        }
    }
}

TEST(SymbolicMinor, Examples) {
    auto l = ParamPolynomial::variable(1, 0);
    auto one = ParamPolynomial::constant(1, 1);
    std::vector<std::size_t> r0{0}, r01{0, 1};
    EXPECT_EQ(symbolic_minor(ParamMatrix{{l}}, r0, r0), l);
    auto det = symbolic_minor(ParamMatrix{{one, l}, {l, one}}, r01, r01);
    EXPECT_EQ(det, one - l * l);
    EXPECT_EQ(det.str(), "-l1^2+1");
}

TEST(SymbolicMinor, Guard) {
    const std::size_t n = kMaxSymbolicMinor + 1;
    ParamMatrix m(n, std::vector<ParamPolynomial>(n, ParamPolynomial::constant(1, 1)));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    try {
        symbolic_minor(m, idx, idx);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MinorTooLarge);
    }
    idx.pop_back();
    EXPECT_TRUE(symbolic_minor(m, idx, idx).is_zero());
}

TEST(SymbolicMinor, MatchesLeibnizAtPoints) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int k = 0; k < 25; ++k) {
        const std::size_t n = 1 + k % 5, p = 2;
        ParamMatrix m(n, std::vector<ParamPolynomial>(n, ParamPolynomial(p)));
        for (auto& row : m)
            for (auto& e : row) {
                e = ParamPolynomial::constant(p, d(rng));
                e += Scalar(d(rng)) * ParamPolynomial::variable(p, 0);
                if (k % 2)
                    e += Scalar(d(rng)) * ParamPolynomial::variable(p, 1);
            }
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        auto det = symbolic_minor(m, idx, idx);
        for (int t = 0; t < 3; ++t) {
            std::vector<Scalar> pt{Scalar(d(rng)), Scalar(mpq_class(d(rng), 2))};
            std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    a[i][j] = m[i][j].evaluate(pt);
            EXPECT_EQ(det.evaluate(pt), leibniz(a));
        }
    }
}

TEST(SymbolicMinor, SubsetSelection) {
    auto l = ParamPolynomial::variable(1, 0);
    auto c = [](long v) { return ParamPolynomial::constant(1, v); };
    ParamMatrix m{{c(1), c(2), l}, {c(3), c(4), c(5)}, {l, c(0), c(1)}};
    std::vector<std::size_t> rows{0, 2}, cols{1, 2};
    // det [[2, l], [0, 1]] = 2
    EXPECT_EQ(symbolic_minor(m, rows, cols), c(2));
}
