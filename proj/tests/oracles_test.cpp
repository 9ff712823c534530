#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

using namespace waring;
using testutil::linear;

namespace {

Form F(std::string_view text) { return parse_form(text); }

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InternalConsistency;
}

DecompositionWitness exact(std::vector<ExactTerm> terms) { return {std::move(terms), 0.0}; }

Form binary_monomial(int a, int b) {
    Form f(VariablePartition::single({"x", "y"}), a + b);
    f.add_term(Monomial{{a, b}}, 1);
    return f;
}

Scalar Q(const char* s) { return Scalar::parse(s); }

} // namespace

TEST(Sylvester, Examples) {
    EXPECT_EQ(sylvester_rank(F("vars: x y; degree: 3; 1 x^3; 1 y^3")).rank, 2u);
    EXPECT_EQ(sylvester_rank(F("vars: x y; degree: 3; 1 x^2*y")).rank, 3u);
    EXPECT_EQ(sylvester_rank(F("vars: x y; degree: 4; 1 x^4")).rank, 1u);
    EXPECT_EQ(sylvester_rank(F("vars: x y; degree: 6; 1 x*y^5")).rank, 6u);
    EXPECT_EQ(sylvester_rank(F("vars: x y; degree: 4; 1 x^2*y^2")).rank, 3u);
    auto q = sylvester_rank(testutil::form("quintic.form"));
    EXPECT_EQ(q.rank, 3u);
    EXPECT_EQ(q.apolar_degree, 3);
    EXPECT_TRUE(q.certified);
    EXPECT_EQ(sylvester_rank(testutil::form("quartic_xy.form")).rank, 3u);
    EXPECT_EQ(kind_of([] { sylvester_rank(testutil::form("xyz.form")); }), ErrorKind::NotBinary);
    EXPECT_EQ(kind_of([] { sylvester_rank(Form(VariablePartition::single({"x", "y"}), 3)); }), ErrorKind::ZeroForm);
}

TEST(Sylvester, GeneratorAnnihilates) {
    auto f = testutil::form("quintic.form");
    auto res = sylvester_rank(f);
    auto piece = apolar_piece(f, res.apolar_degree);
    ASSERT_EQ(res.generator.size(), piece.duals.size());
    DualPolynomial op;
    for (std::size_t j = 0; j < piece.duals.size(); ++j)
        if (!res.generator[j].is_zero())
            op.emplace_back(piece.duals[j], res.generator[j]);
    EXPECT_TRUE(apply_dual(op, f, res.apolar_degree).is_zero());
    EXPECT_TRUE(binary_squarefree(res.generator));
}

TEST(Sylvester, Squarefree) {
    // coefficients of x^2, xy, y^2 in the dual variables
    EXPECT_TRUE(binary_squarefree({1, 0, -1}));
    EXPECT_FALSE(binary_squarefree({1, 2, 1}));
    EXPECT_FALSE(binary_squarefree({1, 0, 0}));
    EXPECT_TRUE(binary_squarefree({0, 1, 0}));
    EXPECT_TRUE(binary_squarefree({1, 0, 1}));
}

TEST(Sylvester, BoundedByCatalecticantAndDegree) {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 150; ++k) {
        const int d = 2 + k % 9;
        auto f = testutil::random_binary(rng, d);
        auto r = sylvester_rank(f, k).rank;
        EXPECT_GE(r, catalecticant_bound(f).value);
        EXPECT_LE(r, static_cast<std::size_t>(d));
    }
}

TEST(Sylvester, AgreesWithMonomialFormula) {
    for (int a = 1; a <= 6; ++a)
        for (int b = 1; b <= 6; ++b) {
            auto f = binary_monomial(a, b);
            auto mono = monomial_ranks(*MonomialProfile::of(f));
            EXPECT_EQ(sylvester_rank(f).rank, mono.waring.lo) << a << "," << b;
            EXPECT_EQ(sylvester_rank(f).rank, static_cast<std::size_t>(std::max(a, b) + 1));
        }
}

TEST(Sylvester, PowerSumsOfDistinctLines) {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long> c(-6, 6);
    auto p = VariablePartition::single({"x", "y"});
    for (int k = 0; k < 40; ++k) {
        const int d = 4 + k % 5;
        const std::size_t r = 1 + k % 3;
        Form f(p, d);
        for (std::size_t i = 0; i < r; ++i)
            f += power_of_linear(linear({1, Scalar(static_cast<long>(i) * 7 + c(rng) * 100)}), d, p);
        // r <= d/2 distinct points give rank exactly r
        if (2 * r <= static_cast<std::size_t>(d)) {
            EXPECT_EQ(sylvester_rank(f).rank, r);
        }
    }
}

TEST(MonomialRanks, Examples) {
    auto xyz = monomial_ranks(MonomialProfile({1, 1, 1}));
    EXPECT_EQ(xyz.waring.lo, 4u);
    EXPECT_TRUE(xyz.waring.exact());
    EXPECT_EQ(xyz.cactus.lo, 4u);
    EXPECT_EQ(xyz.border.lo, 3u);
    EXPECT_EQ(xyz.border.hi, 4u);

    auto xy3 = monomial_ranks(MonomialProfile({1, 3}));
    EXPECT_EQ(xy3.waring.lo, 4u);
    EXPECT_EQ(xy3.cactus.lo, 2u);
    EXPECT_EQ(xy3.border.lo, 2u);
    EXPECT_TRUE(xy3.border.exact());

    for (int d = 1; d <= 6; ++d) {
        auto x = monomial_ranks(MonomialProfile({d}));
        EXPECT_EQ(x.waring.lo, 1u);
        EXPECT_EQ(x.cactus.lo, 1u);
        EXPECT_EQ(x.border.lo, 1u);
    }

    // zero exponents drop out and order is irrelevant
    EXPECT_EQ(MonomialProfile({0, 3, 0, 1}).exponents(), (std::vector<int>{1, 3}));
    EXPECT_EQ(kind_of([] { MonomialProfile({0, 0}); }), ErrorKind::InvalidArgument);
    EXPECT_FALSE(MonomialProfile::of(testutil::form("fermat_cubic.form")));
    EXPECT_TRUE(MonomialProfile::of(testutil::form("xyz.form")));
}

TEST(MonomialRanks, BorderBracketsCatalecticant) {
    for (int a = 1; a <= 3; ++a)
        for (int b = a; b <= 3; ++b)
            for (int c = b; c <= 4; ++c) {
                Form f(VariablePartition::single({"x", "y", "z"}), a + b + c);
                f.add_term(Monomial{{a, b, c}}, 1);
                auto rec = monomial_ranks(*MonomialProfile::of(f));
                auto cat = catalecticant_bound(f).value;
                EXPECT_LE(cat, rec.border.lo);
                EXPECT_LE(rec.border.hi, rec.cactus.lo);
                EXPECT_LE(rec.cactus.lo, rec.waring.lo);
                if (a + b <= c) {
                    EXPECT_EQ(rec.border.lo, rec.cactus.lo);
                }
                EXPECT_EQ(monomial_max_derivs(*MonomialProfile::of(f)), cat);
            }
}

TEST(GenericRank, Values) {
    for (int d = 1; d <= 12; ++d)
        EXPECT_EQ(generic_rank(2, d), static_cast<std::size_t>((d + 2) / 2)) << d;
    for (std::size_t n = 1; n <= 6; ++n)
        EXPECT_EQ(generic_rank(n, 2), n);
    EXPECT_EQ(generic_rank(3, 3), 4u);
    EXPECT_EQ(generic_rank(3, 4), 6u);
    EXPECT_EQ(generic_rank(4, 4), 10u);
    EXPECT_EQ(generic_rank(5, 3), 8u);
    EXPECT_EQ(generic_rank(5, 4), 15u);
    EXPECT_EQ(generic_rank(3, 5), 7u);
    EXPECT_EQ(generic_rank(4, 3), 5u);
    EXPECT_EQ(kind_of([] { generic_rank(0, 3); }), ErrorKind::InvalidArgument);
}

TEST(GenericRank, MatchesRandomBinarySylvester) {
    std::mt19937_64 rng(43);
    for (int d = 2; d <= 9; ++d) {
        int hits = 0;
        for (int k = 0; k < 10; ++k)
            hits += sylvester_rank(testutil::random_binary(rng, d), k).rank == generic_rank(2, d);
        EXPECT_GE(hits, 9) << d;
    }
}

TEST(ExpectedDerivsDim, Values) {
    EXPECT_EQ(expected_derivs_dim(3, 4, 2, 10), 6u);
    EXPECT_EQ(expected_derivs_dim(3, 4, 1, 10), 3u);
    EXPECT_EQ(expected_derivs_dim(3, 4, 2, 2), 2u);
    EXPECT_EQ(expected_derivs_dim(2, 5, 0, 3), 1u);
    EXPECT_EQ(kind_of([] { expected_derivs_dim(2, 3, 4, 1); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { expected_derivs_dim(2, 3, 1, 0); }), ErrorKind::InvalidArgument);
}

TEST(VerifyDecomposition, XyzWitness) {
    auto f = testutil::form("xyz.form");
    auto listed = exact({{Q("1/24"), linear({1, 1, 1})},
                         {Q("-1/24"), linear({1, 1, -1})},
                         {Q("-1/24"), linear({1, -1, 1})},
                         {Q("1/24"), linear({-1, 1, 1})}});
    EXPECT_FALSE(verify_decomposition(f, listed));
    auto fixed = exact({{Q("1/24"), linear({1, 1, 1})},
                        {Q("-1/24"), linear({-1, 1, 1})},
                        {Q("-1/24"), linear({1, -1, 1})},
                        {Q("-1/24"), linear({1, 1, -1})}});
    EXPECT_TRUE(verify_decomposition(f, fixed));
    EXPECT_EQ(fixed.size(), monomial_ranks(MonomialProfile({1, 1, 1})).waring.lo);
}

TEST(VerifyDecomposition, GaussianAndRotation) {
    auto i = Scalar::i();
    auto pair = exact({{Q("1/2"), linear({1, i})}, {Q("1/2"), linear({1, -i})}});
    EXPECT_TRUE(verify_decomposition(F("vars: x y; degree: 2; 1 x^2; -1 y^2"), pair));
    EXPECT_FALSE(verify_decomposition(testutil::form("gaussian.form"), pair));
    auto rotation = exact({{1, linear({Q("3/5"), Q("4/5")})}, {1, linear({Q("4/5"), Q("-3/5")})}});
    EXPECT_TRUE(verify_decomposition(testutil::form("gaussian.form"), rotation));
}

TEST(VerifyDecomposition, CatalogueWitnesses) {
    auto i = Scalar::i();
    auto cgv = exact({{Q("1/12"), linear({1, 1, 1})},
                      {Q("-1/12"), linear({1, i, -1})},
                      {Q("1/12"), linear({1, -1, 1})},
                      {Q("-1/12"), linear({1, -i, -1})},
                      {Q("-1/3"), linear({0, 0, 1})}});
    EXPECT_TRUE(verify_decomposition(testutil::form("cgv2.form"), cgv));

    auto sq = codec::witness(testutil::input("sq_sum_evidence.json")["witness"]);
    EXPECT_EQ(sq.size(), 4u);
    EXPECT_TRUE(verify_decomposition(testutil::form("sq_sum.form"), sq));
}

TEST(VerifyDecomposition, Errors) {
    auto f = testutil::form("xyz.form");
    DecompositionWitness numeric{std::vector<NumericTerm>{{{1, 0}, {{1, 0}, {0, 0}, {0, 0}}}}, 0.5};
    EXPECT_EQ(kind_of([&] { verify_decomposition(f, numeric); }), ErrorKind::NumericWitness);
    EXPECT_EQ(kind_of([&] { verify_decomposition(f, exact({{1, linear({1, 1})}})); }), ErrorKind::DegreeMismatch);
    EXPECT_EQ(kind_of([&] { verify_decomposition(f, exact({{1, linear({0, 0, 0})}})); }), ErrorKind::ZeroLinearForm);
}

TEST(NumericResidual, MatchesExactDifference) {
    auto f = F("vars: x y; degree: 3; 1 x^3; 1 y^3");
    std::vector<NumericTerm> good{{{1, 0}, {{1, 0}, {0, 0}}}, {{1, 0}, {{0, 0}, {1, 0}}}};
    EXPECT_NEAR(numeric_residual(f, good), 0.0, 1e-15);
    // dropping y^3 leaves a residual of norm 1
    EXPECT_NEAR(numeric_residual(f, {good[0]}), 1.0, 1e-15);
    // 2x^3 + y^3 against x^3 + y^3
    std::vector<NumericTerm> off{{{2, 0}, {{1, 0}, {0, 0}}}, {{1, 0}, {{0, 0}, {1, 0}}}};
    EXPECT_NEAR(numeric_residual(f, off), 1.0, 1e-15);
}

TEST(DecompositionSplits, Examples) {
    auto p = VariablePartition({{"x", "y"}, {"z", "w"}});
    auto w = exact({{1, linear({1, 2, 0, 0})}, {1, linear({0, 0, 1, 1})}, {1, linear({0, 1, 0, 0})}});
    auto rep = decomposition_splits(w, p);
    EXPECT_TRUE(rep.split);
    EXPECT_EQ(rep.groups, (std::vector<std::vector<std::size_t>>{{0, 2}, {1}}));

    auto part = split_part(w, rep, p, 0);
    ASSERT_EQ(part.size(), 2u);
    EXPECT_EQ(part.exact_terms()[0].form, linear({1, 2}));

    auto mixed = exact({{1, linear({1, 0, 0, 0})}, {1, linear({1, 0, 1, 0})}});
    auto mrep = decomposition_splits(mixed, p);
    EXPECT_FALSE(mrep.split);
    EXPECT_EQ(mrep.mixed, (std::vector<std::size_t>{1}));

    DecompositionWitness numeric{std::vector<NumericTerm>{{{1, 0}, {{1, 0}, {1e-12, 0}, {0, 0}, {0, 0}}},
                                                          {{1, 0}, {{0, 0}, {0, 0}, {1e-6, 0}, {0, 0}}},
                                                          {{1, 0}, {{1e-10, 0}, {0, 0}, {0, 0}, {0, 0}}}},
                                 0.0};
    auto nrep = decomposition_splits(numeric, p);
    EXPECT_FALSE(nrep.split);
    EXPECT_EQ(nrep.groups, (std::vector<std::vector<std::size_t>>{{0}, {1}}));
    EXPECT_EQ(nrep.zero, (std::vector<std::size_t>{2}));
    EXPECT_TRUE(decomposition_splits(numeric, p, 1e-11).mixed.empty());
}
