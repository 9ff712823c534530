#pragma once

// Catalecticant matrices T_a -> S_{d-a}, dimensions of derivative spaces,
// graded pieces of the apolar ideal, and direct-sum structure for forms in
// independent tuples of variables.

#include <cstddef>
#include <map>
#include <vector>

#include "waring/error.hpp"
#include "waring/linalg.hpp"
#include "waring/poly.hpp"

namespace waring {

/// Rows are differential monomials of order a, columns monomials of degree
/// d - a, both graded-lex; entry (alpha, beta) is the coefficient of x^beta
/// in d^alpha F. The rank is dim Derivs(F)_a = dim Derivs(F)_{d-a}.
struct CatalecticantMatrix {
    int a = 0;
    std::vector<DualMonomial> rows;
    std::vector<Monomial> cols;
    ExactMatrix matrix;
};

namespace detail {

inline void require_nonzero(const Form& f) {
    if (f.is_zero())
        throw Error(ErrorKind::ZeroForm, "operation undefined for the zero form");
}

inline void require_order(const Form& f, int a) {
    if (a < 0 || a > f.degree())
        throw Error(ErrorKind::DegreeMismatch,
                    "order " + std::to_string(a) + " outside [0, " + std::to_string(f.degree()) + "]");
}

} // namespace detail

inline CatalecticantMatrix catalecticant_matrix(const Form& f, int a) {
    detail::require_order(f, a);
    detail::require_nonzero(f);
    const std::size_t n = f.num_vars();
    CatalecticantMatrix cat;
    cat.a = a;
    cat.rows = enumerate_duals(n, a);
    cat.cols = enumerate_monomials(n, f.degree() - a);
    std::map<std::vector<int>, std::size_t> col_index;
    for (std::size_t j = 0; j < cat.cols.size(); ++j)
        col_index.emplace(cat.cols[j].exponents, j);
    cat.matrix = ExactMatrix(cat.rows.size(), cat.cols.size());
    for (std::size_t i = 0; i < cat.rows.size(); ++i) {
        Form deriv = apply_dual(cat.rows[i], f);
        for (const auto& [m, c] : deriv.terms())
            cat.matrix(i, col_index.at(m.exponents)) = c;
    }
    return cat;
}

inline std::size_t derivs_dim(const Form& f, int a) { return rank(catalecticant_matrix(f, a).matrix); }

/// dim Derivs(F)_a for a = 0..d.
inline std::vector<std::size_t> derivs_profile(const Form& f) {
    detail::require_nonzero(f);
    std::vector<std::size_t> dims;
    for (int a = 0; a <= f.degree(); ++a)
        dims.push_back(derivs_dim(f, a));
    return dims;
}

/// (F^perp)_e: coefficient vectors over `duals` (graded-lex order of T_e)
/// of the operators annihilating F. For e = d+1 every operator annihilates
/// F and `full` is set.
struct ApolarPiece {
    int degree = 0;
    std::vector<DualMonomial> duals;
    std::vector<std::vector<Scalar>> basis;
    bool full = false;

    DualPolynomial element(std::size_t k) const {
        DualPolynomial op;
        for (std::size_t j = 0; j < duals.size(); ++j)
            if (!basis.at(k)[j].is_zero())
                op.emplace_back(duals[j], basis[k][j]);
        return op;
    }
};

inline ApolarPiece apolar_piece(const Form& f, int e) {
    detail::require_nonzero(f);
    if (e < 0 || e > f.degree() + 1)
        throw Error(ErrorKind::DegreeMismatch, "apolar degree outside [0, d+1]");
    ApolarPiece piece;
    piece.degree = e;
    piece.duals = enumerate_duals(f.num_vars(), e);
    if (e == f.degree() + 1) {
        piece.full = true;
        for (std::size_t j = 0; j < piece.duals.size(); ++j) {
            std::vector<Scalar> v(piece.duals.size());
            v[j] = Scalar(1);
            piece.basis.push_back(std::move(v));
        }
        return piece;
    }
    // D = sum c_alpha d^alpha kills F iff c^T C = 0 for the catalecticant C
    piece.basis = kernel_basis(catalecticant_matrix(f, e).matrix.transpose());
    return piece;
}

inline bool is_concise(const Form& f) {
    detail::require_nonzero(f);
    if (f.degree() < 1)
        return false;
    return derivs_dim(f, 1) == f.num_vars();
}

/// Summands F_i of a form whose every monomial lives in a single tuple, each
/// over its own single-tuple partition. Tuples without terms give zero forms.
inline std::vector<Form> split_summands(const Form& f) {
    const auto& p = f.partition();
    std::vector<Form> parts;
    std::vector<std::vector<std::size_t>> idx;
    for (std::size_t t = 0; t < p.num_tuples(); ++t) {
        parts.emplace_back(VariablePartition::single(p.tuples()[t]), f.degree());
        idx.push_back(p.tuple_indices(t));
    }
    for (const auto& [m, c] : f.terms()) {
        std::optional<std::size_t> owner;
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (!m.exponents[v])
                continue;
            std::size_t t = p.tuple_of(v);
            if (owner && *owner != t)
                throw Error(ErrorKind::NotIndependentSum,
                            "monomial " + monomial_text(m, p) + " mixes variable tuples");
            owner = t;
        }
        if (!owner)
            throw Error(ErrorKind::NotIndependentSum, "constant term in a partitioned form");
        Monomial local{std::vector<int>(idx[*owner].size())};
        for (std::size_t k = 0; k < idx[*owner].size(); ++k)
            local.exponents[k] = m.exponents[idx[*owner][k]];
        parts[*owner].add_term(local, c);
    }
    return parts;
}

struct DirectSumDims {
    std::size_t total = 0;
    std::vector<std::size_t> per_tuple;
};

/// dim Derivs(F)_a together with the summand dimensions; the two sides of
/// Derivs(F)_a = (+)_i Derivs(F_i)_a are computed independently and compared.
inline DirectSumDims direct_sum_dims(const Form& f, int a) {
    detail::require_nonzero(f);
    if (a < 1 || a > f.degree() - 1)
        throw Error(ErrorKind::DegreeMismatch, "direct-sum order must lie in [1, d-1]");
    auto parts = split_summands(f);
    DirectSumDims out;
    out.total = derivs_dim(f, a);
    std::size_t sum = 0;
    for (const auto& part : parts) {
        std::size_t dim = part.is_zero() ? 0 : derivs_dim(part, a);
        out.per_tuple.push_back(dim);
        sum += dim;
    }
    if (sum != out.total)
        throw Error(ErrorKind::InternalConsistency,
                    "dim Derivs(F)_a = " + std::to_string(out.total) + " but summands give " + std::to_string(sum));
    return out;
}

} // namespace waring
