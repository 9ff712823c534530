#pragma once

// Certified lower bounds for Waring and border rank:
//  * the catalecticant bound max_a dim Derivs(F)_a,
//  * the affine-subspace bound dim W + minrank(W) for a non-linear affine
//    space W of derivatives, with exact minrank certificates for quadrics,
//  * the singularity bound dim Derivs(F)_{d-a} + dim Sigma_a(F) for concise F.

#include <algorithm>
#include <cstddef>
#include <map>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "waring/catalecticant.hpp"
#include "waring/error.hpp"
#include "waring/linalg.hpp"
#include "waring/param_poly.hpp"
#include "waring/poly.hpp"

namespace waring {

/// Ordered from strongest to weakest.
enum class Rigor { certified = 0, assumed = 1, heuristic = 2 };

inline std::string_view to_string(Rigor r) {
    switch (r) {
    case Rigor::certified: return "certified";
    case Rigor::assumed: return "assumed";
    case Rigor::heuristic: return "heuristic";
    }
    return "heuristic";
}

inline Rigor rigor_from_string(std::string_view s) {
    if (s == "certified")
        return Rigor::certified;
    if (s == "assumed")
        return Rigor::assumed;
    if (s == "heuristic")
        return Rigor::heuristic;
    throw Error(ErrorKind::SchemaError, "unknown rigor '" + std::string(s) + "'");
}

inline Rigor weakest(Rigor a, Rigor b) { return a > b ? a : b; }

enum class BoundKind { catalecticant, cgv, singular, border };

inline std::string_view to_string(BoundKind k) {
    switch (k) {
    case BoundKind::catalecticant: return "catalecticant";
    case BoundKind::cgv: return "cgv";
    case BoundKind::singular: return "singular";
    case BoundKind::border: return "border";
    }
    return "catalecticant";
}

struct LowerBoundRecord {
    BoundKind kind = BoundKind::catalecticant;
    int a = 0;
    std::size_t value = 0;
    Rigor rigor = Rigor::certified;
};

// ---------------------------------------------------------------------------
// Catalecticant bound
// ---------------------------------------------------------------------------

/// max_a dim Derivs(F)_a with the smallest maximizing a.
inline LowerBoundRecord catalecticant_bound(const Form& f) {
    detail::require_nonzero(f);
    LowerBoundRecord rec;
    for (int a = 0; a <= f.degree(); ++a) {
        std::size_t dim = derivs_dim(f, a);
        if (dim > rec.value) {
            rec.value = dim;
            rec.a = a;
        }
    }
    return rec;
}

/// The catalecticant bound read as a border-rank lower bound.
inline LowerBoundRecord border_bound(const Form& f) {
    auto rec = catalecticant_bound(f);
    rec.kind = BoundKind::border;
    return rec;
}

// ---------------------------------------------------------------------------
// Affine-subspace (CGV) bound
// ---------------------------------------------------------------------------

/// W = offset + span(basis), all members forms of degree a.
struct AffineFormSpace {
    int a = 0;
    Form offset;
    std::vector<Form> basis;

    std::size_t dim() const { return basis.size(); }
};

struct MinorIndex {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
};

/// The selected m x m minor of the parametric Gram matrix is a nonzero constant.
struct ConstantMinor {
    MinorIndex minor;
};

/// sum_k multiplier_k * minor_k == 1 identically in the parameters.
struct MinorFamilyUnit {
    std::vector<MinorIndex> minors;
    std::vector<ParamPolynomial> multipliers;
    int degree_cutoff = 4;
};

/// minrank(W) >= m taken on trust; taints every certificate containing it.
struct Assumed {
    std::string justification;
};

struct MinrankCertificate {
    std::size_t m = 0;
    std::variant<ConstantMinor, MinorFamilyUnit, Assumed> kind;
};

/// Coefficients of offset + sum_j l_j basis_j as polynomials in l.
inline std::map<Monomial, ParamPolynomial, GradedLex> pencil_coefficients(const AffineFormSpace& w) {
    const std::size_t p = w.dim();
    std::map<Monomial, ParamPolynomial, GradedLex> coeffs;
    auto at = [&](const Monomial& m) -> ParamPolynomial& {
        return coeffs.try_emplace(m, ParamPolynomial(p)).first->second;
    };
    for (const auto& [m, c] : w.offset.terms())
        at(m) += ParamPolynomial::constant(p, c);
    for (std::size_t j = 0; j < p; ++j)
        for (const auto& [m, c] : w.basis[j].terms())
            at(m) += c * ParamPolynomial::variable(p, j);
    return coeffs;
}

/// Gram matrix of the quadric pencil: G[i][i] is the coefficient of x_i^2,
/// G[i][j] half the coefficient of x_i x_j.
inline ParamMatrix pencil_gram(const AffineFormSpace& w) {
    if (w.a != 2)
        throw Error(ErrorKind::UnsupportedDegree, "Gram matrices exist only for quadrics");
    const std::size_t n = w.offset.num_vars(), p = w.dim();
    ParamMatrix g(n, std::vector<ParamPolynomial>(n, ParamPolynomial(p)));
    const Scalar half(mpq_class(1, 2));
    for (const auto& [m, c] : pencil_coefficients(w)) {
        std::vector<std::size_t> vars;
        for (std::size_t v = 0; v < n; ++v)
            for (int e = 0; e < m.exponents[v]; ++e)
                vars.push_back(v);
        if (vars[0] == vars[1]) {
            g[vars[0]][vars[0]] = c;
        } else {
            g[vars[0]][vars[1]] = half * c;
            g[vars[1]][vars[0]] = half * c;
        }
    }
    return g;
}

namespace detail {

inline std::vector<Scalar> coefficient_vector(const Form& f, const std::vector<Monomial>& basis) {
    std::vector<Scalar> v;
    v.reserve(basis.size());
    for (const auto& m : basis)
        v.push_back(f.coefficient(m));
    return v;
}

inline ExactMatrix stack_rows(const std::vector<Form>& forms, const std::vector<Monomial>& basis) {
    ExactMatrix m(forms.size(), basis.size());
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            m(i, j) = forms[i].coefficient(basis[j]);
    return m;
}

inline void check_minor_shape(const MinorIndex& idx, std::size_t m, std::size_t n) {
    if (idx.rows.size() != m || idx.cols.size() != m)
        throw Error(ErrorKind::CertificateRejected, "minor is not " + std::to_string(m) + "x" + std::to_string(m));
    for (auto r : idx.rows)
        if (r >= n)
            throw Error(ErrorKind::CertificateRejected, "minor row out of range");
    for (auto c : idx.cols)
        if (c >= n)
            throw Error(ErrorKind::CertificateRejected, "minor column out of range");
}

} // namespace detail

/// Derivs(F)_a as explicit forms of degree a (the row space of the order
/// d-a catalecticant, as primitive integral rows of its echelon form).
inline std::vector<Form> derivs_basis(const Form& f, int a) {
    detail::require_nonzero(f);
    detail::require_order(f, a);
    auto cat = catalecticant_matrix(f, f.degree() - a);
    auto ech = detail::bareiss_echelon(cat.matrix);
    std::vector<Form> out;
    for (const auto& row : ech.rows) {
        std::vector<Scalar> v;
        for (const auto& z : row)
            v.push_back(z.to_scalar());
        v = primitive_gaussian(v);
        Form g(f.partition_ptr(), a);
        for (std::size_t j = 0; j < v.size(); ++j)
            g.add_term(cat.cols[j], v[j]);
        out.push_back(std::move(g));
    }
    return out;
}

/// Verifies the affine-subspace bound rk(F) >= dim W + m.
inline LowerBoundRecord verify_cgv(const Form& f, const AffineFormSpace& w, const MinrankCertificate& cert) {
    detail::require_nonzero(f);
    const int d = f.degree();
    if (w.a < 1 || w.a > d - 1)
        throw Error(ErrorKind::DegreeMismatch, "affine space degree must lie in [1, d-1]");
    std::vector<Form> members{w.offset};
    members.insert(members.end(), w.basis.begin(), w.basis.end());
    for (const auto& g : members) {
        if (g.degree() != w.a)
            throw Error(ErrorKind::DegreeMismatch, "member form of wrong degree");
        if (g.partition().names() != f.partition().names())
            throw Error(ErrorKind::UnknownVariable, "member form over different variables");
    }
    const bool exact_kind = !std::holds_alternative<Assumed>(cert.kind);
    if (exact_kind && w.a != 2)
        throw Error(ErrorKind::UnsupportedDegree, "exact minrank certificates need quadratic members (a = 2)");
    if (cert.m == 0)
        throw Error(ErrorKind::CertificateRejected, "minrank bound must be positive");

    const auto monos = enumerate_monomials(f.num_vars(), w.a);
    const std::size_t p = w.dim();
    if (rank(detail::stack_rows(w.basis, monos)) != p)
        throw Error(ErrorKind::CertificateRejected, "basis forms are linearly dependent");
    if (rank(detail::stack_rows(members, monos)) != p + 1)
        throw Error(ErrorKind::LinearSubspace, "offset lies in the span of the basis (0 in W)");

    // Derivs(F)_a is the row space of the order d-a catalecticant
    const auto cat = catalecticant_matrix(f, d - w.a);
    const ExactMatrix ct = cat.matrix.transpose();
    for (std::size_t k = 0; k < members.size(); ++k) {
        auto v = detail::coefficient_vector(members[k], cat.cols);
        if (!solve(ct, v))
            throw Error(ErrorKind::NotInDerivs, k == 0 ? "offset not in Derivs(F)_a"
                                                       : "basis form " + std::to_string(k) + " not in Derivs(F)_a");
    }

    LowerBoundRecord rec{BoundKind::cgv, w.a, p + cert.m, Rigor::certified};
    const std::size_t n = f.num_vars();
    if (const auto* cm = std::get_if<ConstantMinor>(&cert.kind)) {
        detail::check_minor_shape(cm->minor, cert.m, n);
        auto minor = symbolic_minor(pencil_gram(w), cm->minor.rows, cm->minor.cols);
        if (!minor.is_constant() || minor.is_zero())
            throw Error(ErrorKind::CertificateRejected, "selected minor is " + minor.str() + ", not a nonzero constant");
    } else if (const auto* fu = std::get_if<MinorFamilyUnit>(&cert.kind)) {
        if (fu->minors.empty() || fu->minors.size() != fu->multipliers.size())
            throw Error(ErrorKind::CertificateRejected, "need one multiplier per minor");
        auto gram = pencil_gram(w);
        ParamPolynomial sum(p);
        for (std::size_t k = 0; k < fu->minors.size(); ++k) {
            detail::check_minor_shape(fu->minors[k], cert.m, n);
            const auto& mult = fu->multipliers[k];
            if (mult.nparams() != p)
                throw Error(ErrorKind::CertificateRejected, "multiplier has wrong parameter count");
            if (mult.total_degree() > fu->degree_cutoff)
                throw Error(ErrorKind::CertificateRejected, "multiplier exceeds the degree cutoff");
            sum += mult * symbolic_minor(gram, fu->minors[k].rows, fu->minors[k].cols);
        }
        if (sum != ParamPolynomial::constant(p, Scalar(1)))
            throw Error(ErrorKind::CertificateRejected, "minor combination is " + sum.str() + ", not 1");
    } else {
        rec.rigor = Rigor::assumed;
    }
    return rec;
}

/// A non-linear affine hyperplane of Derivs(F)_2 on which one Gram entry is
/// constant and nonzero, with its m = 1 certificate. The resulting bound is
/// exactly dim Derivs(F)_2.
inline std::pair<AffineFormSpace, MinrankCertificate> hyperplane_space(const Form& f) {
    if (f.degree() < 3)
        throw Error(ErrorKind::DegreeMismatch, "quadric derivatives need degree >= 3");
    auto basis = derivs_basis(f, 2);
    // first monomial (graded-lex) carried by some basis form
    const auto monos = enumerate_monomials(f.num_vars(), 2);
    for (const auto& mu : monos) {
        auto it = std::find_if(basis.begin(), basis.end(), [&](const Form& g) { return !g.coefficient(mu).is_zero(); });
        if (it == basis.end())
            continue;
        Form offset = (Scalar(1) / it->coefficient(mu)) * *it;
        AffineFormSpace w{2, offset, {}};
        for (auto jt = basis.begin(); jt != basis.end(); ++jt) {
            if (jt == it)
                continue;
            w.basis.push_back(*jt - jt->coefficient(mu) * offset);
        }
        std::vector<std::size_t> vars;
        for (std::size_t v = 0; v < mu.size(); ++v)
            for (int e = 0; e < mu.exponents[v]; ++e)
                vars.push_back(v);
        MinrankCertificate cert{1, ConstantMinor{{{vars[0]}, {vars[1]}}}};
        return {std::move(w), std::move(cert)};
    }
    throw Error(ErrorKind::InternalConsistency, "Derivs(F)_2 is empty for a nonzero form");
}

// ---------------------------------------------------------------------------
// Singularity bound
// ---------------------------------------------------------------------------

/// Polynomial map phi: A^p -> T_1 claimed to land in Sigma_a(F).
struct MultiplicityLocusWitness {
    int a = 1;
    std::size_t params = 0;
    std::vector<ParamPolynomial> components;
};

inline constexpr int kJacobianAttempts = 5;
inline constexpr long kJacobianRange = 100;

/// Jacobian (n x p) of phi at an integer point; rank p certifies that the
/// image has dimension p.
inline ExactMatrix witness_jacobian(const MultiplicityLocusWitness& w, std::span<const Scalar> point) {
    ExactMatrix j(w.components.size(), w.params);
    for (std::size_t i = 0; i < w.components.size(); ++i)
        for (std::size_t k = 0; k < w.params; ++k)
            j(i, k) = w.components[i].derivative(k).evaluate(point);
    return j;
}

/// Verifies rk(F) >= dim Derivs(F)_{d-a} + p where phi(A^p) lies in
/// Sigma_a(F) and has dimension p. Jacobian points are drawn from
/// [-100, 100]^p by an RNG seeded with `seed`.
inline LowerBoundRecord verify_singular(const Form& f, int a, const MultiplicityLocusWitness& w,
                                        std::uint64_t seed = 0) {
    detail::require_nonzero(f);
    const int d = f.degree();
    if (a < 1 || a > d - 1)
        throw Error(ErrorKind::DegreeMismatch, "singularity order must lie in [1, d-1]");
    if (w.a != a)
        throw Error(ErrorKind::DegreeMismatch, "witness order does not match a");
    if (!is_concise(f))
        throw Error(ErrorKind::NotConcise, "the singularity bound needs a concise form");
    const std::size_t n = f.num_vars(), p = w.params;
    if (w.components.size() != n)
        throw Error(ErrorKind::DegreeMismatch, "witness map needs one component per variable");
    for (const auto& c : w.components)
        if (c.nparams() != p)
            throw Error(ErrorKind::DegreeMismatch, "witness component has wrong parameter count");
    if (p == 0)
        throw Error(ErrorKind::DimensionNotCertified, "witness map has no parameters");

    const ParamPolynomial zero(p), one = ParamPolynomial::constant(p, Scalar(1));
    for (const auto& alpha : enumerate_duals(n, a)) {
        Form deriv = apply_dual(alpha, f);
        if (deriv.is_zero())
            continue;
        auto composed = evaluate<ParamPolynomial>(deriv, w.components, zero, one);
        if (!composed.is_zero())
            throw Error(ErrorKind::NotInLocus, "partial " + dual_text(alpha, f.partition()) +
                                                   " F does not vanish on the witness: " + composed.str());
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-kJacobianRange, kJacobianRange);
    bool full_rank = false;
    for (int attempt = 0; attempt < kJacobianAttempts && !full_rank; ++attempt) {
        std::vector<Scalar> point;
        for (std::size_t k = 0; k < p; ++k)
            point.emplace_back(dist(rng));
        full_rank = rank(witness_jacobian(w, point)) == p;
    }
    if (!full_rank)
        throw Error(ErrorKind::DimensionNotCertified,
                    "Jacobian rank below " + std::to_string(p) + " at " + std::to_string(kJacobianAttempts) +
                        " random points");
    return {BoundKind::singular, a, derivs_dim(f, d - a) + p, Rigor::certified};
}

/// Linear witness map onto a coordinate subspace: the listed variables are
/// free parameters (in order), all others vanish.
inline MultiplicityLocusWitness coordinate_witness(int a, std::size_t nvars, const std::vector<std::size_t>& free_vars) {
    MultiplicityLocusWitness w{a, free_vars.size(), std::vector<ParamPolynomial>(nvars, ParamPolynomial(free_vars.size()))};
    for (std::size_t k = 0; k < free_vars.size(); ++k)
        w.components.at(free_vars[k]) = ParamPolynomial::variable(free_vars.size(), k);
    return w;
}

} // namespace waring
