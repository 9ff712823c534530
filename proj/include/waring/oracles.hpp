#pragma once

// Closed-form rank oracles (binary forms, monomials, generic forms) and
// exact verification of power-sum decompositions.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "waring/bounds.hpp"
#include "waring/catalecticant.hpp"
#include "waring/error.hpp"
#include "waring/poly.hpp"

namespace waring {

// ---------------------------------------------------------------------------
// Decomposition witnesses
// ---------------------------------------------------------------------------

struct ExactTerm {
    Scalar coeff;
    LinearForm form;
};

struct NumericTerm {
    std::complex<double> coeff{1.0, 0.0};
    std::vector<std::complex<double>> form;
};

/// F = sum c_i l_i^d, either exactly over Q(i) or numerically.
struct DecompositionWitness {
    std::variant<std::vector<ExactTerm>, std::vector<NumericTerm>> terms;
    double residual = 0.0;

    bool exact() const { return terms.index() == 0; }
    std::size_t size() const {
        return std::visit([](const auto& t) { return t.size(); }, terms);
    }
    const std::vector<ExactTerm>& exact_terms() const { return std::get<0>(terms); }
    const std::vector<NumericTerm>& numeric_terms() const { return std::get<1>(terms); }
};

inline Form expand(const std::vector<ExactTerm>& terms, const Form& like) {
    Form sum(like.partition_ptr(), like.degree());
    for (const auto& t : terms) {
        if (t.form.size() != like.num_vars())
            throw Error(ErrorKind::DegreeMismatch, "witness linear form has wrong length");
        if (t.form.is_zero())
            throw Error(ErrorKind::ZeroLinearForm, "witness contains the zero linear form");
        sum += t.coeff * power_of_linear(t.form, like.degree(), like.partition_ptr());
    }
    return sum;
}

/// Exact check of sum c_i l_i^d == F.
inline bool verify_decomposition(const Form& f, const DecompositionWitness& w) {
    if (!w.exact())
        throw Error(ErrorKind::NumericWitness, "numeric witnesses are checked by their residual");
    return expand(w.exact_terms(), f) == f;
}

/// Euclidean norm of the coefficient residual F - sum c_i l_i^d in the
/// monomial basis, evaluated in double precision.
inline double numeric_residual(const Form& f, const std::vector<NumericTerm>& terms) {
    const std::size_t n = f.num_vars();
    const int d = f.degree();
    double acc = 0.0;
    const double dfact = std::tgamma(d + 1.0);
    for (const auto& m : enumerate_monomials(n, d)) {
        double mult = dfact;
        for (int e : m.exponents)
            mult /= std::tgamma(e + 1.0);
        std::complex<double> model{0.0, 0.0};
        for (const auto& t : terms) {
            if (t.form.size() != n)
                throw Error(ErrorKind::DegreeMismatch, "witness linear form has wrong length");
            std::complex<double> v = t.coeff * mult;
            for (std::size_t j = 0; j < n; ++j)
                if (m.exponents[j])
                    v *= std::pow(t.form[j], m.exponents[j]);
            model += v;
        }
        acc += std::norm(model - f.coefficient(m).to_complex());
    }
    return std::sqrt(acc);
}

/// Result of sorting witness terms (or points) by their supporting tuple.
struct SplitReport {
    bool split = false;
    std::vector<std::vector<std::size_t>> groups; // term indices per tuple
    std::vector<std::size_t> mixed;               // offending term indices
    std::vector<std::size_t> zero;                // numerically zero forms
};

inline constexpr double kDefaultZeroThreshold = 1e-8;

/// Assigns every term to the tuple supporting its linear form. Numeric
/// coefficients below `zero_threshold` in magnitude count as zero.
inline SplitReport decomposition_splits(const DecompositionWitness& w, const VariablePartition& p,
                                        double zero_threshold = kDefaultZeroThreshold) {
    SplitReport rep;
    rep.groups.resize(p.num_tuples());
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::optional<std::size_t> owner;
        bool mixed = false, any = false;
        for (std::size_t v = 0; v < p.num_vars(); ++v) {
            bool nonzero = w.exact() ? !w.exact_terms()[i].form.coefficients.at(v).is_zero()
                                     : std::abs(w.numeric_terms()[i].form.at(v)) >= zero_threshold;
            if (!nonzero)
                continue;
            any = true;
            if (owner && *owner != p.tuple_of(v))
                mixed = true;
            owner = p.tuple_of(v);
        }
        if (!any)
            rep.zero.push_back(i);
        else if (mixed)
            rep.mixed.push_back(i);
        else
            rep.groups[*owner].push_back(i);
    }
    rep.split = rep.mixed.empty() && rep.zero.empty();
    return rep;
}

/// Sub-witness of the terms assigned to tuple t, restricted to its variables.
inline DecompositionWitness split_part(const DecompositionWitness& w, const SplitReport& rep,
                                       const VariablePartition& p, std::size_t t) {
    auto idx = p.tuple_indices(t);
    DecompositionWitness out;
    if (w.exact()) {
        std::vector<ExactTerm> terms;
        for (auto i : rep.groups.at(t)) {
            ExactTerm term{w.exact_terms()[i].coeff, {}};
            for (auto v : idx)
                term.form.coefficients.push_back(w.exact_terms()[i].form.coefficients[v]);
            terms.push_back(std::move(term));
        }
        out.terms = std::move(terms);
    } else {
        std::vector<NumericTerm> terms;
        for (auto i : rep.groups.at(t)) {
            NumericTerm term{w.numeric_terms()[i].coeff, {}};
            for (auto v : idx)
                term.form.push_back(w.numeric_terms()[i].form[v]);
            terms.push_back(std::move(term));
        }
        out.terms = std::move(terms);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Binary forms
// ---------------------------------------------------------------------------

namespace detail {

/// Dense univariate polynomial over Q(i), coefficients low to high.
using UniPoly = std::vector<Scalar>;

inline void trim(UniPoly& p) {
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
}

inline UniPoly derivative(const UniPoly& p) {
    UniPoly out;
    for (std::size_t k = 1; k < p.size(); ++k)
        out.push_back(p[k] * Scalar(static_cast<long>(k)));
    trim(out);
    return out;
}

inline UniPoly remainder(UniPoly a, const UniPoly& b) {
    trim(a);
    const Scalar lead = b.back();
    while (a.size() >= b.size()) {
        Scalar q = a.back() / lead;
        std::size_t shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k)
            a[shift + k] -= q * b[k];
        a.pop_back();
        trim(a);
    }
    return a;
}

inline UniPoly gcd(UniPoly a, UniPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UniPoly r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

} // namespace detail

/// A binary form sum_k c_k s^{e-k} t^k (graded-lex coefficient order) is
/// squarefree iff it has e distinct roots on P^1: at most a simple root at
/// infinity and a squarefree dehomogenization.
inline bool binary_squarefree(const std::vector<Scalar>& coeffs) {
    if (coeffs.empty())
        return false;
    const std::size_t e = coeffs.size() - 1;
    // g(s, 1) = sum_k c_k s^{e-k}
    detail::UniPoly g(e + 1);
    for (std::size_t k = 0; k <= e; ++k)
        g[e - k] = coeffs[k];
    detail::trim(g);
    if (g.empty())
        return false;
    std::size_t deg = g.size() - 1;
    if (e - deg > 1)
        return false;
    if (deg == 0)
        return true;
    auto h = detail::gcd(g, detail::derivative(g));
    return h.size() == 1;
}

struct SylvesterResult {
    std::size_t rank = 0;
    int apolar_degree = 0;             // least e with (F^perp)_e != 0
    std::vector<Scalar> generator;     // squarefree element found, if any
    bool certified = true;             // false after exhausting the search
};

inline constexpr int kSylvesterTrials = 50;

/// Exact Waring rank of a binary form.
inline SylvesterResult sylvester_rank(const Form& f, std::uint64_t seed = 0) {
    if (f.num_vars() != 2)
        throw Error(ErrorKind::NotBinary, "Sylvester's algorithm needs exactly two variables");
    detail::require_nonzero(f);
    const int d = f.degree();
    SylvesterResult res;
    ApolarPiece piece;
    for (int e = 1; e <= d + 1; ++e) {
        piece = apolar_piece(f, e);
        if (!piece.basis.empty()) {
            res.apolar_degree = e;
            break;
        }
    }
    const int e1 = res.apolar_degree;
    for (const auto& v : piece.basis) {
        if (binary_squarefree(v)) {
            res.generator = v;
            res.rank = static_cast<std::size_t>(e1);
            return res;
        }
    }
    if (piece.basis.size() >= 2) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long> dist(-10, 10);
        for (int trial = 0; trial < kSylvesterTrials; ++trial) {
            std::vector<Scalar> v(piece.duals.size());
            for (const auto& b : piece.basis) {
                Scalar c(mpq_class(dist(rng)), mpq_class(dist(rng)));
                for (std::size_t j = 0; j < v.size(); ++j)
                    v[j] += c * b[j];
            }
            if (binary_squarefree(v)) {
                res.generator = primitive_gaussian(v);
                res.rank = static_cast<std::size_t>(e1);
                return res;
            }
        }
        res.certified = false;
    }
    res.rank = static_cast<std::size_t>(d + 2 - e1);
    return res;
}

// ---------------------------------------------------------------------------
// Monomials
// ---------------------------------------------------------------------------

/// Positive exponents sorted ascending.
class MonomialProfile {
public:
    explicit MonomialProfile(std::vector<int> exponents) : exps_(std::move(exponents)) {
        std::erase(exps_, 0);
        if (exps_.empty())
            throw Error(ErrorKind::InvalidArgument, "monomial profile needs a positive exponent");
        if (std::any_of(exps_.begin(), exps_.end(), [](int e) { return e < 0; }))
            throw Error(ErrorKind::InvalidArgument, "negative exponent");
        std::sort(exps_.begin(), exps_.end());
    }

    /// Profile of a single-term form; nullopt for anything else.
    static std::optional<MonomialProfile> of(const Form& f) {
        if (f.terms().size() != 1 || f.degree() < 1)
            return std::nullopt;
        return MonomialProfile(f.terms().begin()->first.exponents);
    }

    const std::vector<int>& exponents() const { return exps_; }
    int degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

    /// a_1 + ... + a_{n-1} <= a_n.
    bool concentrated() const { return degree() - exps_.back() <= exps_.back(); }

private:
    std::vector<int> exps_;
};

struct RankValue {
    std::size_t lo = 0, hi = 0;
    std::string provenance;

    bool exact() const { return lo == hi; }
    friend bool operator==(const RankValue&, const RankValue&) = default;
};

struct RankRecord {
    RankValue waring, cactus, border;
};

/// Largest dim Derivs(M)_k over k, counted as the number of divisors of M of
/// each degree (coefficients of prod_i (1 + t + ... + t^{a_i})).
inline std::size_t monomial_max_derivs(const MonomialProfile& m) {
    std::vector<std::size_t> coeffs{1};
    for (int e : m.exponents()) {
        std::vector<std::size_t> next(coeffs.size() + static_cast<std::size_t>(e), 0);
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            for (int j = 0; j <= e; ++j)
                next[k + static_cast<std::size_t>(j)] += coeffs[k];
        coeffs = std::move(next);
    }
    return *std::max_element(coeffs.begin(), coeffs.end());
}

inline RankRecord monomial_ranks(const MonomialProfile& m) {
    const auto& a = m.exponents();
    std::size_t waring = 1, cactus = 1;
    for (std::size_t k = 1; k < a.size(); ++k)
        waring *= static_cast<std::size_t>(a[k] + 1);
    for (std::size_t k = 0; k + 1 < a.size(); ++k)
        cactus *= static_cast<std::size_t>(a[k] + 1);
    RankRecord rec;
    rec.waring = {waring, waring, "monomial formula prod_{i>=2}(a_i+1)"};
    rec.cactus = {cactus, cactus, "monomial formula prod_{i<=n-1}(a_i+1)"};
    if (m.concentrated())
        rec.border = {cactus, cactus, "concentrated monomial: brk = crk"};
    else
        rec.border = {monomial_max_derivs(m), cactus, "catalecticant lower bound, crk upper bound"};
    return rec;
}

// ---------------------------------------------------------------------------
// Generic forms
// ---------------------------------------------------------------------------

/// Rank of a general form of degree d in n variables.
inline std::size_t generic_rank(std::size_t n, int d) {
    if (n < 1 || d < 1)
        throw Error(ErrorKind::InvalidArgument, "generic_rank needs n, d >= 1");
    if (d == 2)
        return n;
    if (d == 4 && n == 3)
        return 6;
    if (d == 4 && n == 4)
        return 10;
    if (d == 4 && n == 5)
        return 15;
    if (d == 3 && n == 5)
        return 8;
    std::size_t count = monomial_count(n, d);
    return (count + n - 1) / n;
}

/// dim Derivs(F)_a for F a sum of r general d-th powers in n variables.
inline std::size_t expected_derivs_dim(std::size_t n, int d, int a, std::size_t r) {
    if (a < 0 || a > d || r < 1)
        throw Error(ErrorKind::InvalidArgument, "expected_derivs_dim needs 0 <= a <= d and r >= 1");
    return std::min({monomial_count(n, a), monomial_count(n, d - a), r});
}

} // namespace waring
