#pragma once

// Rank additivity for sums of forms in independent tuples of variables.
//
// Each route pairs a subadditive rank with a lower bound that is additive on
// independent sums. When every summand attains the bound, the rank of the
// sum is the sum of the ranks; for a >= 2 the Waring and cactus routes also
// force decompositions (resp. minimal apolar schemes) to split by tuple.

#include <cstddef>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "waring/bounds.hpp"
#include "waring/catalecticant.hpp"
#include "waring/error.hpp"
#include "waring/linalg.hpp"
#include "waring/oracles.hpp"
#include "waring/poly.hpp"

namespace waring {

// ---------------------------------------------------------------------------
// Evidence
// ---------------------------------------------------------------------------

enum class RankSource { sylvester, monomial, witness_bound, asserted };

inline std::string_view to_string(RankSource s) {
    switch (s) {
    case RankSource::sylvester: return "sylvester";
    case RankSource::monomial: return "monomial";
    case RankSource::witness_bound: return "witness+bound";
    case RankSource::asserted: return "asserted";
    }
    return "asserted";
}

struct CatalecticantProof {};
struct CgvProof {
    AffineFormSpace space;
    MinrankCertificate cert;
};
struct SingularProof {
    int a = 1;
    MultiplicityLocusWitness witness;
};
using LowerBoundProof = std::variant<CatalecticantProof, CgvProof, SingularProof>;

/// How the rank (Waring, cactus or border, depending on the route) of one
/// summand is established.
struct SummandEvidence {
    RankSource source = RankSource::asserted;
    std::size_t rank = 0;
    std::optional<DecompositionWitness> witness; // witness+bound: exact, |W| = rank
    std::optional<LowerBoundProof> lower;        // witness+bound: certified bound = rank
    std::string justification;                   // asserted

    static SummandEvidence sylvester(std::size_t r) { return {RankSource::sylvester, r, {}, {}, {}}; }
    static SummandEvidence monomial(std::size_t r) { return {RankSource::monomial, r, {}, {}, {}}; }
    static SummandEvidence asserted(std::size_t r, std::string why) {
        return {RankSource::asserted, r, {}, {}, std::move(why)};
    }
    static SummandEvidence witness_bound(std::size_t r, DecompositionWitness w, LowerBoundProof lb) {
        return {RankSource::witness_bound, r, std::move(w), std::move(lb), {}};
    }
};

/// Per-summand outcome recorded in a certificate.
struct SummandCheck {
    std::size_t rank = 0;
    std::size_t derivs_dim = 0; // at the route's a (d-a for the singular route)
    std::size_t bound = 0;      // certified lower bound (cgv / singular routes)
    Rigor rigor = Rigor::certified;
    std::string provenance;
};

enum class Route { catalecticant, cgv_a2, singular, cactus, border };

inline std::string_view to_string(Route r) {
    switch (r) {
    case Route::catalecticant: return "catalecticant";
    case Route::cgv_a2: return "cgv";
    case Route::singular: return "singular";
    case Route::cactus: return "cactus";
    case Route::border: return "border";
    }
    return "catalecticant";
}

inline Route route_from_string(std::string_view s) {
    if (s == "catalecticant")
        return Route::catalecticant;
    if (s == "cgv")
        return Route::cgv_a2;
    if (s == "singular")
        return Route::singular;
    if (s == "cactus")
        return Route::cactus;
    if (s == "border")
        return Route::border;
    throw Error(ErrorKind::SchemaError, "unknown route '" + std::string(s) + "'");
}

enum class SplittingClaim { none, decompositions_split, apolar_schemes_split };

inline std::string_view to_string(SplittingClaim c) {
    switch (c) {
    case SplittingClaim::none: return "none";
    case SplittingClaim::decompositions_split: return "decompositions-split";
    case SplittingClaim::apolar_schemes_split: return "apolar-schemes-split";
    }
    return "none";
}

/// Which rank the concluded value refers to.
inline std::string_view rank_symbol(Route r) {
    switch (r) {
    case Route::cactus: return "crk";
    case Route::border: return "brk";
    default: return "rk";
    }
}

struct AdditivityCertificate {
    Route route = Route::catalecticant;
    int a = 0;
    Form form;
    std::vector<SummandCheck> summands;
    std::size_t value = 0;
    std::size_t derivs_dim = 0; // dim Derivs(F)_a recomputed on the sum
    SplittingClaim splitting = SplittingClaim::none;
    Rigor rigor = Rigor::certified;
    std::vector<std::string> notes;
};

// ---------------------------------------------------------------------------
// Assembling sums
// ---------------------------------------------------------------------------

/// F_1 + ... + F_k on the partition whose i-th tuple is the variable list of
/// the i-th summand.
inline Form assemble_sum(const std::vector<Form>& summands) {
    if (summands.empty())
        throw Error(ErrorKind::InvalidArgument, "need at least one summand");
    const int d = summands.front().degree();
    std::vector<std::vector<std::string>> tuples;
    for (std::size_t i = 0; i < summands.size(); ++i) {
        if (summands[i].degree() != d)
            throw Error(ErrorKind::DegreeMismatch, "summand " + std::to_string(i + 1) + " has degree " +
                                                       std::to_string(summands[i].degree()) + ", expected " +
                                                       std::to_string(d));
        if (summands[i].is_zero())
            throw Error(ErrorKind::ZeroSummand, "summand " + std::to_string(i + 1) + " is zero", i);
        tuples.push_back(summands[i].partition().names());
    }
    VariablePartition partition;
    try {
        partition = VariablePartition(tuples);
    } catch (const Error& e) {
        throw Error(ErrorKind::VariableCollision, e.what());
    }
    Form sum(std::move(partition), d);
    std::size_t offset = 0;
    for (const auto& s : summands) {
        for (const auto& [m, c] : s.terms()) {
            Monomial g{std::vector<int>(sum.num_vars(), 0)};
            std::copy(m.exponents.begin(), m.exponents.end(), g.exponents.begin() + static_cast<std::ptrdiff_t>(offset));
            sum.add_term(g, c);
        }
        offset += s.num_vars();
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Establishing summand ranks
// ---------------------------------------------------------------------------

namespace detail {

inline std::size_t lower_bound_value(const Form& f, const LowerBoundProof& proof, std::uint64_t seed, Rigor& rigor) {
    if (std::holds_alternative<CatalecticantProof>(proof))
        return catalecticant_bound(f).value;
    if (const auto* cgv = std::get_if<CgvProof>(&proof)) {
        auto rec = verify_cgv(f, cgv->space, cgv->cert);
        rigor = weakest(rigor, rec.rigor);
        return rec.value;
    }
    const auto& sing = std::get<SingularProof>(proof);
    return verify_singular(f, sing.a, sing.witness, seed).value;
}

inline std::string_view proof_name(const LowerBoundProof& proof) {
    switch (proof.index()) {
    case 0: return "catalecticant";
    case 1: return "cgv";
    default: return "singular";
    }
}

} // namespace detail

/// Exactly established Waring rank of one summand: Sylvester (binary),
/// the monomial formula, an exact witness matched by a certified lower
/// bound, or an assertion (which taints rigor).
inline SummandCheck establish_waring_rank(const Form& f, const SummandEvidence& ev, std::uint64_t seed = 0) {
    auto reject = [&](const std::string& why) { throw Error(ErrorKind::EvidenceRejected, why); };
    SummandCheck out;
    out.rank = ev.rank;
    switch (ev.source) {
    case RankSource::sylvester: {
        if (f.num_vars() != 2)
            reject("Sylvester evidence needs a binary form");
        auto syl = sylvester_rank(f, seed);
        if (syl.rank != ev.rank)
            reject("Sylvester gives rank " + std::to_string(syl.rank) + ", evidence claims " + std::to_string(ev.rank));
        out.rigor = syl.certified ? Rigor::certified : Rigor::heuristic;
        out.provenance = "sylvester";
        break;
    }
    case RankSource::monomial: {
        auto prof = MonomialProfile::of(f);
        if (!prof)
            reject("monomial evidence needs a single-term form");
        auto rec = monomial_ranks(*prof);
        if (rec.waring.lo != ev.rank)
            reject("monomial formula gives rank " + std::to_string(rec.waring.lo) + ", evidence claims " +
                   std::to_string(ev.rank));
        out.provenance = "monomial";
        break;
    }
    case RankSource::witness_bound: {
        if (!ev.witness || !ev.lower)
            reject("witness+bound evidence needs a witness and a lower bound");
        if (!ev.witness->exact())
            reject("witness+bound evidence needs an exact witness");
        if (ev.witness->size() != ev.rank)
            reject("witness has " + std::to_string(ev.witness->size()) + " terms, evidence claims " +
                   std::to_string(ev.rank));
        if (!verify_decomposition(f, *ev.witness))
            reject("witness does not expand to the summand");
        Rigor lb_rigor = Rigor::certified;
        std::size_t lb = detail::lower_bound_value(f, *ev.lower, seed, lb_rigor);
        if (lb_rigor != Rigor::certified)
            reject("witness+bound evidence needs a certified lower bound");
        if (lb != ev.rank)
            reject("lower bound " + std::to_string(lb) + " does not meet the witness size " + std::to_string(ev.rank));
        out.provenance = "witness+" + std::string(detail::proof_name(*ev.lower));
        break;
    }
    case RankSource::asserted:
        if (ev.rank == 0)
            reject("asserted rank must be positive");
        out.rigor = Rigor::assumed;
        out.provenance = "asserted: " + ev.justification;
        break;
    }
    return out;
}

/// Cactus rank from the monomial formula or an assertion.
inline SummandCheck establish_cactus_rank(const Form& f, const SummandEvidence& ev) {
    SummandCheck out;
    out.rank = ev.rank;
    if (ev.source == RankSource::monomial) {
        auto prof = MonomialProfile::of(f);
        if (!prof)
            throw Error(ErrorKind::EvidenceRejected, "monomial evidence needs a single-term form");
        auto crk = monomial_ranks(*prof).cactus.lo;
        if (crk != ev.rank)
            throw Error(ErrorKind::EvidenceRejected, "monomial formula gives crk " + std::to_string(crk) +
                                                         ", evidence claims " + std::to_string(ev.rank));
        out.provenance = "monomial";
    } else if (ev.source == RankSource::asserted) {
        out.rigor = Rigor::assumed;
        out.provenance = "asserted: " + ev.justification;
    } else {
        throw Error(ErrorKind::EvidenceRejected, "cactus ranks come from the monomial formula or an assertion");
    }
    return out;
}

/// Border rank from the concentrated-monomial oracle or an assertion. A
/// monomial whose border rank is only known as an interval cannot meet the
/// hypothesis and reports HypothesisFails.
inline SummandCheck establish_border_rank(const Form& f, const SummandEvidence& ev, std::size_t index) {
    SummandCheck out;
    out.rank = ev.rank;
    if (ev.source == RankSource::monomial) {
        auto prof = MonomialProfile::of(f);
        if (!prof)
            throw Error(ErrorKind::EvidenceRejected, "monomial evidence needs a single-term form");
        auto brk = monomial_ranks(*prof).border;
        if (!brk.exact())
            throw Error(ErrorKind::HypothesisFails,
                        "summand " + std::to_string(index + 1) + ": border rank only known in [" +
                            std::to_string(brk.lo) + ", " + std::to_string(brk.hi) + "]",
                        index);
        if (brk.lo != ev.rank)
            throw Error(ErrorKind::EvidenceRejected, "monomial oracle gives brk " + std::to_string(brk.lo) +
                                                         ", evidence claims " + std::to_string(ev.rank));
        out.provenance = "concentrated monomial";
    } else if (ev.source == RankSource::asserted) {
        out.rigor = Rigor::assumed;
        out.provenance = "asserted: " + ev.justification;
    } else {
        throw Error(ErrorKind::EvidenceRejected, "border ranks come from the monomial oracle or an assertion");
    }
    return out;
}

/// Evidence derived from the closed-form oracles alone: monomial formula for
/// single-term summands, Sylvester for binary ones. nullopt when neither
/// applies. `route` selects which rank the evidence speaks about.
inline std::optional<SummandEvidence> oracle_evidence(const Form& f, Route route, std::uint64_t seed = 0) {
    if (auto prof = MonomialProfile::of(f)) {
        auto rec = monomial_ranks(*prof);
        switch (route) {
        case Route::cactus: return SummandEvidence::monomial(rec.cactus.lo);
        case Route::border: return SummandEvidence::monomial(rec.border.lo);
        default: return SummandEvidence::monomial(rec.waring.lo);
        }
    }
    if (route != Route::cactus && route != Route::border && f.num_vars() == 2)
        return SummandEvidence::sylvester(sylvester_rank(f, seed).rank);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Routes
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<Form> checked_summands(const Form& f, std::size_t evidence_count) {
    detail::require_nonzero(f);
    auto parts = split_summands(f);
    if (parts.size() < 2)
        throw Error(ErrorKind::InvalidArgument, "additivity needs at least two tuples");
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (parts[i].is_zero())
            throw Error(ErrorKind::ZeroSummand, "summand " + std::to_string(i + 1) + " is zero", i);
    if (evidence_count != parts.size())
        throw Error(ErrorKind::EvidenceRejected, "expected evidence for " + std::to_string(parts.size()) +
                                                     " summands, got " + std::to_string(evidence_count));
    return parts;
}

inline void require_inner_order(const Form& f, int a) {
    if (a < 1 || a > f.degree() - 1)
        throw Error(ErrorKind::DegreeMismatch, "a must lie in [1, d-1]");
}

[[noreturn]] inline void hypothesis_fails(std::size_t i, std::string_view what, std::size_t rank, std::size_t bound) {
    throw Error(ErrorKind::HypothesisFails,
                "summand " + std::to_string(i + 1) + ": " + std::string(what) + " = " + std::to_string(rank) +
                    " but the bound is " + std::to_string(bound) + " (gap " +
                    std::to_string(rank > bound ? rank - bound : bound - rank) + ")",
                i);
}

/// Runs per-summand checks concurrently; results (and the first error) are
/// taken in summand order.
template <class Fn>
std::vector<SummandCheck> run_per_summand(std::size_t k, Fn fn) {
    std::vector<std::future<SummandCheck>> jobs;
    jobs.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        jobs.push_back(std::async(std::launch::async, fn, i));
    std::vector<SummandCheck> out;
    std::exception_ptr first;
    for (auto& j : jobs) {
        try {
            out.push_back(j.get());
        } catch (...) {
            if (!first)
                first = std::current_exception();
        }
    }
    if (first)
        std::rethrow_exception(first);
    return out;
}

inline void finish(AdditivityCertificate& cert) {
    cert.value = 0;
    for (const auto& s : cert.summands) {
        cert.value += s.rank;
        cert.rigor = weakest(cert.rigor, s.rigor);
    }
}

} // namespace detail

/// rk(F_i) = dim Derivs(F_i)_a for all i implies rk(F) = sum rk(F_i), and
/// for a >= 2 every Waring decomposition of F splits by tuple.
inline AdditivityCertificate certify_waring_additivity(const Form& f, int a, const std::vector<SummandEvidence>& ev,
                                                       std::uint64_t seed = 0) {
    detail::require_inner_order(f, a);
    auto parts = detail::checked_summands(f, ev.size());
    AdditivityCertificate cert{Route::catalecticant, a, f, {}, 0, 0, SplittingClaim::none, Rigor::certified, {}};
    cert.summands = detail::run_per_summand(parts.size(), [&](std::size_t i) {
        auto check = establish_waring_rank(parts[i], ev[i], seed);
        check.derivs_dim = derivs_dim(parts[i], a);
        if (check.rank != check.derivs_dim)
            detail::hypothesis_fails(i, "rk(F_i)", check.rank, check.derivs_dim);
        return check;
    });
    cert.derivs_dim = direct_sum_dims(f, a).total;
    detail::finish(cert);
    if (cert.derivs_dim != cert.value)
        throw Error(ErrorKind::InternalConsistency, "dim Derivs(F)_a differs from the sum of summand ranks");
    if (a >= 2)
        cert.splitting = SplittingClaim::decompositions_split;
    return cert;
}

struct CgvSummand {
    CgvProof proof;
    SummandEvidence evidence;
};

/// Each F_i attains the affine-subspace bound with quadric members (a = 2);
/// then rk(F) = sum (p_i + m_i).
inline AdditivityCertificate certify_cgv_additivity(const Form& f, const std::vector<CgvSummand>& per,
                                                    std::uint64_t seed = 0) {
    auto parts = detail::checked_summands(f, per.size());
    if (f.degree() < 3)
        throw Error(ErrorKind::DegreeMismatch, "the quadric route needs d >= 3");
    for (std::size_t i = 0; i < per.size(); ++i)
        if (per[i].proof.space.a != 2)
            throw Error(ErrorKind::UnsupportedDegree,
                        "summand " + std::to_string(i + 1) + " uses a = " + std::to_string(per[i].proof.space.a) +
                            "; the additive affine-subspace route needs a = 2",
                        i);
    AdditivityCertificate cert{Route::cgv_a2, 2, f, {}, 0, 0, SplittingClaim::none, Rigor::certified, {}};
    cert.summands = detail::run_per_summand(parts.size(), [&](std::size_t i) {
        auto rec = verify_cgv(parts[i], per[i].proof.space, per[i].proof.cert);
        auto check = establish_waring_rank(parts[i], per[i].evidence, seed);
        check.bound = rec.value;
        check.derivs_dim = derivs_dim(parts[i], 2);
        check.rigor = weakest(check.rigor, rec.rigor);
        if (check.rank != rec.value)
            detail::hypothesis_fails(i, "rk(F_i)", check.rank, rec.value);
        return check;
    });
    cert.derivs_dim = direct_sum_dims(f, 2).total;
    detail::finish(cert);
    return cert;
}

/// Witness map of the product of the summand loci, Sigma_a(F) = prod Sigma_a(F_i).
inline MultiplicityLocusWitness product_witness(const std::vector<MultiplicityLocusWitness>& ws) {
    std::size_t total = 0;
    for (const auto& w : ws)
        total += w.params;
    MultiplicityLocusWitness out{ws.empty() ? 1 : ws.front().a, total, {}};
    std::size_t shift = 0;
    for (const auto& w : ws) {
        for (const auto& c : w.components) {
            ParamPolynomial lifted(total);
            for (const auto& [e, coef] : c.terms()) {
                std::vector<int> g(total, 0);
                std::copy(e.begin(), e.end(), g.begin() + static_cast<std::ptrdiff_t>(shift));
                lifted.add_term(g, coef);
            }
            out.components.push_back(std::move(lifted));
        }
        shift += w.params;
    }
    return out;
}

struct SingularSummand {
    MultiplicityLocusWitness witness;
    SummandEvidence evidence;
};

/// Each concise F_i attains dim Derivs(F_i)_{d-a} + dim Sigma_a(F_i); then F
/// is concise and rk(F) = sum rk(F_i).
inline AdditivityCertificate certify_singular_additivity(const Form& f, int a, const std::vector<SingularSummand>& per,
                                                         std::uint64_t seed = 0) {
    detail::require_inner_order(f, a);
    auto parts = detail::checked_summands(f, per.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (!is_concise(parts[i]))
            throw Error(ErrorKind::NotConcise, "summand " + std::to_string(i + 1) + " is not concise", i);
    AdditivityCertificate cert{Route::singular, a, f, {}, 0, 0, SplittingClaim::none, Rigor::certified, {}};
    cert.summands = detail::run_per_summand(parts.size(), [&](std::size_t i) {
        auto rec = verify_singular(parts[i], a, per[i].witness, seed);
        auto check = establish_waring_rank(parts[i], per[i].evidence, seed);
        check.bound = rec.value;
        check.derivs_dim = derivs_dim(parts[i], f.degree() - a);
        if (check.rank != rec.value)
            detail::hypothesis_fails(i, "rk(F_i)", check.rank, rec.value);
        return check;
    });
    if (!is_concise(f))
        throw Error(ErrorKind::InternalConsistency, "sum of concise summands is not concise");
    std::vector<MultiplicityLocusWitness> ws;
    for (const auto& s : per)
        ws.push_back(s.witness);
    auto whole = verify_singular(f, a, product_witness(ws), seed);
    cert.derivs_dim = direct_sum_dims(f, f.degree() - a).total;
    detail::finish(cert);
    if (whole.value != cert.value)
        throw Error(ErrorKind::InternalConsistency, "product witness bound " + std::to_string(whole.value) +
                                                        " differs from the summand total " + std::to_string(cert.value));
    return cert;
}

/// crk(F_i) = dim Derivs(F_i)_a for all i implies crk(F) = sum crk(F_i),
/// and for a >= 2 every minimal zero-dimensional apolar scheme splits.
inline AdditivityCertificate certify_cactus_additivity(const Form& f, int a, const std::vector<SummandEvidence>& ev) {
    detail::require_inner_order(f, a);
    auto parts = detail::checked_summands(f, ev.size());
    AdditivityCertificate cert{Route::cactus, a, f, {}, 0, 0, SplittingClaim::none, Rigor::certified, {}};
    cert.summands = detail::run_per_summand(parts.size(), [&](std::size_t i) {
        auto check = establish_cactus_rank(parts[i], ev[i]);
        check.derivs_dim = derivs_dim(parts[i], a);
        if (check.rank != check.derivs_dim)
            detail::hypothesis_fails(i, "crk(F_i)", check.rank, check.derivs_dim);
        return check;
    });
    cert.derivs_dim = direct_sum_dims(f, a).total;
    detail::finish(cert);
    if (a >= 2) {
        cert.splitting = SplittingClaim::apolar_schemes_split;
        cert.notes.push_back("computational scheme checks cover reduced point sets only");
    }
    return cert;
}

/// brk(F_i) = dim Derivs(F_i)_a for all i implies brk(F) = sum brk(F_i).
inline AdditivityCertificate certify_border_additivity(const Form& f, int a, const std::vector<SummandEvidence>& ev) {
    if (a < 0 || a > f.degree())
        throw Error(ErrorKind::DegreeMismatch, "a must lie in [0, d]");
    auto parts = detail::checked_summands(f, ev.size());
    AdditivityCertificate cert{Route::border, a, f, {}, 0, 0, SplittingClaim::none, Rigor::certified, {}};
    cert.summands = detail::run_per_summand(parts.size(), [&](std::size_t i) {
        auto check = establish_border_rank(parts[i], ev[i], i);
        check.derivs_dim = derivs_dim(parts[i], a);
        if (check.rank != check.derivs_dim)
            detail::hypothesis_fails(i, "brk(F_i)", check.rank, check.derivs_dim);
        return check;
    });
    cert.derivs_dim = derivs_dim(f, a);
    detail::finish(cert);
    if (cert.derivs_dim != cert.value)
        throw Error(ErrorKind::InternalConsistency, "dim Derivs(F)_a differs from the sum of summand ranks");
    return cert;
}

// ---------------------------------------------------------------------------
// Apolar point sets
// ---------------------------------------------------------------------------

using ApolarPointSet = std::vector<LinearForm>;

struct ApolarCheck {
    bool apolar = false;
    std::vector<Scalar> coefficients; // F = sum c_i l_i^d when apolar
};

/// Z = {[l_1], ..., [l_r]} is apolar to F iff F = sum c_i l_i^d.
inline ApolarCheck check_apolar_points(const Form& f, const ApolarPointSet& z) {
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i].size() != f.num_vars())
            throw Error(ErrorKind::DegreeMismatch, "point has wrong length");
        if (z[i].is_zero())
            throw Error(ErrorKind::ZeroLinearForm, "point " + std::to_string(i + 1) + " is zero");
        for (std::size_t j = 0; j < i; ++j)
            if (rank(ExactMatrix::from_rows({z[i].coefficients, z[j].coefficients})) < 2)
                throw Error(ErrorKind::InvalidArgument,
                            "points " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " are proportional");
    }
    const auto monos = enumerate_monomials(f.num_vars(), f.degree());
    ExactMatrix m(monos.size(), z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        Form p = power_of_linear(z[i], f.degree(), f.partition_ptr());
        for (std::size_t k = 0; k < monos.size(); ++k)
            m(k, i) = p.coefficient(monos[k]);
    }
    auto rhs = f.dense_coefficients();
    auto sol = solve(m, rhs);
    if (!sol)
        return {};
    return {true, *sol};
}

/// Sorts points by supporting tuple; split is false when some point mixes
/// tuples.
inline SplitReport check_scheme_splitting(const ApolarPointSet& z, const VariablePartition& p) {
    SplitReport rep;
    rep.groups.resize(p.num_tuples());
    for (std::size_t i = 0; i < z.size(); ++i) {
        auto t = support_tuple(z[i], p);
        if (t)
            rep.groups[*t].push_back(i);
        else
            rep.mixed.push_back(i);
    }
    rep.split = rep.mixed.empty();
    return rep;
}

} // namespace waring
