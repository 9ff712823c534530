#pragma once

// Machine-checkable JSON certificates. A certificate embeds the canonical
// form text, its FNV-1a hash, the claimed inputs (evidence, witnesses,
// minrank certificates) and the result. Verification re-runs the whole
// computation from the embedded inputs and compares the re-emitted document
// byte for byte.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "waring/additivity.hpp"
#include "waring/bounds.hpp"
#include "waring/poly.hpp"

namespace waring {

using json = nlohmann::json;

inline constexpr std::string_view kCertificateSchema = "waring-certificate/1";
inline constexpr std::string_view kToolVersion = "0.1.0";

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string form_hash(const Form& f) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(serialize_form(f))));
    return "fnv1a64:" + std::string(buf);
}

// ---------------------------------------------------------------------------
// Encoding of the building blocks
// ---------------------------------------------------------------------------

namespace codec {

[[noreturn]] inline void schema_error(const std::string& what) { throw Error(ErrorKind::SchemaError, what); }

inline const json& field(const json& j, std::string_view key) {
    if (!j.is_object())
        schema_error("expected an object holding '" + std::string(key) + "'");
    auto it = j.find(key);
    if (it == j.end())
        schema_error("missing field '" + std::string(key) + "'");
    return *it;
}

template <class T>
T get(const json& j, std::string_view key) {
    try {
        return field(j, key).get<T>();
    } catch (const json::exception& e) {
        schema_error("field '" + std::string(key) + "': " + e.what());
    }
}

inline json scalar(const Scalar& s) { return s.str(); }

inline Scalar scalar(const json& j) {
    if (!j.is_string())
        schema_error("rational entries must be strings");
    try {
        return Scalar::parse(j.get<std::string>());
    } catch (const Error& e) {
        schema_error(e.what());
    }
}

inline json sizes(const std::vector<std::size_t>& v) { return v; }

inline std::vector<std::size_t> sizes(const json& j) {
    try {
        return j.get<std::vector<std::size_t>>();
    } catch (const json::exception& e) {
        schema_error(e.what());
    }
}

inline json linear(const LinearForm& l) {
    json out = json::array();
    for (const auto& c : l.coefficients)
        out.push_back(scalar(c));
    return out;
}

inline LinearForm linear(const json& j) {
    if (!j.is_array())
        schema_error("linear forms are arrays");
    LinearForm l;
    for (const auto& c : j)
        l.coefficients.push_back(scalar(c));
    return l;
}

/// Terms of a form over a known partition: [[coef, "x*y^2"], ...].
inline json terms(const Form& f) {
    json out = json::array();
    for (const auto& [m, c] : f.terms())
        out.push_back(json::array({scalar(c), monomial_text(m, f.partition())}));
    return out;
}

inline Form terms(const json& j, const Form& like, int degree) {
    if (!j.is_array())
        schema_error("form terms are arrays");
    Form f(like.partition_ptr(), degree);
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[1].is_string())
            schema_error("form term must be [coefficient, monomial]");
        try {
            f.add_term(detail::parse_monomial(t[1].get<std::string>(), like.partition()), scalar(t[0]));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::SchemaError)
                throw;
            schema_error(e.what());
        }
    }
    return f;
}

inline json param_poly(const ParamPolynomial& p) {
    json t = json::array();
    for (const auto& [e, c] : p.terms())
        t.push_back(json::array({scalar(c), e}));
    return {{"params", p.nparams()}, {"terms", t}};
}

inline ParamPolynomial param_poly(const json& j) {
    ParamPolynomial p(get<std::size_t>(j, "params"));
    for (const auto& t : field(j, "terms")) {
        if (!t.is_array() || t.size() != 2)
            schema_error("parameter term must be [coefficient, exponents]");
        try {
            p.add_term(t[1].get<std::vector<int>>(), scalar(t[0]));
        } catch (const json::exception& e) {
            schema_error(e.what());
        } catch (const Error& e) {
            schema_error(e.what());
        }
    }
    return p;
}

inline json minor(const MinorIndex& m) { return {{"cols", m.cols}, {"rows", m.rows}}; }

inline MinorIndex minor(const json& j) { return {sizes(field(j, "rows")), sizes(field(j, "cols"))}; }

inline json space(const AffineFormSpace& w) {
    json basis = json::array();
    for (const auto& b : w.basis)
        basis.push_back(terms(b));
    return {{"a", w.a}, {"basis", basis}, {"offset", terms(w.offset)}};
}

inline AffineFormSpace space(const json& j, const Form& f) {
    AffineFormSpace w;
    w.a = get<int>(j, "a");
    if (w.a < 0)
        schema_error("negative degree");
    w.offset = terms(field(j, "offset"), f, w.a);
    for (const auto& b : field(j, "basis"))
        w.basis.push_back(terms(b, f, w.a));
    return w;
}

inline json minrank(const MinrankCertificate& c) {
    json out{{"m", c.m}};
    if (const auto* cm = std::get_if<ConstantMinor>(&c.kind)) {
        out["kind"] = "constant-minor";
        out["minor"] = minor(cm->minor);
    } else if (const auto* fu = std::get_if<MinorFamilyUnit>(&c.kind)) {
        out["kind"] = "minor-family-unit";
        json ms = json::array(), mults = json::array();
        for (const auto& m : fu->minors)
            ms.push_back(minor(m));
        for (const auto& p : fu->multipliers)
            mults.push_back(param_poly(p));
        out["minors"] = ms;
        out["multipliers"] = mults;
        out["degree_cutoff"] = fu->degree_cutoff;
    } else {
        out["kind"] = "assumed";
        out["justification"] = std::get<Assumed>(c.kind).justification;
    }
    return out;
}

inline MinrankCertificate minrank(const json& j) {
    MinrankCertificate c;
    c.m = get<std::size_t>(j, "m");
    auto kind = get<std::string>(j, "kind");
    if (kind == "constant-minor") {
        c.kind = ConstantMinor{minor(field(j, "minor"))};
    } else if (kind == "minor-family-unit") {
        MinorFamilyUnit fu;
        for (const auto& m : field(j, "minors"))
            fu.minors.push_back(minor(m));
        for (const auto& p : field(j, "multipliers"))
            fu.multipliers.push_back(param_poly(p));
        fu.degree_cutoff = get<int>(j, "degree_cutoff");
        c.kind = std::move(fu);
    } else if (kind == "assumed") {
        c.kind = Assumed{get<std::string>(j, "justification")};
    } else {
        schema_error("unknown minrank certificate kind '" + kind + "'");
    }
    return c;
}

inline json locus(const MultiplicityLocusWitness& w) {
    json comps = json::array();
    for (const auto& c : w.components)
        comps.push_back(param_poly(c));
    return {{"a", w.a}, {"components", comps}, {"params", w.params}};
}

inline MultiplicityLocusWitness locus(const json& j) {
    MultiplicityLocusWitness w;
    w.a = get<int>(j, "a");
    w.params = get<std::size_t>(j, "params");
    for (const auto& c : field(j, "components"))
        w.components.push_back(param_poly(c));
    return w;
}

inline json witness(const DecompositionWitness& w) {
    json out = json::array();
    if (w.exact()) {
        for (const auto& t : w.exact_terms())
            out.push_back({{"coeff", scalar(t.coeff)}, {"form", linear(t.form)}});
        return out;
    }
    for (const auto& t : w.numeric_terms()) {
        json form = json::array();
        for (const auto& z : t.form)
            form.push_back({z.real(), z.imag()});
        out.push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}}, {"form", form}});
    }
    return out;
}

/// Exact witnesses only; certificates never carry floating-point claims.
inline DecompositionWitness witness(const json& j) {
    if (!j.is_array())
        schema_error("witness must be an array of terms");
    std::vector<ExactTerm> ts;
    for (const auto& t : j)
        ts.push_back({scalar(field(t, "coeff")), linear(field(t, "form"))});
    return {ts, 0.0};
}

inline json lower(const LowerBoundProof& p) {
    if (std::holds_alternative<CatalecticantProof>(p))
        return {{"kind", "catalecticant"}};
    if (const auto* c = std::get_if<CgvProof>(&p))
        return {{"kind", "cgv"}, {"space", space(c->space)}, {"certificate", minrank(c->cert)}};
    const auto& s = std::get<SingularProof>(p);
    return {{"kind", "singular"}, {"a", s.a}, {"witness", locus(s.witness)}};
}

inline LowerBoundProof lower(const json& j, const Form& f) {
    auto kind = get<std::string>(j, "kind");
    if (kind == "catalecticant")
        return CatalecticantProof{};
    if (kind == "cgv")
        return CgvProof{space(field(j, "space"), f), minrank(field(j, "certificate"))};
    if (kind == "singular")
        return SingularProof{get<int>(j, "a"), locus(field(j, "witness"))};
    schema_error("unknown lower bound kind '" + kind + "'");
}

inline RankSource source(std::string_view s) {
    if (s == "sylvester")
        return RankSource::sylvester;
    if (s == "monomial")
        return RankSource::monomial;
    if (s == "witness+bound")
        return RankSource::witness_bound;
    if (s == "asserted")
        return RankSource::asserted;
    schema_error("unknown rank source '" + std::string(s) + "'");
}

inline json evidence(const SummandEvidence& ev) {
    json out{{"rank", ev.rank}, {"source", to_string(ev.source)}};
    if (ev.witness)
        out["witness"] = witness(*ev.witness);
    if (ev.lower)
        out["lower"] = lower(*ev.lower);
    if (ev.source == RankSource::asserted)
        out["justification"] = ev.justification;
    return out;
}

/// `summand` supplies the partition for forms inside the evidence.
inline SummandEvidence evidence(const json& j, const Form& summand) {
    SummandEvidence ev;
    ev.source = source(get<std::string>(j, "source"));
    ev.rank = get<std::size_t>(j, "rank");
    if (j.contains("witness"))
        ev.witness = witness(j["witness"]);
    if (j.contains("lower"))
        ev.lower = lower(j["lower"], summand);
    if (j.contains("justification"))
        ev.justification = get<std::string>(j, "justification");
    return ev;
}

inline Form form(const json& doc) {
    try {
        return parse_form(get<std::string>(doc, "form"));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SchemaError)
            throw;
        schema_error(std::string("embedded form: ") + e.what());
    }
}

} // namespace codec

// ---------------------------------------------------------------------------
// Requests: everything needed to recompute a certificate
// ---------------------------------------------------------------------------

struct BoundRequest {
    BoundKind method = BoundKind::catalecticant;
    std::optional<CgvProof> cgv;
    std::optional<SingularProof> singular;
};

inline std::vector<LowerBoundRecord> run_bound(const Form& f, const BoundRequest& req, std::uint64_t seed) {
    switch (req.method) {
    case BoundKind::catalecticant: return {catalecticant_bound(f), border_bound(f)};
    case BoundKind::border: return {border_bound(f)};
    case BoundKind::cgv:
        if (!req.cgv)
            throw Error(ErrorKind::InvalidArgument, "the cgv method needs an affine space and a minrank certificate");
        return {verify_cgv(f, req.cgv->space, req.cgv->cert)};
    case BoundKind::singular:
        if (!req.singular)
            throw Error(ErrorKind::InvalidArgument, "the singular method needs a witness map");
        return {verify_singular(f, req.singular->a, req.singular->witness, seed)};
    }
    return {};
}

struct AdditivityRequest {
    Route route = Route::catalecticant;
    int a = 2;
    std::vector<SummandEvidence> evidence;
    std::vector<CgvProof> cgv;                          // cgv route
    std::vector<MultiplicityLocusWitness> singular;     // singular route
};

inline AdditivityCertificate run_additivity(const Form& f, const AdditivityRequest& req, std::uint64_t seed) {
    switch (req.route) {
    case Route::catalecticant: return certify_waring_additivity(f, req.a, req.evidence, seed);
    case Route::cactus: return certify_cactus_additivity(f, req.a, req.evidence);
    case Route::border: return certify_border_additivity(f, req.a, req.evidence);
    case Route::cgv_a2: {
        if (req.cgv.size() != req.evidence.size())
            throw Error(ErrorKind::EvidenceRejected, "need one affine space per summand");
        std::vector<CgvSummand> per;
        for (std::size_t i = 0; i < req.cgv.size(); ++i)
            per.push_back({req.cgv[i], req.evidence[i]});
        return certify_cgv_additivity(f, per, seed);
    }
    case Route::singular: {
        if (req.singular.size() != req.evidence.size())
            throw Error(ErrorKind::EvidenceRejected, "need one witness map per summand");
        std::vector<SingularSummand> per;
        for (std::size_t i = 0; i < req.singular.size(); ++i)
            per.push_back({req.singular[i], req.evidence[i]});
        return certify_singular_additivity(f, req.a, per, seed);
    }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown route");
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

namespace detail {

inline json envelope(const Form& f, std::uint64_t seed, std::string_view kind) {
    return {{"schema", kCertificateSchema},
            {"tool_version", kToolVersion},
            {"seed", seed},
            {"form", serialize_form(f)},
            {"form_hash", form_hash(f)},
            {"kind", kind}};
}

} // namespace detail

inline json bound_certificate(const Form& f, const BoundRequest& req, std::uint64_t seed) {
    auto recs = run_bound(f, req, seed);
    json doc = detail::envelope(f, seed, "bound");
    json payload{{"method", to_string(req.method)}};
    if (req.cgv)
        payload["cgv"] = {{"certificate", codec::minrank(req.cgv->cert)}, {"space", codec::space(req.cgv->space)}};
    if (req.singular)
        payload["singular"] = {{"a", req.singular->a}, {"witness", codec::locus(req.singular->witness)}};
    json results = json::array();
    Rigor rigor = Rigor::certified;
    for (const auto& r : recs) {
        results.push_back({{"a", r.a},
                           {"rank", r.kind == BoundKind::border ? "brk" : "rk"},
                           {"rigor", to_string(r.rigor)},
                           {"value", r.value}});
        rigor = weakest(rigor, r.rigor);
    }
    doc["payload"] = payload;
    doc["result"] = results;
    doc["rigor"] = to_string(rigor);
    return doc;
}

inline json additivity_certificate(const Form& f, const AdditivityRequest& req, std::uint64_t seed) {
    auto cert = run_additivity(f, req, seed);
    json doc = detail::envelope(f, seed, "additivity");
    json summands = json::array();
    for (std::size_t i = 0; i < req.evidence.size(); ++i) {
        json s{{"evidence", codec::evidence(req.evidence[i])}};
        if (i < req.cgv.size())
            s["cgv"] = {{"certificate", codec::minrank(req.cgv[i].cert)}, {"space", codec::space(req.cgv[i].space)}};
        if (i < req.singular.size())
            s["singular"] = codec::locus(req.singular[i]);
        summands.push_back(s);
    }
    json checks = json::array();
    for (const auto& c : cert.summands)
        checks.push_back({{"bound", c.bound},
                          {"derivs_dim", c.derivs_dim},
                          {"provenance", c.provenance},
                          {"rank", c.rank},
                          {"rigor", to_string(c.rigor)}});
    doc["payload"] = {{"a", req.a}, {"route", to_string(req.route)}, {"summands", summands}};
    doc["result"] = {{"derivs_dim", cert.derivs_dim},
                     {"notes", cert.notes},
                     {"rank", rank_symbol(cert.route)},
                     {"splitting", to_string(cert.splitting)},
                     {"summands", checks},
                     {"value", cert.value}};
    doc["rigor"] = to_string(cert.rigor);
    return doc;
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string dump_certificate(const json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

enum class VerifyStatus { valid, assumed, rejected };

struct VerifyOutcome {
    VerifyStatus status = VerifyStatus::rejected;
    std::string message;
};

namespace detail {

inline BoundRequest bound_request(const json& payload, const Form& f) {
    BoundRequest req;
    auto method = codec::get<std::string>(payload, "method");
    if (method == "catalecticant")
        req.method = BoundKind::catalecticant;
    else if (method == "cgv")
        req.method = BoundKind::cgv;
    else if (method == "singular")
        req.method = BoundKind::singular;
    else if (method == "border")
        req.method = BoundKind::border;
    else
        codec::schema_error("unknown bound method '" + method + "'");
    if (payload.contains("cgv")) {
        const auto& c = payload["cgv"];
        req.cgv = CgvProof{codec::space(codec::field(c, "space"), f), codec::minrank(codec::field(c, "certificate"))};
    }
    if (payload.contains("singular")) {
        const auto& s = payload["singular"];
        req.singular = SingularProof{codec::get<int>(s, "a"), codec::locus(codec::field(s, "witness"))};
    }
    return req;
}

inline AdditivityRequest additivity_request(const json& payload, const Form& f) {
    AdditivityRequest req;
    try {
        req.route = route_from_string(codec::get<std::string>(payload, "route"));
    } catch (const Error& e) {
        codec::schema_error(e.what());
    }
    req.a = codec::get<int>(payload, "a");
    const auto& summands = codec::field(payload, "summands");
    if (!summands.is_array())
        codec::schema_error("summands must be an array");
    std::vector<Form> parts;
    try {
        parts = split_summands(f);
    } catch (const Error& e) {
        codec::schema_error(e.what());
    }
    if (parts.size() != summands.size())
        codec::schema_error("summand count does not match the partition");
    for (std::size_t i = 0; i < summands.size(); ++i) {
        const auto& s = summands[i];
        req.evidence.push_back(codec::evidence(codec::field(s, "evidence"), parts[i]));
        if (s.contains("cgv"))
            req.cgv.push_back(
                {codec::space(codec::field(s["cgv"], "space"), parts[i]), codec::minrank(codec::field(s["cgv"], "certificate"))});
        if (s.contains("singular"))
            req.singular.push_back(codec::locus(s["singular"]));
    }
    return req;
}

} // namespace detail

/// Re-runs every check recorded in `doc`. Throws SchemaError for documents
/// that are not certificates at all; every other failure is a rejection.
inline VerifyOutcome verify_certificate(const json& doc) {
    if (!doc.is_object())
        codec::schema_error("certificate must be a JSON object");
    if (codec::get<std::string>(doc, "schema") != kCertificateSchema)
        codec::schema_error("unsupported schema '" + codec::get<std::string>(doc, "schema") + "'");
    const auto kind = codec::get<std::string>(doc, "kind");
    const auto seed = codec::get<std::uint64_t>(doc, "seed");
    const auto& payload = codec::field(doc, "payload");
    codec::field(doc, "result");
    codec::field(doc, "rigor");
    if (kind != "bound" && kind != "additivity")
        codec::schema_error("unknown certificate kind '" + kind + "'");

    Form f = codec::form(doc);
    if (codec::get<std::string>(doc, "form_hash") != form_hash(f))
        return {VerifyStatus::rejected, "form hash does not match the embedded form"};

    json redo;
    try {
        if (kind == "bound")
            redo = bound_certificate(f, detail::bound_request(payload, f), seed);
        else
            redo = additivity_certificate(f, detail::additivity_request(payload, f), seed);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SchemaError)
            throw;
        return {VerifyStatus::rejected, e.what()};
    }
    if (dump_certificate(redo) != dump_certificate(doc))
        return {VerifyStatus::rejected, "recomputed certificate differs from the recorded one"};
    if (redo["rigor"] != "certified")
        return {VerifyStatus::assumed, "valid; rigor " + redo["rigor"].get<std::string>()};
    return {VerifyStatus::valid, "valid"};
}

} // namespace waring
