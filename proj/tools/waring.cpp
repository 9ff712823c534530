#include <algorithm>
#include <cstdint>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "waring/waring.hpp"

using namespace waring;

namespace {

enum Exit : int {
    kOk = 0,
    kNotFound = 1,
    kInputError = 2,
    kRejected = 3,
    kNotConcise = 4,
    kNoRoute = 5,
    kAssumed = 6,
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Form load_form(const std::string& path) { return parse_form(read_file(path)); }

json load_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::SchemaError, path + ": " + e.what());
    }
}

CgvProof load_cgv(const std::string& path, const Form& f) {
    auto j = load_json(path);
    return {codec::space(codec::field(j, "space"), f), codec::minrank(codec::field(j, "certificate"))};
}

void write_certificate(const std::string& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    out << dump_certificate(doc);
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::NotConcise: return kNotConcise;
    case ErrorKind::CertificateRejected:
    case ErrorKind::NotInDerivs:
    case ErrorKind::LinearSubspace:
    case ErrorKind::NotInLocus:
    case ErrorKind::DimensionNotCertified:
    case ErrorKind::UnsupportedDegree:
    case ErrorKind::EvidenceRejected: return kRejected;
    case ErrorKind::HypothesisFails: return kNoRoute;
    default: return kInputError;
    }
}

struct Options {
    std::uint64_t seed = 0;
    double tol = 1e-10;
    int restarts = 32;
};

// ---------------------------------------------------------------------------

int cmd_dims(const std::string& file, const std::string& which) {
    Form f = load_form(file);
    std::vector<std::size_t> dims;
    if (which == "all") {
        dims = derivs_profile(f);
    } else {
        dims.push_back(derivs_dim(f, detail::parse_int(which, "order")));
    }
    for (std::size_t i = 0; i < dims.size(); ++i)
        std::cout << (i ? " " : "") << dims[i];
    std::cout << "\n";
    return kOk;
}

int cmd_bound(const std::string& file, const std::string& method, const std::string& cgv_path,
              const std::string& singular_path, const std::string& emit, const Options& opt) {
    Form f = load_form(file);
    BoundRequest req;
    if (method == "catalecticant") {
        req.method = BoundKind::catalecticant;
    } else if (method == "border") {
        req.method = BoundKind::border;
    } else if (method == "cgv") {
        if (cgv_path.empty())
            throw Error(ErrorKind::InvalidArgument, "--method cgv needs --cgv <file>");
        req.method = BoundKind::cgv;
        req.cgv = load_cgv(cgv_path, f);
    } else if (method == "singular") {
        if (singular_path.empty())
            throw Error(ErrorKind::InvalidArgument, "--method singular needs --singular <file>");
        req.method = BoundKind::singular;
        auto w = codec::locus(load_json(singular_path));
        req.singular = SingularProof{w.a, w};
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown method '" + method + "'");
    }
    auto recs = run_bound(f, req, opt.seed);
    Rigor rigor = Rigor::certified;
    std::string line;
    for (const auto& r : recs) {
        line += (line.empty() ? "" : "; ") + std::string(r.kind == BoundKind::border ? "brk" : "rk") +
                " ≥ " + std::to_string(r.value);
        rigor = weakest(rigor, r.rigor);
    }
    std::cout << line << " (" << to_string(rigor) << ")\n";
    std::cout << "method " << method << ", a = " << recs.front().a << "\n";
    if (!emit.empty())
        write_certificate(emit, bound_certificate(f, req, opt.seed));
    return kOk;
}

int cmd_rank(const std::string& file, const std::string& cgv_path, int max_r, const Options& opt) {
    Form f = load_form(file);
    detail::require_nonzero(f);
    if (auto prof = MonomialProfile::of(f)) {
        auto rec = monomial_ranks(*prof);
        std::cout << "rk = " << rec.waring.lo << " (monomial)\n";
        std::cout << "crk = " << rec.cactus.lo << " (monomial)\n";
        if (rec.border.exact())
            std::cout << "brk = " << rec.border.lo << " (concentrated monomial)\n";
        else
            std::cout << "brk ∈ [" << rec.border.lo << "," << rec.border.hi << "]\n";
        return kOk;
    }
    if (f.num_vars() == 2) {
        auto syl = sylvester_rank(f, opt.seed);
        std::cout << "rk = " << syl.rank << " (sylvester" << (syl.certified ? "" : ", heuristic") << ")\n";
        return kOk;
    }

    // interval: certified (or assumed) lower bound, upper from term-wise
    // subadditivity of monomial ranks, tightened by numeric search
    auto lower = catalecticant_bound(f);
    std::string lower_src = "catalecticant";
    if (!cgv_path.empty()) {
        auto proof = load_cgv(cgv_path, f);
        auto rec = verify_cgv(f, proof.space, proof.cert);
        if (rec.value > lower.value) {
            lower = rec;
            lower_src = "cgv";
        }
    }
    std::size_t hi = 0;
    for (const auto& [m, c] : f.terms())
        hi += monomial_ranks(MonomialProfile(m.exponents)).waring.lo;
    std::string upper_src = "monomial sum";
    Rigor upper_rigor = Rigor::certified;
    const std::size_t cap = max_r > 0 ? std::min<std::size_t>(hi - 1, static_cast<std::size_t>(max_r)) : hi - 1;
    for (std::size_t r = lower.value; r <= cap && r < hi; ++r) {
        NumericOptions nopt{opt.seed, opt.restarts, opt.tol, 2000};
        auto res = numeric_decompose(f, r, nopt);
        if (res.witness) {
            hi = r;
            std::ostringstream rs;
            rs << "numeric, residual " << std::scientific << std::setprecision(2) << res.witness->residual;
            upper_src = rs.str();
            upper_rigor = Rigor::heuristic;
            break;
        }
    }
    std::cout << "rk ∈ [" << lower.value << "," << hi << "]\n";
    std::cout << "lower: " << lower_src << " (" << to_string(lower.rigor) << ", a = " << lower.a << ")\n";
    std::cout << "upper: " << upper_src << " (" << to_string(upper_rigor) << ")\n";
    return kOk;
}

int cmd_decompose(const std::string& file, std::size_t r, const std::string& emit, const Options& opt) {
    Form f = load_form(file);
    NumericOptions nopt{opt.seed, opt.restarts, opt.tol, 2000};
    auto res = numeric_decompose(f, r, nopt);
    if (!res.witness) {
        std::cout << "no " << r << "-term decomposition found (best residual " << res.best_residual << " after "
                  << res.restarts_used << " restarts)\n";
        return kNotFound;
    }
    std::cout << "found " << r << "-term decomposition, residual " << res.witness->residual << "\n";
    const auto& names = f.partition().names();
    for (const auto& t : res.witness->numeric_terms()) {
        std::cout << "  (";
        for (std::size_t v = 0; v < t.form.size(); ++v)
            std::cout << (v ? " + " : "") << "(" << t.form[v].real() << (t.form[v].imag() < 0 ? "" : "+")
                      << t.form[v].imag() << "i)" << names[v];
        std::cout << ")^" << f.degree() << "\n";
    }
    if (!emit.empty()) {
        std::ofstream out(emit, std::ios::binary);
        out << json{{"form", serialize_form(f)}, {"residual", res.witness->residual},
                    {"terms", codec::witness(*res.witness)}}
                       .dump(2)
            << "\n";
    }
    return kOk;
}

struct Attempt {
    AdditivityRequest request;
    std::optional<AdditivityCertificate> cert;
    std::string failure;
};

bool better(const AdditivityCertificate& x, const AdditivityCertificate& y) {
    if (x.rigor != y.rigor)
        return x.rigor < y.rigor;
    if (x.value != y.value)
        return x.value > y.value;
    if ((x.splitting != SplittingClaim::none) != (y.splitting != SplittingClaim::none))
        return x.splitting != SplittingClaim::none;
    return x.a < y.a;
}

int cmd_additivity(const std::vector<std::string>& files, const std::string& route_flag, const std::string& a_flag,
                   const std::vector<std::string>& cgv_files, const std::vector<std::string>& singular_files,
                   const std::vector<std::string>& evidence_files, const std::string& emit, const Options& opt) {
    if (files.size() < 2)
        throw Error(ErrorKind::InvalidArgument, "additivity needs at least two summand files");
    std::vector<Form> summands;
    for (const auto& p : files)
        summands.push_back(load_form(p));
    Form f = assemble_sum(summands);
    auto parts = split_summands(f);
    const int d = f.degree();

    auto check_count = [&](const std::vector<std::string>& v, const char* flag) {
        if (!v.empty() && v.size() != files.size())
            throw Error(ErrorKind::InvalidArgument, std::string(flag) + " needs one file per summand");
    };
    check_count(cgv_files, "--cgv");
    check_count(singular_files, "--singular");
    check_count(evidence_files, "--evidence");

    std::vector<Route> routes;
    if (route_flag == "auto") {
        routes = {Route::catalecticant, Route::cactus, Route::border};
        if (!cgv_files.empty())
            routes.push_back(Route::cgv_a2);
        if (!singular_files.empty())
            routes.push_back(Route::singular);
    } else {
        routes = {route_from_string(route_flag)};
    }

    std::vector<Attempt> attempts;
    for (Route route : routes) {
        AdditivityRequest base;
        base.route = route;
        std::string missing;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (!evidence_files.empty() && evidence_files[i] != "oracle") {
                base.evidence.push_back(codec::evidence(load_json(evidence_files[i]), parts[i]));
            } else if (auto ev = oracle_evidence(parts[i], route, opt.seed)) {
                base.evidence.push_back(*ev);
            } else {
                missing = "no oracle evidence for summand " + std::to_string(i + 1) + " (" + files[i] +
                          "); pass --evidence";
                break;
            }
        }
        if (route == Route::cgv_a2) {
            if (cgv_files.empty())
                missing = "route cgv needs --cgv files";
            else
                for (std::size_t i = 0; i < parts.size(); ++i)
                    base.cgv.push_back(load_cgv(cgv_files[i], parts[i]));
        }
        if (route == Route::singular) {
            if (singular_files.empty())
                missing = "route singular needs --singular files";
            else
                for (const auto& p : singular_files)
                    base.singular.push_back(codec::locus(load_json(p)));
        }
        std::vector<int> orders;
        if (route == Route::cgv_a2)
            orders = {2};
        else if (route == Route::singular && !base.singular.empty())
            orders = {base.singular.front().a};
        else if (a_flag == "auto")
            for (int a = 1; a <= d - 1; ++a)
                orders.push_back(a);
        else
            orders = {detail::parse_int(a_flag, "order")};
        for (int a : orders) {
            Attempt at{base, std::nullopt, missing};
            at.request.a = a;
            attempts.push_back(std::move(at));
        }
    }

    std::vector<std::future<void>> jobs;
    for (auto& at : attempts) {
        if (!at.failure.empty())
            continue;
        jobs.push_back(std::async(std::launch::async, [&at, &f, &opt] {
            try {
                at.cert = run_additivity(f, at.request, opt.seed);
            } catch (const Error& e) {
                at.failure = e.what();
            }
        }));
    }
    for (auto& j : jobs)
        j.get();

    const Attempt* best = nullptr;
    for (const auto& at : attempts)
        if (at.cert && (!best || better(*at.cert, *best->cert)))
            best = &at;
    if (!best) {
        std::cerr << "no route certified additivity for " << f.partition().str() << "\n";
        for (const auto& at : attempts)
            std::cerr << "  " << to_string(at.request.route) << " a=" << at.request.a << ": " << at.failure << "\n";
        return kNoRoute;
    }
    const auto& cert = *best->cert;
    std::cout << rank_symbol(cert.route) << "(F) = " << cert.value << " (" << to_string(cert.rigor) << ", route "
              << to_string(cert.route) << ", a = " << cert.a << ")\n";
    for (std::size_t i = 0; i < cert.summands.size(); ++i) {
        const auto& s = cert.summands[i];
        std::cout << "  F" << i + 1 << " [" << files[i] << "]: " << rank_symbol(cert.route) << " = " << s.rank
                  << " via " << s.provenance << ", dim Derivs = " << s.derivs_dim << "\n";
    }
    if (cert.splitting != SplittingClaim::none)
        std::cout << "splitting: " << to_string(cert.splitting) << "\n";
    for (const auto& n : cert.notes)
        std::cout << "note: " << n << "\n";
    if (!emit.empty())
        write_certificate(emit, additivity_certificate(f, best->request, opt.seed));
    return cert.rigor == Rigor::certified ? kOk : kAssumed;
}

int cmd_verify(const std::string& file) {
    auto doc = load_json(file);
    auto out = verify_certificate(doc);
    switch (out.status) {
    case VerifyStatus::valid: std::cout << "valid\n"; return kOk;
    case VerifyStatus::assumed: std::cout << out.message << "\n"; return kAssumed;
    case VerifyStatus::rejected: std::cout << "rejected: " << out.message << "\n"; return kRejected;
    }
    return kRejected;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Waring, cactus and border rank bounds and additivity certificates"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--seed", opt.seed, "master seed for randomized subroutines");
    app.add_option("--tol", opt.tol, "numeric residual tolerance");
    app.add_option("--restarts", opt.restarts, "numeric search restarts");

    std::string file, a_flag = "all", method = "catalecticant", cgv, singular, emit, route = "auto";
    std::vector<std::string> files, cgv_files, singular_files, evidence_files;
    int max_r = 0;
    std::size_t r = 1;

    auto* dims = app.add_subcommand("dims", "dim Derivs(F)_a");
    dims->add_option("form", file)->required();
    dims->add_option("--a", a_flag, "order or 'all'");

    auto* bound = app.add_subcommand("bound", "certified lower bound");
    bound->add_option("form", file)->required();
    bound->add_option("--method", method)->check(CLI::IsMember({"catalecticant", "cgv", "singular", "border"}));
    bound->add_option("--cgv", cgv, "affine space and minrank certificate (JSON)");
    bound->add_option("--singular", singular, "multiplicity locus witness (JSON)");
    bound->add_option("--emit", emit, "write a certificate");

    auto* rank_cmd = app.add_subcommand("rank", "exact rank or interval");
    rank_cmd->add_option("form", file)->required();
    rank_cmd->add_option("--cgv", cgv, "affine space and minrank certificate (JSON)");
    rank_cmd->add_option("--max-r", max_r, "largest size tried by the numeric search");

    auto* decompose = app.add_subcommand("decompose", "numeric power-sum search");
    decompose->add_option("form", file)->required();
    decompose->add_option("--r", r, "number of terms")->required();
    decompose->add_option("--emit", emit, "write the witness");

    std::string add_a = "auto";
    auto* additivity = app.add_subcommand("additivity", "certify rank additivity");
    additivity->add_option("forms", files)->required();
    additivity->add_option("--route", route)
        ->check(CLI::IsMember({"auto", "catalecticant", "cgv", "singular", "cactus", "border"}));
    additivity->add_option("--a", add_a, "order or 'auto'");
    additivity->add_option("--cgv", cgv_files, "per-summand affine spaces");
    additivity->add_option("--singular", singular_files, "per-summand witness maps");
    additivity->add_option("--evidence", evidence_files, "per-summand rank evidence ('oracle' for the built-in oracles)");
    additivity->add_option("--emit", emit, "write a certificate");

    auto* verify = app.add_subcommand("verify", "re-check a certificate");
    verify->add_option("certificate", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*dims)
            return cmd_dims(file, a_flag);
        if (*bound)
            return cmd_bound(file, method, cgv, singular, emit, opt);
        if (*rank_cmd)
            return cmd_rank(file, cgv, max_r, opt);
        if (*decompose)
            return cmd_decompose(file, r, emit, opt);
        if (*additivity)
            return cmd_additivity(files, route, add_a, cgv_files, singular_files, evidence_files, emit, opt);
        if (*verify)
            return cmd_verify(file);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e);
    }
    return kInputError;
}
