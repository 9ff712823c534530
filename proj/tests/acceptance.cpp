// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "test_util.hpp"

using namespace waring;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Form fermat(std::size_t n, std::size_t r, int d) {
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v)
        names.push_back("x" + std::to_string(v + 1));
    Form f(VariablePartition::single(names), d);
    for (std::size_t v = 0; v < r; ++v) {
        Monomial m{std::vector<int>(n, 0)};
        m.exponents[v] = d;
        f.add_term(m, 1);
    }
    return f;
}

Form cgv_form(std::size_t n) {
    std::vector<std::string> names{"x"};
    for (std::size_t i = 1; i <= n; ++i)
        names.push_back("y" + std::to_string(i));
    Form f(VariablePartition::single(names), 3);
    for (std::size_t i = 1; i <= n; ++i) {
        Monomial m{std::vector<int>(n + 1, 0)};
        m.exponents[0] = i < n ? 1 : 2;
        m.exponents[i] = i < n ? 2 : 1;
        f.add_term(m, 1);
    }
    return f;
}

/// W = dF/dx + span{dF/dy_i} with the full Gram matrix as the minor.
CgvProof cgv_proof(const Form& f) {
    const std::size_t nv = f.num_vars();
    auto partial = [&](std::size_t v) {
        DualMonomial d{std::vector<int>(nv, 0)};
        d.exponents[v] = 1;
        return apply_dual(d, f);
    };
    AffineFormSpace w{2, partial(0), {}};
    for (std::size_t v = 1; v < nv; ++v)
        w.basis.push_back(partial(v));
    std::vector<std::size_t> all(nv);
    std::iota(all.begin(), all.end(), 0);
    return {w, MinrankCertificate{nv, ConstantMinor{{all, all}}}};
}

std::string run_cli(const std::string& args, int& code) {
    std::string cmd = std::string(WARING_CLI) + " " + args + " 2>&1";
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        code = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), n);
    int status = pclose(pipe);
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

NumericOptions numeric(std::uint64_t seed, int restarts = 64) {
    NumericOptions o;
    o.seed = seed;
    o.restarts = restarts;
    o.tol = 1e-10;
    return o;
}

// 1 -------------------------------------------------------------------------

Outcome fermat_catalecticant() {
    int cases = 0;
    for (int d = 3; d <= 8; ++d)
        for (std::size_t n = 1; n <= 8; ++n)
            for (std::size_t r = 1; r <= std::min<std::size_t>(n, 5); ++r) {
                auto f = fermat(n, r, d);
                for (int a = 1; a <= d - 1; ++a) {
                    auto dim = derivs_dim(f, a);
                    if (dim != r)
                        return {false, "d=" + std::to_string(d) + " n=" + std::to_string(n) + " r=" +
                                           std::to_string(r) + " a=" + std::to_string(a) + ": " + std::to_string(dim)};
                    ++cases;
                }
            }
    return {true, std::to_string(cases) + " (d, n, r, a) cases exact"};
}

// 2 -------------------------------------------------------------------------

Outcome binary_generic_rank() {
    std::ostringstream worst;
    bool ok = true;
    for (int d = 2; d <= 12; ++d) {
        std::mt19937_64 rng(1000 + d);
        int hits = 0;
        for (int k = 0; k < 50; ++k) {
            auto f = testutil::random_binary(rng, d);
            auto r = sylvester_rank(f, k).rank;
            hits += r == generic_rank(2, d);
            std::size_t maxdim = 0;
            for (int a = 0; a <= d; ++a)
                maxdim = std::max(maxdim, derivs_dim(f, a));
            if (r < maxdim)
                return {false, "d=" + std::to_string(d) + ": rank " + std::to_string(r) + " below catalecticant " +
                                   std::to_string(maxdim)};
        }
        if (hits < 48)
            ok = false;
        worst << (d > 2 ? " " : "") << d << ":" << hits;
    }
    return {ok, "generic hits per d (of 50):" + std::string(" ") + worst.str()};
}

// 3 -------------------------------------------------------------------------

Outcome cgv_example() {
    std::ostringstream msg;
    for (std::size_t n = 2; n <= 4; ++n) {
        auto f = cgv_form(n);
        auto proof = cgv_proof(f);
        auto rec = verify_cgv(f, proof.space, proof.cert);
        if (rec.value != 2 * n + 1 || rec.rigor != Rigor::certified)
            return {false, "n=" + std::to_string(n) + ": bound " + std::to_string(rec.value)};
        auto res = numeric_decompose(f, 2 * n + 1, numeric(n));
        if (!res.witness || res.witness->residual > 1e-10)
            return {false, "n=" + std::to_string(n) + ": no numeric witness (best " +
                               std::to_string(res.best_residual) + ")"};
        msg << (n > 2 ? "; " : "") << "n=" << n << " rk=" << 2 * n + 1 << " (residual " << res.witness->residual
            << ")";
    }
    return {true, msg.str()};
}

// 4 -------------------------------------------------------------------------

Outcome kleppe() {
    auto f = testutil::form("kleppe.form");
    if (f != parse_form("vars: x y z; degree: 4; 1 x^2*y^2; 1 y^3*z"))
        return {false, "corpus form differs from y^2(x^2+yz)"};
    auto j = testutil::input("kleppe_cgv.json");
    auto space = codec::space(j["space"], f);
    auto rec = verify_cgv(f, space, codec::minrank(j["certificate"]));
    if (rec.value != 7 || rec.rigor != Rigor::assumed)
        return {false, "bound " + std::to_string(rec.value) + " (" + std::string(to_string(rec.rigor)) + ")"};
    auto res = numeric_decompose(f, 7, numeric(4));
    if (!res.witness)
        return {false, "no 7-term numeric witness"};
    int code = 0;
    auto out = run_cli("rank " + testutil::data_path("forms/kleppe.form") + " --cgv " +
                           testutil::data_path("inputs/kleppe_cgv.json"),
                       code);
    if (out.find("rk ∈ [7,7]") == std::string::npos || out.find("assumed") == std::string::npos)
        return {false, "cmd_rank printed: " + out};
    std::ostringstream msg;
    msg << "bound 7 (assumed), 7-term residual " << res.witness->residual << ", cmd_rank [7,7]";
    return {true, msg.str()};
}

// 5 -------------------------------------------------------------------------

Form generic_binary(std::mt19937_64& rng, int d, const std::string& u, const std::string& v) {
    for (;;) {
        auto f = testutil::random_binary(rng, d, u, v);
        if (derivs_dim(f, d / 2) == generic_rank(2, d))
            return f;
    }
}

Outcome waring_additivity() {
    int pairs = 0;
    for (int d : {4, 6}) {
        std::mt19937_64 rng(5000 + d);
        for (int k = 0; k < 20; ++k) {
            auto a = generic_binary(rng, d, "x", "y");
            auto b = generic_binary(rng, d, "z", "w");
            auto f = assemble_sum({a, b});
            const int half = d / 2;
            auto ea = oracle_evidence(a, Route::catalecticant, k);
            auto eb = oracle_evidence(b, Route::catalecticant, k);
            auto cert = certify_waring_additivity(f, half, {*ea, *eb}, k);
            auto expected = sylvester_rank(a, k).rank + sylvester_rank(b, k).rank;
            std::string tag = "d=" + std::to_string(d) + " pair " + std::to_string(k);
            if (cert.rigor != Rigor::certified || cert.value != expected)
                return {false, tag + ": certified " + std::to_string(cert.value) + ", Sylvester " + std::to_string(expected)};
            auto res = numeric_decompose(f, expected, numeric(100 * d + k));
            if (!res.witness)
                return {false, tag + ": no " + std::to_string(expected) + "-term numeric decomposition"};
            auto rep = decomposition_splits(*res.witness, f.partition(), 1e-8);
            if (!rep.split)
                return {false, tag + ": numeric decomposition does not split"};
            ++pairs;
        }
    }
    return {true, std::to_string(pairs) + " pairs (20 quartic, 20 sextic) certified and split"};
}

// 6 -------------------------------------------------------------------------

Outcome singular_route() {
    auto a = testutil::form("xyz.form");
    auto b = testutil::form("xyz_2.form");
    auto line = coordinate_witness(1, 3, {0});
    for (const auto& s : {a, b})
        if (verify_singular(s, 1, line).value != 4)
            return {false, "summand bound is not 4"};
    auto f = assemble_sum({a, b});
    auto cert = certify_singular_additivity(f, 1, {{line, SummandEvidence::monomial(4)}, {line, SummandEvidence::monomial(4)}});
    auto oracle = 2 * monomial_ranks(MonomialProfile({1, 1, 1})).waring.lo;
    if (cert.value != 8 || cert.rigor != Rigor::certified || oracle != 8)
        return {false, "certified " + std::to_string(cert.value) + ", oracle " + std::to_string(oracle)};
    return {true, "rk(x1y1z1 + x2y2z2) = 8 certified, monomial oracle 2*4"};
}

// 7 -------------------------------------------------------------------------

Outcome cactus_border() {
    auto a = testutil::form("xy3.form");
    auto b = testutil::form("zw3.form");
    auto f = assemble_sum({a, b});
    auto mono = monomial_ranks(*MonomialProfile::of(a));
    if (mono.cactus.lo != 2 || !mono.border.exact() || mono.border.lo != 2)
        return {false, "monomial oracle for xy^3 disagrees"};
    std::vector<SummandEvidence> crk{*oracle_evidence(a, Route::cactus), *oracle_evidence(b, Route::cactus)};
    auto c = certify_cactus_additivity(f, 2, crk);
    if (c.value != 4 || c.splitting != SplittingClaim::apolar_schemes_split || c.rigor != Rigor::certified)
        return {false, "crk route gave " + std::to_string(c.value)};
    std::vector<SummandEvidence> brk{*oracle_evidence(a, Route::border), *oracle_evidence(b, Route::border)};
    auto br = certify_border_additivity(f, 2, brk);
    if (br.value != 4 || br.rigor != Rigor::certified)
        return {false, "brk route gave " + std::to_string(br.value)};
    return {true, "crk = brk = 4 (schemes split at a = 2); crk(xy^3) = brk(xy^3) = 2"};
}

// 8 -------------------------------------------------------------------------

Outcome property_suites() {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 200; ++k) {
        std::vector<std::string> names{"x", "y", "z", "w"};
        names.resize(1 + k % 4);
        const int d = 1 + k % 7;
        Form f;
        do {
            f = testutil::random_form(rng, VariablePartition::single(names), d, 9, k % 2 ? 0.3 : 1.0);
        } while (f.is_zero());
        for (int a = 0; a <= d; ++a)
            if (derivs_dim(f, a) != derivs_dim(f, d - a))
                return {false, "symmetry fails on random form " + std::to_string(k)};
    }

    for (int k = 0; k < 100; ++k) {
        const int d = 2 + k % 4;
        std::vector<Form> parts;
        for (std::size_t t = 0; t < 2 + k % 2; ++t) {
            std::vector<std::string> names;
            for (std::size_t v = 0; v < 1 + (k + t) % 3; ++v)
                names.push_back("t" + std::to_string(t) + "v" + std::to_string(v));
            Form s;
            do {
                s = testutil::random_form(rng, VariablePartition::single(names), d, 6, 0.6);
            } while (s.is_zero());
            parts.push_back(s);
        }
        auto f = assemble_sum(parts);
        for (int a = 1; a <= d - 1; ++a) {
            std::size_t sum = 0;
            for (const auto& s : parts)
                sum += derivs_dim(s, a);
            if (derivs_dim(f, a) != sum || direct_sum_dims(f, a).total != sum)
                return {false, "direct-sum additivity fails on sum " + std::to_string(k)};
        }
    }

    const std::vector<std::pair<std::string, std::size_t>> instances{
        {"xyz.form", 4}, {"cgv2.form", 5}, {"quartic_xy.form", 3}, {"kleppe.form", 7}, {"sq_sum.form", 4}};
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const auto& [name, r] = instances[k % instances.size()];
        DecompositionObjective obj(testutil::form(name), r);
        std::normal_distribution<double> normal(0.0, 0.7);
        Eigen::VectorXd x(static_cast<Eigen::Index>(obj.num_unknowns()));
        for (Eigen::Index j = 0; j < x.size(); ++j)
            x[j] = normal(rng);
        auto g = obj.gradient(x);
        Eigen::VectorXd fd(g.size());
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
            Eigen::VectorXd xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            fd[j] = (obj.cost(xp) - obj.cost(xm)) / (2 * h);
        }
        double rel = (g - fd).norm() / std::max(g.norm(), 1e-12);
        worst = std::max(worst, rel);
    }
    if (worst > 1e-6)
        return {false, "gradient relative error " + std::to_string(worst)};

    int certs = 0;
    for (const auto& entry : std::filesystem::directory_iterator(testutil::data_path("forms"))) {
        Form f;
        try {
            f = parse_form(testutil::read("forms/" + entry.path().filename().string()));
        } catch (const Error&) {
            continue;
        }
        auto text = dump_certificate(bound_certificate(f, {}, 0));
        if (verify_certificate(json::parse(text)).status != VerifyStatus::valid)
            return {false, "round trip fails for " + entry.path().filename().string()};
        ++certs;
    }
    std::ostringstream msg;
    msg << "200 symmetry, 100 direct sums, 20 gradients (worst rel. err " << worst << "), " << certs
        << " corpus certificates";
    return {true, msg.str()};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"fermat catalecticant", fermat_catalecticant},
        {"binary generic rank", binary_generic_rank},
        {"cgv example", cgv_example},
        {"kleppe quartic", kleppe},
        {"waring additivity", waring_additivity},
        {"singularity route", singular_route},
        {"cactus/border", cactus_border},
        {"property suites", property_suites}};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !out.pass;
        std::printf("%s criterion %zu (%s): %s [%.2fs]\n", out.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), out.detail.c_str(), secs);
    }
    std::fflush(stdout);
    return failures ? 1 : 0;
}
