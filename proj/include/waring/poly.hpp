#pragma once

// Sparse homogeneous polynomials over Q(i) on a partitioned variable set,
// together with the action of constant-coefficient differential operators.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "waring/error.hpp"
#include "waring/scalar.hpp"

namespace waring {

// ---------------------------------------------------------------------------
// Variable partitions
// ---------------------------------------------------------------------------

/// Ordered list of disjoint, nonempty tuples of variable names. Variables are
/// indexed globally in declaration order (tuple 0 first).
class VariablePartition {
public:
    VariablePartition() = default;

    explicit VariablePartition(std::vector<std::vector<std::string>> tuples)
        : tuples_(std::move(tuples)) {
        if (tuples_.empty())
            throw Error(ErrorKind::InvalidPartition, "partition needs at least one tuple");
        for (std::size_t t = 0; t < tuples_.size(); ++t) {
            if (tuples_[t].empty())
                throw Error(ErrorKind::InvalidPartition, "empty variable tuple");
            for (const auto& name : tuples_[t]) {
                if (!valid_name(name))
                    throw Error(ErrorKind::InvalidPartition, "invalid variable name '" + name + "'");
                if (index_.contains(name))
                    throw Error(ErrorKind::InvalidPartition, "duplicate variable '" + name + "'");
                index_.emplace(name, names_.size());
                names_.push_back(name);
                owner_.push_back(t);
            }
        }
    }

    /// Single-tuple partition.
    static VariablePartition single(std::vector<std::string> names) {
        return VariablePartition({std::move(names)});
    }

    std::size_t num_vars() const { return names_.size(); }
    std::size_t num_tuples() const { return tuples_.size(); }
    const std::vector<std::vector<std::string>>& tuples() const { return tuples_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t var) const { return names_.at(var); }
    std::size_t tuple_of(std::size_t var) const { return owner_.at(var); }

    std::optional<std::size_t> index_of(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    /// Global indices of the variables in tuple t.
    std::vector<std::size_t> tuple_indices(std::size_t t) const {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < owner_.size(); ++v)
            if (owner_[v] == t)
                out.push_back(v);
        return out;
    }

    /// "x y | z w"
    std::string str() const {
        std::string out;
        for (std::size_t t = 0; t < tuples_.size(); ++t) {
            if (t)
                out += " | ";
            for (std::size_t k = 0; k < tuples_[t].size(); ++k) {
                if (k)
                    out += ' ';
                out += tuples_[t][k];
            }
        }
        return out;
    }

    friend bool operator==(const VariablePartition& a, const VariablePartition& b) {
        return a.tuples_ == b.tuples_;
    }

    static bool valid_name(std::string_view name) {
        if (name.empty())
            return false;
        auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
        if (!head(name[0]))
            return false;
        return std::all_of(name.begin() + 1, name.end(), [&](char c) {
            return head(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '\'';
        });
    }

private:
    std::vector<std::vector<std::string>> tuples_;
    std::vector<std::string> names_;
    std::vector<std::size_t> owner_;
    std::unordered_map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Monomials
// ---------------------------------------------------------------------------

struct Monomial {
    std::vector<int> exponents;

    int degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }
    std::size_t size() const { return exponents.size(); }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Differential monomial d^alpha acting on S; same exponent layout as Monomial.
struct DualMonomial {
    std::vector<int> exponents;

    int degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }
    std::size_t size() const { return exponents.size(); }
    friend bool operator==(const DualMonomial&, const DualMonomial&) = default;

    friend DualMonomial operator*(const DualMonomial& a, const DualMonomial& b) {
        DualMonomial out{a.exponents};
        for (std::size_t k = 0; k < out.exponents.size(); ++k)
            out.exponents[k] += b.exponents.at(k);
        return out;
    }
};

/// Graded-lex order: higher degree first, then lexicographically larger
/// exponent vector first (x^2 < xy < y^2 in listing order for vars x, y).
struct GradedLex {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
        int da = std::accumulate(a.begin(), a.end(), 0);
        int db = std::accumulate(b.begin(), b.end(), 0);
        if (da != db)
            return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
    bool operator()(const Monomial& a, const Monomial& b) const { return (*this)(a.exponents, b.exponents); }
    bool operator()(const DualMonomial& a, const DualMonomial& b) const {
        return (*this)(a.exponents, b.exponents);
    }
};

/// All exponent vectors of length n and total degree `degree`, graded-lex.
inline std::vector<std::vector<int>> enumerate_exponents(std::size_t n, int degree) {
    std::vector<std::vector<int>> out;
    if (degree < 0)
        return out;
    if (n == 0) {
        if (degree == 0)
            out.emplace_back();
        return out;
    }
    std::vector<int> cur(n, 0);
    auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
        if (pos + 1 == n) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[pos] = e;
            self(self, pos + 1, left - e);
        }
    };
    rec(rec, 0, degree);
    return out;
}

inline std::vector<Monomial> enumerate_monomials(std::size_t n, int degree) {
    std::vector<Monomial> out;
    for (auto& e : enumerate_exponents(n, degree))
        out.push_back(Monomial{std::move(e)});
    return out;
}

inline std::vector<DualMonomial> enumerate_duals(std::size_t n, int degree) {
    std::vector<DualMonomial> out;
    for (auto& e : enumerate_exponents(n, degree))
        out.push_back(DualMonomial{std::move(e)});
    return out;
}

/// C(n, k) for small arguments; saturates nothing, caller keeps sizes sane.
inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t j = 1; j <= k; ++j)
        r = r * (n - k + j) / j;
    return r;
}

/// Number of monomials of degree d in n variables.
inline std::size_t monomial_count(std::size_t n, int d) {
    if (d < 0 || n == 0)
        return (n == 0 && d == 0) ? 1 : 0;
    return binomial(n + static_cast<std::size_t>(d) - 1, n - 1);
}

inline mpz_class factorial(unsigned n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// ---------------------------------------------------------------------------
// Linear forms
// ---------------------------------------------------------------------------

struct LinearForm {
    std::vector<Scalar> coefficients;

    bool is_zero() const {
        return std::all_of(coefficients.begin(), coefficients.end(), [](const Scalar& s) { return s.is_zero(); });
    }
    std::size_t size() const { return coefficients.size(); }
    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Tuple containing every nonzero coefficient of l; nullopt means the form
/// mixes variables from several tuples.
inline std::optional<std::size_t> support_tuple(const LinearForm& l, const VariablePartition& p) {
    if (l.size() != p.num_vars())
        throw Error(ErrorKind::DegreeMismatch, "linear form length does not match partition");
    std::optional<std::size_t> tuple;
    bool any = false;
    for (std::size_t v = 0; v < l.size(); ++v) {
        if (l.coefficients[v].is_zero())
            continue;
        std::size_t t = p.tuple_of(v);
        if (any && *tuple != t)
            return std::nullopt;
        tuple = t;
        any = true;
    }
    if (!any)
        throw Error(ErrorKind::ZeroLinearForm, "support of the zero linear form");
    return tuple;
}

// ---------------------------------------------------------------------------
// Forms
// ---------------------------------------------------------------------------

class Form {
public:
    using TermMap = std::map<Monomial, Scalar, GradedLex>;

    Form() : partition_(std::make_shared<VariablePartition>()) {}

    Form(VariablePartition partition, int degree)
        : partition_(std::make_shared<const VariablePartition>(std::move(partition))), degree_(degree) {
        if (degree < 0)
            throw Error(ErrorKind::DegreeMismatch, "negative degree");
    }

    Form(std::shared_ptr<const VariablePartition> partition, int degree)
        : partition_(std::move(partition)), degree_(degree) {
        if (degree < 0)
            throw Error(ErrorKind::DegreeMismatch, "negative degree");
    }

    /// Adds c * x^m. Merges equal monomials and drops cancelled terms.
    void add_term(const Monomial& m, const Scalar& c) {
        if (m.size() != num_vars())
            throw Error(ErrorKind::DegreeMismatch, "monomial length does not match partition");
        if (m.degree() != degree_)
            throw Error(ErrorKind::DegreeMismatch,
                        "term of degree " + std::to_string(m.degree()) + " in a form of degree " +
                            std::to_string(degree_));
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    const TermMap& terms() const { return terms_; }
    const VariablePartition& partition() const { return *partition_; }
    const std::shared_ptr<const VariablePartition>& partition_ptr() const { return partition_; }
    int degree() const { return degree_; }
    std::size_t num_vars() const { return partition_->num_vars(); }
    bool is_zero() const { return terms_.empty(); }

    Scalar coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar() : it->second;
    }

    /// Coefficients in graded-lex order over all monomials of the degree.
    std::vector<Scalar> dense_coefficients() const {
        std::vector<Scalar> out;
        for (const auto& m : enumerate_monomials(num_vars(), degree_))
            out.push_back(coefficient(m));
        return out;
    }

    Form& operator+=(const Form& o) {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    Form& operator-=(const Form& o) {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    Form& operator*=(const Scalar& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const Scalar& s, Form f) { return f *= s; }

    friend bool operator==(const Form& a, const Form& b) {
        return a.degree_ == b.degree_ && *a.partition_ == *b.partition_ && a.terms_ == b.terms_;
    }

    /// Tuple that owns every variable occurring in the form; nullopt when the
    /// support spans several tuples or the form is zero.
    std::optional<std::size_t> owning_tuple() const {
        std::optional<std::size_t> owner;
        for (const auto& [m, c] : terms_) {
            for (std::size_t v = 0; v < m.size(); ++v) {
                if (m.exponents[v] == 0)
                    continue;
                std::size_t t = partition_->tuple_of(v);
                if (owner && *owner != t)
                    return std::nullopt;
                owner = t;
            }
        }
        return owner;
    }

    /// Same polynomial viewed over another partition with the same variable
    /// order (for example a coarser or finer grouping).
    Form with_partition(VariablePartition p) const {
        if (p.names() != partition_->names())
            throw Error(ErrorKind::InvalidPartition, "repartition must keep variable order");
        Form out(std::move(p), degree_);
        out.terms_ = terms_;
        return out;
    }

private:
    void check_compatible(const Form& o) const {
        if (o.degree_ != degree_)
            throw Error(ErrorKind::DegreeMismatch, "adding forms of different degree");
        if (partition_ != o.partition_ && partition_->names() != o.partition_->names())
            throw Error(ErrorKind::UnknownVariable, "adding forms over different variables");
    }

    std::shared_ptr<const VariablePartition> partition_;
    int degree_ = 0;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Differentiation and powers
// ---------------------------------------------------------------------------

/// d^alpha F. The coefficient of x^beta is c_{alpha+beta} (alpha+beta)!/beta!.
inline Form apply_dual(const DualMonomial& dual, const Form& f) {
    if (dual.size() != f.num_vars())
        throw Error(ErrorKind::DegreeMismatch, "dual monomial length does not match partition");
    int a = dual.degree();
    if (a > f.degree())
        throw Error(ErrorKind::DegreeMismatch,
                    "operator of order " + std::to_string(a) + " applied to a form of degree " +
                        std::to_string(f.degree()));
    Form out(f.partition_ptr(), f.degree() - a);
    for (const auto& [m, c] : f.terms()) {
        Monomial beta{m.exponents};
        mpz_class factor = 1;
        bool divides = true;
        for (std::size_t v = 0; v < m.size(); ++v) {
            int g = m.exponents[v], e = dual.exponents[v];
            if (g < e) {
                divides = false;
                break;
            }
            for (int k = g - e + 1; k <= g; ++k)
                factor *= k;
            beta.exponents[v] = g - e;
        }
        if (divides)
            out.add_term(beta, c * Scalar(mpq_class(factor)));
    }
    return out;
}

/// Linear combination of differential monomials (all of the same order).
using DualPolynomial = std::vector<std::pair<DualMonomial, Scalar>>;

inline Form apply_dual(const DualPolynomial& op, const Form& f, int order) {
    Form out(f.partition_ptr(), f.degree() - order);
    for (const auto& [d, c] : op) {
        if (d.degree() != order)
            throw Error(ErrorKind::DegreeMismatch, "inhomogeneous differential operator");
        out += c * apply_dual(d, f);
    }
    return out;
}

/// Multinomial expansion of l^d.
inline Form power_of_linear(const LinearForm& l, int d, std::shared_ptr<const VariablePartition> p) {
    if (d < 1)
        throw Error(ErrorKind::DegreeMismatch, "power must be at least 1");
    if (l.size() != p->num_vars())
        throw Error(ErrorKind::DegreeMismatch, "linear form length does not match partition");
    std::vector<std::size_t> support;
    for (std::size_t v = 0; v < l.size(); ++v)
        if (!l.coefficients[v].is_zero())
            support.push_back(v);
    Form out(p, d);
    if (support.empty())
        return out;
    // powers[k][e] = l_k^e
    std::vector<std::vector<Scalar>> powers(support.size());
    for (std::size_t k = 0; k < support.size(); ++k) {
        powers[k].resize(static_cast<std::size_t>(d) + 1);
        powers[k][0] = Scalar(1);
        for (int e = 1; e <= d; ++e)
            powers[k][e] = powers[k][e - 1] * l.coefficients[support[k]];
    }
    const mpz_class dfact = factorial(static_cast<unsigned>(d));
    for (const auto& beta : enumerate_exponents(support.size(), d)) {
        mpz_class denom = 1;
        Scalar c(1);
        for (std::size_t k = 0; k < support.size(); ++k) {
            denom *= factorial(static_cast<unsigned>(beta[k]));
            c *= powers[k][beta[k]];
        }
        Monomial m{std::vector<int>(l.size(), 0)};
        for (std::size_t k = 0; k < support.size(); ++k)
            m.exponents[support[k]] = beta[k];
        out.add_term(m, c * Scalar(mpq_class(dfact / denom)));
    }
    return out;
}

inline Form power_of_linear(const LinearForm& l, int d, const VariablePartition& p) {
    return power_of_linear(l, d, std::make_shared<const VariablePartition>(p));
}

/// F(point) for any commutative ring element type with Scalar scaling
/// (Scalar itself, or parametric polynomials).
template <class Ring>
Ring evaluate(const Form& f, std::span<const Ring> point, const Ring& zero, const Ring& one) {
    if (point.size() != f.num_vars())
        throw Error(ErrorKind::DegreeMismatch, "evaluation point has wrong length");
    std::vector<std::vector<Ring>> powers(point.size());
    for (std::size_t v = 0; v < point.size(); ++v) {
        powers[v].push_back(one);
        for (int e = 1; e <= f.degree(); ++e)
            powers[v].push_back(powers[v].back() * point[v]);
    }
    Ring acc = zero;
    for (const auto& [m, c] : f.terms()) {
        Ring t = one;
        for (std::size_t v = 0; v < m.size(); ++v)
            if (m.exponents[v])
                t = t * powers[v][m.exponents[v]];
        acc = acc + c * t;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Form files
// ---------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
    auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && ws(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && ws(s.back()))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= s.size(); ++k) {
        if (k == s.size() || s[k] == sep) {
            out.push_back(s.substr(start, k - start));
            start = k + 1;
        }
    }
    return out;
}

inline int parse_int(std::string_view s, std::string_view what) {
    s = trim(s);
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        s.size() > 6)
        throw Error(ErrorKind::ParseError, "malformed " + std::string(what) + " '" + std::string(s) + "'");
    return std::stoi(std::string(s));
}

/// "x*y^2" over the given partition.
inline Monomial parse_monomial(std::string_view text, const VariablePartition& p) {
    Monomial m{std::vector<int>(p.num_vars(), 0)};
    text = trim(text);
    if (text.empty())
        throw Error(ErrorKind::ParseError, "missing monomial");
    for (auto factor : split(text, '*')) {
        factor = trim(factor);
        auto caret = factor.find('^');
        std::string_view name = trim(factor.substr(0, caret));
        int exp = caret == std::string_view::npos ? 1 : parse_int(factor.substr(caret + 1), "exponent");
        if (name.empty())
            throw Error(ErrorKind::ParseError, "missing variable in '" + std::string(text) + "'");
        auto idx = p.index_of(name);
        if (!idx)
            throw Error(ErrorKind::UnknownVariable, "unknown variable '" + std::string(name) + "'");
        m.exponents[*idx] += exp;
    }
    return m;
}

} // namespace detail

/// Parses the form-file format. Lines (or ';'-separated segments) are
/// `vars: ...`, `degree: d`, or `<coefficient> <monomial>`; '#' starts a
/// comment.
inline Form parse_form(std::string_view text) {
    std::optional<VariablePartition> partition;
    std::optional<int> degree;
    std::vector<std::pair<std::string, std::string>> pending;

    for (auto line : detail::split(text, '\n')) {
        auto hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        for (auto seg : detail::split(line, ';')) {
            seg = detail::trim(seg);
            if (seg.empty())
                continue;
            if (seg.starts_with("vars:")) {
                if (partition)
                    throw Error(ErrorKind::ParseError, "duplicate vars header");
                std::vector<std::vector<std::string>> tuples;
                for (auto group : detail::split(seg.substr(5), '|')) {
                    std::vector<std::string> names;
                    std::istringstream in{std::string(group)};
                    for (std::string name; in >> name;)
                        names.push_back(name);
                    tuples.push_back(std::move(names));
                }
                try {
                    partition.emplace(std::move(tuples));
                } catch (const Error& e) {
                    throw Error(ErrorKind::ParseError, e.what());
                }
            } else if (seg.starts_with("degree:")) {
                if (degree)
                    throw Error(ErrorKind::ParseError, "duplicate degree header");
                degree = detail::parse_int(seg.substr(7), "degree");
                if (*degree < 1)
                    throw Error(ErrorKind::ParseError, "degree must be at least 1");
            } else {
                auto sp = seg.find_first_of(" \t");
                if (sp == std::string_view::npos)
                    throw Error(ErrorKind::ParseError, "term needs a coefficient and a monomial: '" +
                                                           std::string(seg) + "'");
                pending.emplace_back(std::string(seg.substr(0, sp)), std::string(seg.substr(sp + 1)));
            }
        }
    }
    if (!partition)
        throw Error(ErrorKind::ParseError, "missing 'vars:' header");
    if (!degree)
        throw Error(ErrorKind::ParseError, "missing 'degree:' header");

    Form f(std::move(*partition), *degree);
    for (const auto& [coef, mon] : pending) {
        Scalar c = Scalar::parse(coef);
        Monomial m = detail::parse_monomial(mon, f.partition());
        if (m.degree() != *degree)
            throw Error(ErrorKind::DegreeMismatch, "term '" + coef + " " + mon + "' has degree " +
                                                       std::to_string(m.degree()) + ", expected " +
                                                       std::to_string(*degree));
        f.add_term(m, c);
    }
    return f;
}

inline std::string monomial_text(const Monomial& m, const VariablePartition& p) {
    std::string out;
    for (std::size_t v = 0; v < m.size(); ++v) {
        if (m.exponents[v] == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += p.name(v);
        if (m.exponents[v] != 1)
            out += '^' + std::to_string(m.exponents[v]);
    }
    return out.empty() ? "1" : out;
}

inline std::string dual_text(const DualMonomial& d, const VariablePartition& p) {
    std::string out;
    for (std::size_t v = 0; v < d.size(); ++v) {
        if (d.exponents[v] == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += "d" + p.name(v);
        if (d.exponents[v] != 1)
            out += '^' + std::to_string(d.exponents[v]);
    }
    return out.empty() ? "1" : out;
}

/// Canonical form-file text; parse_form(serialize_form(F)) == F.
inline std::string serialize_form(const Form& f) {
    std::string out = "vars: " + f.partition().str() + "\n";
    out += "degree: " + std::to_string(f.degree()) + "\n";
    for (const auto& [m, c] : f.terms())
        out += c.str() + " " + monomial_text(m, f.partition()) + "\n";
    return out;
}

/// Human-readable one-line rendering, e.g. "x^2+2*x*y".
inline std::string pretty(const Form& f) {
    if (f.is_zero())
        return "0";
    std::string out;
    for (const auto& [m, c] : f.terms()) {
        std::string coef = c.str();
        std::string mon = monomial_text(m, f.partition());
        if (!out.empty() && coef[0] != '-')
            out += '+';
        if (c.is_one())
            out += mon;
        else if (c == Scalar(-1))
            out += "-" + mon;
        else if (!c.is_real())
            out += "(" + coef + ")*" + mon;
        else
            out += coef + "*" + mon;
    }
    return out;
}

} // namespace waring
