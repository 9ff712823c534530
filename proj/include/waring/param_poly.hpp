#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "waring/error.hpp"
#include "waring/poly.hpp"
#include "waring/scalar.hpp"

namespace waring {

/// Sparse polynomial in parameters l1..lp with Q(i) coefficients.
class ParamPolynomial {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Scalar, GradedLex>;

    explicit ParamPolynomial(std::size_t nparams = 0) : nparams_(nparams) {}

    static ParamPolynomial constant(std::size_t nparams, const Scalar& c) {
        ParamPolynomial p(nparams);
        p.add_term(Exponents(nparams, 0), c);
        return p;
    }

    static ParamPolynomial variable(std::size_t nparams, std::size_t k) {
        ParamPolynomial p(nparams);
        Exponents e(nparams, 0);
        e.at(k) = 1;
        p.add_term(e, Scalar(1));
        return p;
    }

    void add_term(const Exponents& e, const Scalar& c) {
        if (e.size() != nparams_)
            throw Error(ErrorKind::DegreeMismatch, "parameter exponent length mismatch");
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    std::size_t nparams() const { return nparams_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
    }

    Scalar constant_term() const {
        auto it = terms_.find(Exponents(nparams_, 0));
        return it == terms_.end() ? Scalar() : it->second;
    }

    /// -1 for the zero polynomial.
    int total_degree() const { return terms_.empty() ? -1 : total(terms_.begin()->first); }

    bool depends_on(std::size_t k) const {
        for (const auto& [e, c] : terms_)
            if (e.at(k) > 0)
                return true;
        return false;
    }

    ParamPolynomial derivative(std::size_t k) const {
        ParamPolynomial out(nparams_);
        for (const auto& [e, c] : terms_) {
            if (e.at(k) == 0)
                continue;
            Exponents f = e;
            --f[k];
            out.add_term(f, c * Scalar(e[k]));
        }
        return out;
    }

    Scalar evaluate(std::span<const Scalar> point) const {
        if (point.size() != nparams_)
            throw Error(ErrorKind::DegreeMismatch, "parameter point has wrong length");
        Scalar acc;
        for (const auto& [e, c] : terms_) {
            Scalar t = c;
            for (std::size_t k = 0; k < nparams_; ++k)
                if (e[k])
                    t *= point[k].pow(static_cast<unsigned>(e[k]));
            acc += t;
        }
        return acc;
    }

    ParamPolynomial& operator+=(const ParamPolynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    ParamPolynomial& operator-=(const ParamPolynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    ParamPolynomial& operator*=(const Scalar& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_)
            c *= s;
        return *this;
    }

    friend ParamPolynomial operator+(ParamPolynomial a, const ParamPolynomial& b) { return a += b; }
    friend ParamPolynomial operator-(ParamPolynomial a, const ParamPolynomial& b) { return a -= b; }
    friend ParamPolynomial operator-(ParamPolynomial a) { return a *= Scalar(-1); }
    friend ParamPolynomial operator*(const Scalar& s, ParamPolynomial a) { return a *= s; }
    friend ParamPolynomial operator*(const ParamPolynomial& a, const ParamPolynomial& b) {
        a.check(b);
        ParamPolynomial out(a.nparams_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e = ea;
                for (std::size_t k = 0; k < e.size(); ++k)
                    e[k] += eb[k];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }
    friend bool operator==(const ParamPolynomial& a, const ParamPolynomial& b) {
        return a.nparams_ == b.nparams_ && a.terms_ == b.terms_;
    }

    /// Text with parameters named l1..lp, e.g. "-l1^2+1".
    std::string str() const {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            std::string mon;
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (!e[k])
                    continue;
                if (!mon.empty())
                    mon += '*';
                mon += "l" + std::to_string(k + 1);
                if (e[k] != 1)
                    mon += '^' + std::to_string(e[k]);
            }
            std::string coef = c.is_real() ? c.str() : "(" + c.str() + ")";
            if (!out.empty() && coef[0] != '-')
                out += '+';
            if (mon.empty())
                out += coef;
            else if (c.is_one())
                out += mon;
            else if (c == Scalar(-1))
                out += "-" + mon;
            else
                out += coef + "*" + mon;
        }
        return out;
    }

private:
    static int total(const Exponents& e) {
        int s = 0;
        for (int x : e)
            s += x;
        return s;
    }
    void check(const ParamPolynomial& o) const {
        if (o.nparams_ != nparams_)
            throw Error(ErrorKind::DegreeMismatch, "parameter count mismatch");
    }

    std::size_t nparams_;
    TermMap terms_;
};

} // namespace waring
