#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "waring/error.hpp"

namespace waring {

/// Exact element of Q(i): re + im*i with canonical GMP rationals.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v) {} // NOLINT: implicit from integer literals
    Scalar(int v) : re_(v) {}  // NOLINT
    Scalar(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); } // NOLINT
    Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    Scalar conj() const { return {re_, -im_}; }
    /// |z|^2 as an exact rational.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        if (o.is_real()) {
            re_ *= o.re_;
            im_ *= o.re_;
            return *this;
        }
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class s = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(s);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero())
            throw std::domain_error("Scalar division by zero");
        if (o.is_real()) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        mpq_class n = o.norm();
        *this *= o.conj();
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend Scalar operator-(const Scalar& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar pow(unsigned e) const {
        Scalar result(1), base(*this);
        while (e) {
            if (e & 1U)
                result *= base;
            base *= base;
            e >>= 1U;
        }
        return result;
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    /// Canonical text: "p/q", "r/si", "p/q+r/si", "p/q-r/si"; denominators
    /// of 1 are omitted.
    std::string str() const {
        if (sgn(im_) == 0)
            return re_.get_str();
        std::string out = sgn(re_) == 0 ? "" : re_.get_str();
        if (sgn(im_) > 0 && !out.empty())
            out += '+';
        return out + im_.get_str() + 'i';
    }

    /// Accepts "a", "a+bi", "a-bi", "bi", "i", "-i" with rational a, b.
    static Scalar parse(std::string_view text);

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

namespace detail {

inline mpq_class parse_rational(std::string_view text) {
    auto fail = [&] { throw Error(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'"); };
    if (text.empty())
        fail();
    std::size_t pos = 0;
    if (text[0] == '+' || text[0] == '-')
        pos = 1;
    bool seen_digit = false, seen_slash = false, digit_after_slash = false;
    for (std::size_t k = pos; k < text.size(); ++k) {
        char c = text[k];
        if (c >= '0' && c <= '9') {
            seen_digit = true;
            if (seen_slash)
                digit_after_slash = true;
        } else if (c == '/' && !seen_slash && seen_digit) {
            seen_slash = true;
        } else {
            fail();
        }
    }
    if (!seen_digit || (seen_slash && !digit_after_slash))
        fail();
    std::string s(text[0] == '+' ? text.substr(1) : text);
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        fail();
    if (q.get_den() == 0)
        throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

} // namespace detail

inline Scalar Scalar::parse(std::string_view text) {
    if (text.empty())
        throw Error(ErrorKind::ParseError, "empty coefficient");
    if (text.back() != 'i')
        return Scalar(detail::parse_rational(text));
    std::string_view body = text.substr(0, text.size() - 1);
    // split at the last sign that is not the leading one
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            split = k;
            break;
        }
    }
    auto imag = [](std::string_view s) {
        if (s.empty() || s == "+")
            return mpq_class(1);
        if (s == "-")
            return mpq_class(-1);
        return detail::parse_rational(s);
    };
    if (split == std::string_view::npos)
        return Scalar(mpq_class(0), imag(body));
    return Scalar(detail::parse_rational(body.substr(0, split)), imag(body.substr(split)));
}

} // namespace waring
