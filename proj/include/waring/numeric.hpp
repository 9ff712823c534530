#pragma once

// Levenberg-Marquardt search for numeric power-sum decompositions
// F ~ sum_i l_i^d over C. Produces upper-bound witnesses only: failing to
// find a decomposition says nothing about the rank.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "waring/oracles.hpp"
#include "waring/poly.hpp"

namespace waring {

/// Residual r(x) = coeffs(sum_i l_i^d) - coeffs(F) in the monomial basis,
/// with the complex entries of the l_i split into real unknowns.
/// Layout: x[2*(i*n + j)] = Re l_ij, x[2*(i*n + j) + 1] = Im l_ij;
/// r[2k] = Re, r[2k+1] = Im of the k-th monomial (graded-lex).
class DecompositionObjective {
public:
    DecompositionObjective(const Form& f, std::size_t terms)
        : n_(f.num_vars()), d_(f.degree()), r_(terms), monos_(enumerate_monomials(f.num_vars(), f.degree())) {
        const double dfact = std::tgamma(d_ + 1.0);
        for (const auto& m : monos_) {
            double mult = dfact;
            for (int e : m.exponents)
                mult /= std::tgamma(e + 1.0);
            mult_.push_back(mult);
            target_.push_back(f.coefficient(m).to_complex());
        }
    }

    std::size_t num_unknowns() const { return 2 * r_ * n_; }
    std::size_t num_residuals() const { return 2 * monos_.size(); }
    std::size_t num_terms() const { return r_; }
    std::size_t num_vars() const { return n_; }

    Eigen::VectorXd residual(const Eigen::VectorXd& x) const {
        Eigen::VectorXd r(num_residuals());
        auto pw = powers(x);
        for (std::size_t k = 0; k < monos_.size(); ++k) {
            std::complex<double> model{0.0, 0.0};
            for (std::size_t i = 0; i < r_; ++i)
                model += term(pw, i, k, n_);
            model = model * mult_[k] - target_[k];
            r[2 * k] = model.real();
            r[2 * k + 1] = model.imag();
        }
        return r;
    }

    /// Each model coefficient is holomorphic in l_ij with derivative g, so
    /// d/dRe = g and d/dIm = i*g.
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(num_residuals(), num_unknowns());
        auto pw = powers(x);
        for (std::size_t k = 0; k < monos_.size(); ++k) {
            const auto& e = monos_[k].exponents;
            for (std::size_t i = 0; i < r_; ++i) {
                for (std::size_t j = 0; j < n_; ++j) {
                    if (e[j] == 0)
                        continue;
                    std::complex<double> g = mult_[k] * static_cast<double>(e[j]) * pw[i][j][e[j] - 1];
                    for (std::size_t l = 0; l < n_; ++l)
                        if (l != j)
                            g *= pw[i][l][e[l]];
                    const std::size_t col = 2 * (i * n_ + j);
                    jac(2 * k, col) = g.real();
                    jac(2 * k + 1, col) = g.imag();
                    jac(2 * k, col + 1) = -g.imag();
                    jac(2 * k + 1, col + 1) = g.real();
                }
            }
        }
        return jac;
    }

    /// 0.5 * |r(x)|^2
    double cost(const Eigen::VectorXd& x) const { return 0.5 * residual(x).squaredNorm(); }

    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const { return jacobian(x).transpose() * residual(x); }

    std::vector<NumericTerm> terms(const Eigen::VectorXd& x) const {
        std::vector<NumericTerm> out(r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                out[i].form.emplace_back(x[2 * (i * n_ + j)], x[2 * (i * n_ + j) + 1]);
        return out;
    }

    double target_norm() const {
        double s = 0.0;
        for (const auto& t : target_)
            s += std::norm(t);
        return std::sqrt(s);
    }

private:
    using PowerTable = std::vector<std::vector<std::vector<std::complex<double>>>>;

    PowerTable powers(const Eigen::VectorXd& x) const {
        PowerTable pw(r_, std::vector<std::vector<std::complex<double>>>(n_));
        for (std::size_t i = 0; i < r_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                std::complex<double> z{x[2 * (i * n_ + j)], x[2 * (i * n_ + j) + 1]};
                auto& row = pw[i][j];
                row.resize(static_cast<std::size_t>(d_) + 1);
                row[0] = 1.0;
                for (int e = 1; e <= d_; ++e)
                    row[e] = row[e - 1] * z;
            }
        }
        return pw;
    }

    std::complex<double> term(const PowerTable& pw, std::size_t i, std::size_t k, std::size_t n) const {
        std::complex<double> v{1.0, 0.0};
        for (std::size_t j = 0; j < n; ++j)
            v *= pw[i][j][monos_[k].exponents[j]];
        return v;
    }

    std::size_t n_;
    int d_;
    std::size_t r_;
    std::vector<Monomial> monos_;
    std::vector<double> mult_;
    std::vector<std::complex<double>> target_;
};

struct NumericOptions {
    std::uint64_t seed = 0;
    int restarts = 32;
    double tol = 1e-10;
    int max_iterations = 2000;
};

struct NumericResult {
    std::optional<DecompositionWitness> witness;
    double best_residual = INFINITY;
    int restarts_used = 0;
};

namespace detail {

/// Per-restart seed derived from the master seed.
inline std::uint64_t restart_seed(std::uint64_t master, int restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32U),
                      static_cast<std::uint32_t>(restart), 0x5eedU};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32U) | words[1];
}

/// One damped Gauss-Newton run (Nielsen's damping update); returns the final
/// residual norm and leaves the iterate in x.
inline double levenberg_marquardt(const DecompositionObjective& obj, Eigen::VectorXd& x, double tol, int max_iter) {
    Eigen::VectorXd r = obj.residual(x);
    double cost = 0.5 * r.squaredNorm();
    Eigen::MatrixXd jac = obj.jacobian(x);
    Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::VectorXd g = jac.transpose() * r;
    double mu = 1e-3 * std::max(jtj.diagonal().maxCoeff(), 1e-12);
    double nu = 2.0;
    for (int it = 0; it < max_iter; ++it) {
        if (std::sqrt(2.0 * cost) <= tol)
            break;
        if (g.lpNorm<Eigen::Infinity>() < 1e-30)
            break;
        Eigen::MatrixXd a = jtj;
        a.diagonal().array() += mu;
        Eigen::VectorXd h = a.ldlt().solve(-g);
        if (!h.allFinite())
            break;
        if (h.norm() <= 1e-15 * (x.norm() + 1e-15))
            break;
        Eigen::VectorXd xn = x + h;
        Eigen::VectorXd rn = obj.residual(xn);
        double cn = 0.5 * rn.squaredNorm();
        double predicted = 0.5 * h.dot(mu * h - g);
        double rho = predicted > 0 ? (cost - cn) / predicted : -1.0;
        if (rho > 0 && std::isfinite(cn)) {
            x = std::move(xn);
            r = std::move(rn);
            cost = cn;
            jac = obj.jacobian(x);
            jtj = jac.transpose() * jac;
            g = jac.transpose() * r;
            double t = 2.0 * rho - 1.0;
            mu *= std::max(1.0 / 3.0, 1.0 - t * t * t);
            nu = 2.0;
        } else {
            mu *= nu;
            nu *= 2.0;
            if (!std::isfinite(mu) || mu > 1e30)
                break;
        }
    }
    return std::sqrt(2.0 * cost);
}

} // namespace detail

/// Random-restart search for F ~ sum_{i<=r} l_i^d with residual <= tol.
/// Restarts use seeds derived from options.seed and run in order; the first
/// success is returned.
inline NumericResult numeric_decompose(const Form& f, std::size_t r, const NumericOptions& opt = {}) {
    if (r < 1)
        throw Error(ErrorKind::InvalidArgument, "number of terms must be at least 1");
    detail::require_nonzero(f);
    DecompositionObjective obj(f, r);
    const double scale = std::pow(std::max(obj.target_norm(), 1e-12) / static_cast<double>(r), 1.0 / f.degree()) /
                         std::sqrt(static_cast<double>(f.num_vars()));
    NumericResult res;
    for (int k = 0; k < opt.restarts; ++k) {
        std::mt19937_64 rng(detail::restart_seed(opt.seed, k));
        std::normal_distribution<double> normal(0.0, scale);
        Eigen::VectorXd x(static_cast<Eigen::Index>(obj.num_unknowns()));
        for (Eigen::Index j = 0; j < x.size(); ++j)
            x[j] = normal(rng);
        double resid = detail::levenberg_marquardt(obj, x, opt.tol, opt.max_iterations);
        res.restarts_used = k + 1;
        if (resid < res.best_residual)
            res.best_residual = resid;
        if (resid <= opt.tol) {
            DecompositionWitness w;
            w.terms = obj.terms(x);
            w.residual = numeric_residual(f, w.numeric_terms());
            res.witness = std::move(w);
            return res;
        }
    }
    return res;
}

} // namespace waring
