#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "padiclog/padic.hpp"

namespace padiclog {

/// Dense polynomial with p-adic coefficients; index j holds the coefficient
/// of X^j. Trailing exact zeros are dropped, inexact zeros are kept so that
/// their precision survives into later zero tests.
class Poly {
public:
    Poly() = default;
    explicit Poly(ContextPtr ctx) : ctx_(std::move(ctx)) {}
    Poly(ContextPtr ctx, std::vector<PadicScalar> coeffs);

    static Poly constant(const PadicScalar& c);
    static Poly from_integers(ContextPtr ctx, const std::vector<mpz_class>& coeffs);
    static Poly from_rationals(ContextPtr ctx, const std::vector<mpq_class>& coeffs);
    static Poly monomial(ContextPtr ctx, std::size_t degree, const PadicScalar& c);

    const ContextPtr& context() const noexcept { return ctx_; }
    const std::vector<PadicScalar>& coeffs() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    PadicScalar coeff(std::size_t j) const;

    /// Index of the highest stored coefficient, -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    /// Index of the highest coefficient that is a nonzero value, -1 if none.
    long effective_degree() const;
    bool is_exact_zero() const noexcept { return coeffs_.empty(); }

    /// Smallest coefficient valuation (kInfinity when every coefficient is zero).
    long min_valuation() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const PadicScalar& s, const Poly& a);
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    /// Representation equality, coefficientwise.
    friend bool operator==(const Poly& a, const Poly& b);

    /// f mod X^n.
    Poly truncated(std::size_t n) const;
    /// Coefficient vector padded (with exact zeros) or cut to length n.
    std::vector<PadicScalar> padded(std::size_t n) const;

    /// f(g) as an exact polynomial.
    Poly compose(const Poly& g) const;

private:
    void trim();

    ContextPtr ctx_;
    std::vector<PadicScalar> coeffs_;
};

/// Value zero test with three-valued semantics over every coefficient.
Comparison compare_to_zero(const Poly& f);
Comparison compare(const Poly& a, const Poly& b);

/// Phi_{p^n}(1+X) = sum_{i<p} (1+X)^(i p^(n-1)); n >= 1.
Poly phi_cyclo(const ContextPtr& ctx, int n);
/// omega_n(X) = (1+X)^(p^n) - 1; n >= 0.
Poly omega(const ContextPtr& ctx, int n);

struct DivResult {
    Poly quotient;
    Poly remainder;
};

/// f = q g + r with deg r < deg g. The top stored coefficient of g is the
/// pivot; PrecisionLoss when it is indistinguishable from zero.
DivResult divide_exact(const Poly& f, const Poly& g);

PadicScalar eval_at_zero(const Poly& f);

struct BlockValuation {
    int block;          // 0 for degree 0, k >= 1 for degrees [p^(k-1), p^k)
    long min_valuation; // kInfinity if the block is all zero
};

/// Minimum coefficient valuation in each p-power degree block.
std::vector<BlockValuation> coefficient_valuation_profile(const Poly& f);

/// Element of Lambda_n = Z_p[X]/omega_n in its reduced representative.
class LambdaN {
public:
    LambdaN() = default;
    LambdaN(Poly rep, int level);

    static LambdaN zero(ContextPtr ctx, int level) { return LambdaN(Poly(std::move(ctx)), level); }

    const Poly& rep() const noexcept { return rep_; }
    int level() const noexcept { return level_; }
    const ContextPtr& context() const noexcept { return rep_.context(); }

    friend LambdaN operator+(const LambdaN& a, const LambdaN& b);
    friend LambdaN operator-(const LambdaN& a, const LambdaN& b);
    friend LambdaN operator*(const LambdaN& a, const LambdaN& b);
    LambdaN operator-() const { return LambdaN(-rep_, level_); }

    friend bool operator==(const LambdaN& a, const LambdaN& b) {
        return a.level_ == b.level_ && a.rep_ == b.rep_;
    }

private:
    Poly rep_;
    int level_ = 0;
};

Poly reduce_mod_omega_poly(const Poly& f, int n);
LambdaN reduce_mod_omega(const Poly& f, int n);

/// Truncated power series: coefficients known modulo X^N.
class Series {
public:
    Series() = default;
    Series(Poly poly, std::size_t trunc);

    static Series constant(const PadicScalar& c, std::size_t trunc) { return Series(Poly::constant(c), trunc); }

    const Poly& poly() const noexcept { return poly_; }
    std::size_t trunc() const noexcept { return trunc_; }
    const ContextPtr& context() const noexcept { return poly_.context(); }
    PadicScalar coeff(std::size_t j) const { return poly_.coeff(j); }

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(const PadicScalar& s, const Series& a);
    Series operator-() const { return Series(-poly_, trunc_); }

    friend bool operator==(const Series& a, const Series& b) { return a.trunc_ == b.trunc_ && a.poly_ == b.poly_; }

    /// Multiplicative inverse; the constant term must be a nonzero value.
    Series inverse() const;
    /// f(g) mod X^N; g must have zero constant term.
    Series compose(const Series& g) const;

private:
    Poly poly_;
    std::size_t trunc_ = 0;
};

Comparison compare_to_zero(const Series& f);

} // namespace padiclog
