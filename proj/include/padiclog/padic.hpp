#pragma once

#include <gmpxx.h>

#include <climits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "padiclog/error.hpp"

namespace padiclog {

class PadicContext;
using ContextPtr = std::shared_ptr<const PadicContext>;

/// Ambient data shared by every scalar of one computation: the odd prime p,
/// the default relative precision (in p-digits) and the denominator budget B,
/// i.e. the most negative valuation any intermediate value may reach.
///
/// `cert_floor` is the absolute precision a value indistinguishable from zero
/// must carry before a verification may call it zero. Below that floor the
/// verdict is "indistinguishable" and checks report Indeterminate.
class PadicContext {
public:
    static ContextPtr make(long p, int rel_prec = 20, int denom_budget = 10, int cert_floor = -1);

    long p() const noexcept { return p_; }
    int rel_prec() const noexcept { return rel_prec_; }
    int denom_budget() const noexcept { return denom_budget_; }
    int cert_floor() const noexcept { return cert_floor_; }

    /// p^k for 0 <= k <= power_cap().
    const mpz_class& pow(long k) const;
    long power_cap() const noexcept { return static_cast<long>(powers_.size()) - 1; }

    /// Same context with a different relative precision / budget.
    ContextPtr with_precision(int rel_prec, int denom_budget) const;

private:
    PadicContext(long p, int rel_prec, int denom_budget, int cert_floor);

    long p_;
    int rel_prec_;
    int denom_budget_;
    int cert_floor_;
    std::vector<mpz_class> powers_;
};

bool is_prime(long n);

/// n = p^v * u with u coprime to p; n = 0 maps to (LONG_MAX, 0).
std::pair<long, mpz_class> valuation_of_integer(long p, const mpz_class& n);

/// A p-adic number p^v * u + O(p^(v+k)), stored in capped-relative form.
///
/// Zero carries an absolute precision instead: it is the class of all
/// values congruent to 0 modulo p^abs. An exact zero (absolute precision
/// infinite) arises only from explicit construction or from multiplying by
/// another exact zero.
class PadicScalar {
public:
    static constexpr long kInfinity = LONG_MAX;

    /// An exact zero without a context; adopts the context of the other
    /// operand in arithmetic. Exists so that containers can be resized.
    PadicScalar() = default;

    static PadicScalar zero(ContextPtr ctx);
    static PadicScalar zero_at(ContextPtr ctx, long abs_prec);
    static PadicScalar one(ContextPtr ctx) { return from_integer(std::move(ctx), 1); }
    static PadicScalar from_integer(ContextPtr ctx, const mpz_class& n);
    static PadicScalar from_integer(ContextPtr ctx, long n) { return from_integer(std::move(ctx), mpz_class(n)); }
    static PadicScalar from_rational(ContextPtr ctx, const mpq_class& q);
    /// Builds p^v * u (prec k). The unit is reduced mod p^k and must be coprime to p.
    static PadicScalar from_parts(ContextPtr ctx, long valuation, const mpz_class& unit, int rel_prec);

    const ContextPtr& context() const noexcept { return ctx_; }
    long p() const;

    long valuation() const noexcept { return val_; }
    const mpz_class& unit() const noexcept { return unit_; }
    /// Relative precision; 0 for zero.
    int rel_prec() const noexcept { return is_zero() ? 0 : prec_; }
    /// v + k for nonzero values, the stored bound for zero, kInfinity for an exact zero.
    long abs_prec() const noexcept;

    bool is_zero() const noexcept { return val_ == kInfinity; }
    bool is_exact_zero() const noexcept { return is_zero() && zero_abs_ == kInfinity; }
    bool is_unit() const noexcept { return val_ == 0; }
    bool is_integral() const noexcept { return val_ >= 0; }

    PadicScalar operator-() const;
    PadicScalar inv() const;
    PadicScalar pow(long e) const;

    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }
    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) { return a * b.inv(); }
    PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
    PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
    PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }

    /// Representation equality (valuation, unit, precision). Use compare() for
    /// value comparison at precision.
    friend bool operator==(const PadicScalar& a, const PadicScalar& b);

    /// The representative p^v * u as an exact rational (0 for zero).
    mpq_class to_rational() const;

    /// Lowers the relative precision to at most k digits.
    PadicScalar truncated(int k) const;

    /// "p^v * u (prec k)", "0 (abs A)" or "0".
    std::string to_string() const;
    static PadicScalar parse(ContextPtr ctx, const std::string& text);

private:
    PadicScalar(ContextPtr ctx, long v, mpz_class u, int k, long zero_abs)
        : ctx_(std::move(ctx)), val_(v), unit_(std::move(u)), prec_(k), zero_abs_(zero_abs) {}

    static PadicScalar normalized(ContextPtr ctx, long v, const mpz_class& raw, long abs_prec);
    static void check_budget(const ContextPtr& ctx, long v);

    ContextPtr ctx_;
    long val_ = kInfinity;
    mpz_class unit_ = 0;
    int prec_ = 0;
    long zero_abs_ = kInfinity;
};

enum class Comparison { Equal, Unequal, Indistinguishable };

/// Three-valued comparison: Equal when a - b is zero to at least the
/// context's certification floor (or exactly), Unequal when a - b is a
/// nonzero value, Indistinguishable otherwise.
Comparison compare(const PadicScalar& a, const PadicScalar& b);

/// Zero test on a single value with the same three-valued semantics.
Comparison compare_to_zero(const PadicScalar& a);

} // namespace padiclog
