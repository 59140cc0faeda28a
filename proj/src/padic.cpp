#include "padiclog/padic.hpp"

#include <algorithm>
#include <regex>

namespace padiclog {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PadicContext::PadicContext(long p, int rel_prec, int denom_budget, int cert_floor)
    : p_(p), rel_prec_(rel_prec), denom_budget_(denom_budget), cert_floor_(cert_floor) {
    const long cap = 2L * rel_prec + 2L * denom_budget + 64;
    powers_.reserve(static_cast<std::size_t>(cap) + 1);
    mpz_class x = 1;
    for (long k = 0; k <= cap; ++k) {
        powers_.push_back(x);
        x *= p;
    }
}

ContextPtr PadicContext::make(long p, int rel_prec, int denom_budget, int cert_floor) {
    if (p <= 2 || !is_prime(p)) fail(ErrorKind::InvalidArgument, "p must be an odd prime, got " + std::to_string(p));
    if (rel_prec < 1) fail(ErrorKind::InvalidArgument, "rel_prec must be >= 1");
    if (denom_budget < 0) fail(ErrorKind::InvalidArgument, "denom_budget must be >= 0");
    if (cert_floor < 0) cert_floor = std::max(1, (rel_prec + 1) / 2);
    return ContextPtr(new PadicContext(p, rel_prec, denom_budget, cert_floor));
}

ContextPtr PadicContext::with_precision(int rel_prec, int denom_budget) const {
    return make(p_, rel_prec, denom_budget);
}

const mpz_class& PadicContext::pow(long k) const {
    if (k < 0 || k > power_cap())
        fail(ErrorKind::PrecisionExhausted, "power p^" + std::to_string(k) + " outside cached range");
    return powers_[static_cast<std::size_t>(k)];
}

std::pair<long, mpz_class> valuation_of_integer(long p, const mpz_class& n) {
    if (n == 0) return {PadicScalar::kInfinity, mpz_class(0)};
    mpz_class u = n;
    long v = 0;
    const mpz_class pp = p;
    while (mpz_divisible_p(u.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), pp.get_mpz_t());
        ++v;
    }
    return {v, u};
}

namespace {

mpz_class mod_positive(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

const ContextPtr& pick_context(const PadicScalar& a, const PadicScalar& b) {
    if (a.context() && b.context() && a.context() != b.context() && a.context()->p() != b.context()->p())
        fail(ErrorKind::InvalidArgument, "mixing scalars over different primes");
    return a.context() ? a.context() : b.context();
}

} // namespace

long PadicScalar::p() const {
    if (!ctx_) fail(ErrorKind::InvalidArgument, "scalar without context");
    return ctx_->p();
}

long PadicScalar::abs_prec() const noexcept {
    if (is_zero()) return zero_abs_;
    return val_ + prec_;
}

void PadicScalar::check_budget(const ContextPtr& ctx, long v) {
    if (v != kInfinity && v < -static_cast<long>(ctx->denom_budget()))
        fail(ErrorKind::DenominatorBudgetExceeded,
             "valuation " + std::to_string(v) + " below budget -" + std::to_string(ctx->denom_budget()));
}

PadicScalar PadicScalar::zero(ContextPtr ctx) { return PadicScalar(std::move(ctx), kInfinity, 0, 0, kInfinity); }

PadicScalar PadicScalar::zero_at(ContextPtr ctx, long abs_prec) {
    return PadicScalar(std::move(ctx), kInfinity, 0, 0, abs_prec);
}

// raw is p^v * raw known modulo p^abs_prec (abs_prec finite).
PadicScalar PadicScalar::normalized(ContextPtr ctx, long v, const mpz_class& raw, long abs_prec) {
    if (abs_prec <= v) return zero_at(std::move(ctx), abs_prec);
    const long width = abs_prec - v;
    mpz_class r = mod_positive(raw, ctx->pow(width));
    if (r == 0) return zero_at(std::move(ctx), abs_prec);
    auto [shift, u] = valuation_of_integer(ctx->p(), r);
    const long nv = v + shift;
    const int k = static_cast<int>(abs_prec - nv);
    check_budget(ctx, nv);
    return PadicScalar(std::move(ctx), nv, std::move(u), k, kInfinity);
}

PadicScalar PadicScalar::from_integer(ContextPtr ctx, const mpz_class& n) {
    if (n == 0) return zero(std::move(ctx));
    auto [v, u] = valuation_of_integer(ctx->p(), n);
    const int k = ctx->rel_prec();
    check_budget(ctx, v);
    mpz_class unit = mod_positive(u, ctx->pow(k));
    return PadicScalar(std::move(ctx), v, std::move(unit), k, kInfinity);
}

PadicScalar PadicScalar::from_rational(ContextPtr ctx, const mpq_class& q) {
    if (q == 0) return zero(std::move(ctx));
    auto [vn, un] = valuation_of_integer(ctx->p(), q.get_num());
    auto [vd, ud] = valuation_of_integer(ctx->p(), q.get_den());
    const long v = vn - vd;
    check_budget(ctx, v);
    const int k = ctx->rel_prec();
    const mpz_class& m = ctx->pow(k);
    mpz_class inv_d;
    mpz_invert(inv_d.get_mpz_t(), ud.get_mpz_t(), m.get_mpz_t());
    mpz_class u = mod_positive(un * inv_d, m);
    return PadicScalar(std::move(ctx), v, std::move(u), k, kInfinity);
}

PadicScalar PadicScalar::from_parts(ContextPtr ctx, long valuation, const mpz_class& unit, int rel_prec) {
    if (rel_prec < 1) fail(ErrorKind::InvalidArgument, "relative precision must be positive");
    if (rel_prec > ctx->rel_prec()) rel_prec = ctx->rel_prec();
    mpz_class u = mod_positive(unit, ctx->pow(rel_prec));
    if (mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(ctx->p())))
        fail(ErrorKind::InvalidArgument, "unit part divisible by p");
    check_budget(ctx, valuation);
    return PadicScalar(std::move(ctx), valuation, std::move(u), rel_prec, kInfinity);
}

PadicScalar PadicScalar::operator-() const {
    if (is_zero()) return *this;
    mpz_class u = ctx_->pow(prec_) - unit_;
    return PadicScalar(ctx_, val_, std::move(u), prec_, kInfinity);
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
    if (a.is_exact_zero()) return b.ctx_ ? b : PadicScalar::zero(a.ctx_);
    if (b.is_exact_zero()) return a;
    const ContextPtr& ctx = pick_context(a, b);
    const long abs = std::min(a.abs_prec(), b.abs_prec());
    if (a.is_zero() && b.is_zero()) return PadicScalar::zero_at(ctx, abs);
    if (a.is_zero()) return PadicScalar::normalized(ctx, b.val_, b.unit_, abs);
    if (b.is_zero()) return PadicScalar::normalized(ctx, a.val_, a.unit_, abs);
    const long vmin = std::min(a.val_, b.val_);
    if (abs <= vmin) return PadicScalar::zero_at(ctx, abs);
    const long width = abs - vmin;
    mpz_class s = 0;
    for (const PadicScalar* x : {&a, &b}) {
        const long shift = x->val_ - vmin;
        if (shift < width) s += x->unit_ * ctx->pow(shift);
    }
    return PadicScalar::normalized(ctx, vmin, s, abs);
}

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
    const ContextPtr& ctx = pick_context(a, b);
    if (a.is_exact_zero() || b.is_exact_zero()) return PadicScalar::zero(ctx);
    if (a.is_zero() || b.is_zero()) {
        // |ab| <= p^-(A + v) where A is the zero's bound and v the other valuation.
        long abs;
        if (a.is_zero() && b.is_zero()) abs = a.zero_abs_ + b.zero_abs_;
        else if (a.is_zero()) abs = a.zero_abs_ + b.val_;
        else abs = b.zero_abs_ + a.val_;
        return PadicScalar::zero_at(ctx, abs);
    }
    const long v = a.val_ + b.val_;
    PadicScalar::check_budget(ctx, v);
    const int k = std::min(a.prec_, b.prec_);
    mpz_class u = mod_positive(a.unit_ * b.unit_, ctx->pow(k));
    return PadicScalar(ctx, v, std::move(u), k, PadicScalar::kInfinity);
}

PadicScalar PadicScalar::inv() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of a value indistinguishable from zero");
    check_budget(ctx_, -val_);
    mpz_class u;
    mpz_invert(u.get_mpz_t(), unit_.get_mpz_t(), ctx_->pow(prec_).get_mpz_t());
    return PadicScalar(ctx_, -val_, std::move(u), prec_, kInfinity);
}

PadicScalar PadicScalar::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    PadicScalar result = one(ctx_);
    PadicScalar base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

bool operator==(const PadicScalar& a, const PadicScalar& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero() && a.zero_abs_ == b.zero_abs_;
    return a.val_ == b.val_ && a.prec_ == b.prec_ && a.unit_ == b.unit_ && a.p() == b.p();
}

mpq_class PadicScalar::to_rational() const {
    if (is_zero()) return 0;
    if (val_ >= 0) return mpq_class(unit_ * ctx_->pow(val_));
    mpq_class q(unit_, ctx_->pow(-val_));
    q.canonicalize();
    return q;
}

PadicScalar PadicScalar::truncated(int k) const {
    if (is_zero() || k >= prec_) return *this;
    if (k < 1) return zero_at(ctx_, val_ + std::max(k, 0));
    mpz_class u = mod_positive(unit_, ctx_->pow(k));
    return PadicScalar(ctx_, val_, std::move(u), k, kInfinity);
}

std::string PadicScalar::to_string() const {
    if (is_exact_zero()) return "0";
    if (is_zero()) return "0 (abs " + std::to_string(zero_abs_) + ")";
    return std::to_string(p()) + "^" + std::to_string(val_) + " * " + unit_.get_str() + " (prec " +
           std::to_string(prec_) + ")";
}

PadicScalar PadicScalar::parse(ContextPtr ctx, const std::string& text) {
    static const std::regex nonzero(R"(^\s*(\d+)\^(-?\d+)\s*\*\s*(\d+)\s*\(prec\s+(\d+)\)\s*$)");
    static const std::regex inexact_zero(R"(^\s*0\s*\(abs\s+(-?\d+)\)\s*$)");
    static const std::regex exact_zero(R"(^\s*0\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, nonzero)) {
        if (std::stol(m[1]) != ctx->p())
            fail(ErrorKind::ParseError, "scalar '" + text + "' is over a different prime");
        return from_parts(ctx, std::stol(m[2]), mpz_class(m[3].str()), std::stoi(m[4]));
    }
    if (std::regex_match(text, m, inexact_zero)) return zero_at(ctx, std::stol(m[1]));
    if (std::regex_match(text, m, exact_zero)) return zero(ctx);
    fail(ErrorKind::ParseError, "cannot parse scalar '" + text + "'");
}

Comparison compare_to_zero(const PadicScalar& a) {
    if (!a.is_zero()) return Comparison::Unequal;
    if (a.is_exact_zero()) return Comparison::Equal;
    const long floor = a.context() ? a.context()->cert_floor() : 1;
    return a.abs_prec() >= floor ? Comparison::Equal : Comparison::Indistinguishable;
}

Comparison compare(const PadicScalar& a, const PadicScalar& b) { return compare_to_zero(a - b); }

} // namespace padiclog
