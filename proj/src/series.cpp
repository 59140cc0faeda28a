#include "padiclog/series.hpp"

#include <algorithm>

namespace padiclog {

namespace {

const ContextPtr& pick(const ContextPtr& a, const ContextPtr& b) { return a ? a : b; }

Comparison combine(Comparison acc, Comparison next) {
    if (acc == Comparison::Unequal || next == Comparison::Unequal) return Comparison::Unequal;
    if (acc == Comparison::Indistinguishable || next == Comparison::Indistinguishable)
        return Comparison::Indistinguishable;
    return Comparison::Equal;
}

mpz_class binomial(const mpz_class& n, unsigned long k) {
    mpz_class r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

} // namespace

Poly::Poly(ContextPtr ctx, std::vector<PadicScalar> coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
    trim();
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_exact_zero()) coeffs_.pop_back();
}

Poly Poly::constant(const PadicScalar& c) { return Poly(c.context(), {c}); }

Poly Poly::from_integers(ContextPtr ctx, const std::vector<mpz_class>& coeffs) {
    std::vector<PadicScalar> cs;
    cs.reserve(coeffs.size());
    for (const auto& c : coeffs) cs.push_back(PadicScalar::from_integer(ctx, c));
    return Poly(std::move(ctx), std::move(cs));
}

Poly Poly::from_rationals(ContextPtr ctx, const std::vector<mpq_class>& coeffs) {
    std::vector<PadicScalar> cs;
    cs.reserve(coeffs.size());
    for (const auto& c : coeffs) cs.push_back(PadicScalar::from_rational(ctx, c));
    return Poly(std::move(ctx), std::move(cs));
}

Poly Poly::monomial(ContextPtr ctx, std::size_t degree, const PadicScalar& c) {
    std::vector<PadicScalar> cs(degree + 1, PadicScalar::zero(ctx));
    cs[degree] = c;
    return Poly(std::move(ctx), std::move(cs));
}

PadicScalar Poly::coeff(std::size_t j) const {
    if (j < coeffs_.size()) return coeffs_[j];
    return PadicScalar::zero(ctx_);
}

long Poly::effective_degree() const {
    for (long j = degree(); j >= 0; --j)
        if (!coeffs_[static_cast<std::size_t>(j)].is_zero()) return j;
    return -1;
}

long Poly::min_valuation() const {
    long m = PadicScalar::kInfinity;
    for (const auto& c : coeffs_) m = std::min(m, c.valuation());
    return m;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    const std::size_t n = std::max(a.size(), b.size());
    std::vector<PadicScalar> cs;
    cs.reserve(n);
    const ContextPtr& ctx = pick(a.ctx_, b.ctx_);
    for (std::size_t j = 0; j < n; ++j) {
        if (j >= a.size()) cs.push_back(b.coeffs_[j]);
        else if (j >= b.size()) cs.push_back(a.coeffs_[j]);
        else cs.push_back(a.coeffs_[j] + b.coeffs_[j]);
    }
    return Poly(ctx, std::move(cs));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    const ContextPtr& ctx = pick(a.ctx_, b.ctx_);
    if (a.coeffs_.empty() || b.coeffs_.empty()) return Poly(ctx);
    std::vector<PadicScalar> cs(a.size() + b.size() - 1, PadicScalar::zero(ctx));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.coeffs_[i].is_exact_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b.coeffs_[j].is_exact_zero()) continue;
            cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Poly(ctx, std::move(cs));
}

Poly operator*(const PadicScalar& s, const Poly& a) {
    Poly r(pick(a.ctx_, s.context()));
    r.coeffs_.reserve(a.size());
    for (const auto& c : a.coeffs_) r.coeffs_.push_back(s * c);
    r.trim();
    return r;
}

bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

Poly Poly::truncated(std::size_t n) const {
    if (coeffs_.size() <= n) return *this;
    return Poly(ctx_, std::vector<PadicScalar>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n)));
}

std::vector<PadicScalar> Poly::padded(std::size_t n) const {
    std::vector<PadicScalar> out(n, PadicScalar::zero(ctx_));
    for (std::size_t j = 0; j < std::min(n, coeffs_.size()); ++j) out[j] = coeffs_[j];
    return out;
}

Poly Poly::compose(const Poly& g) const {
    Poly result(pick(ctx_, g.ctx_));
    for (long j = degree(); j >= 0; --j) result = result * g + Poly::constant(coeffs_[static_cast<std::size_t>(j)]);
    return result;
}

Comparison compare_to_zero(const Poly& f) {
    Comparison acc = Comparison::Equal;
    for (const auto& c : f.coeffs()) acc = combine(acc, compare_to_zero(c));
    return acc;
}

Comparison compare(const Poly& a, const Poly& b) { return compare_to_zero(a - b); }

Poly phi_cyclo(const ContextPtr& ctx, int n) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "phi_cyclo needs n >= 1");
    const long p = ctx->p();
    mpz_class step;
    mpz_ui_pow_ui(step.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n - 1));
    const mpz_class top = step * (p - 1);
    const unsigned long deg = top.get_ui();
    std::vector<mpz_class> cs(deg + 1, 0);
    for (long i = 0; i < p; ++i) {
        const mpz_class e = step * i;
        for (unsigned long j = 0; j <= e.get_ui(); ++j) cs[j] += binomial(e, j);
    }
    return Poly::from_integers(ctx, cs);
}

Poly omega(const ContextPtr& ctx, int n) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "omega needs n >= 0");
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(ctx->p()), static_cast<unsigned long>(n));
    const unsigned long deg = e.get_ui();
    std::vector<mpz_class> cs(deg + 1, 0);
    for (unsigned long j = 1; j <= deg; ++j) cs[j] = binomial(e, j);
    return Poly::from_integers(ctx, cs);
}

DivResult divide_exact(const Poly& f, const Poly& g) {
    if (g.is_exact_zero()) fail(ErrorKind::DivisionByZero, "division by the zero polynomial");
    const ContextPtr& ctx = f.context() ? f.context() : g.context();
    const std::size_t dg = static_cast<std::size_t>(g.degree());
    const PadicScalar& lead = g.coeffs()[dg];
    if (lead.is_zero())
        fail(ErrorKind::PrecisionLoss, "leading coefficient of the divisor is indistinguishable from zero");
    const PadicScalar lead_inv = lead.inv();
    std::vector<PadicScalar> r = f.coeffs();
    if (r.size() <= dg) return {Poly(ctx), f};
    std::vector<PadicScalar> q(r.size() - dg, PadicScalar::zero(ctx));
    for (std::size_t i = r.size(); i-- > dg;) {
        const PadicScalar c = r[i] * lead_inv;
        q[i - dg] = c;
        if (c.is_exact_zero()) continue;
        for (std::size_t j = 0; j <= dg; ++j) {
            if (g.coeffs()[j].is_exact_zero()) continue;
            r[i - dg + j] -= c * g.coeffs()[j];
        }
    }
    r.resize(dg);
    return {Poly(ctx, std::move(q)), Poly(ctx, std::move(r))};
}

PadicScalar eval_at_zero(const Poly& f) { return f.coeff(0); }

std::vector<BlockValuation> coefficient_valuation_profile(const Poly& f) {
    std::vector<BlockValuation> out;
    if (f.size() == 0) return {{0, PadicScalar::kInfinity}};
    const long p = f.context()->p();
    std::size_t lo = 0, hi = 1;
    int block = 0;
    while (lo < f.size()) {
        long m = PadicScalar::kInfinity;
        for (std::size_t j = lo; j < std::min(hi, f.size()); ++j) m = std::min(m, f.coeffs()[j].valuation());
        out.push_back({block, m});
        lo = hi;
        hi = (block == 0) ? static_cast<std::size_t>(p) : hi * static_cast<std::size_t>(p);
        ++block;
    }
    return out;
}

Poly reduce_mod_omega_poly(const Poly& f, int n) {
    const ContextPtr& ctx = f.context();
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(ctx->p()), static_cast<unsigned long>(n));
    if (f.size() <= e.get_ui()) return f;
    return divide_exact(f, omega(ctx, n)).remainder;
}

LambdaN::LambdaN(Poly rep, int level) : rep_(rep.context() ? reduce_mod_omega_poly(rep, level) : rep), level_(level) {
    if (level < 0) fail(ErrorKind::InvalidArgument, "Lambda_n level must be >= 0");
}

LambdaN reduce_mod_omega(const Poly& f, int n) { return LambdaN(f, n); }

namespace {
void require_same_level(const LambdaN& a, const LambdaN& b) {
    if (a.level() != b.level()) fail(ErrorKind::InvalidArgument, "Lambda_n elements at different levels");
}
} // namespace

LambdaN operator+(const LambdaN& a, const LambdaN& b) {
    require_same_level(a, b);
    return LambdaN(a.rep_ + b.rep_, a.level_);
}

LambdaN operator-(const LambdaN& a, const LambdaN& b) {
    require_same_level(a, b);
    return LambdaN(a.rep_ - b.rep_, a.level_);
}

LambdaN operator*(const LambdaN& a, const LambdaN& b) {
    require_same_level(a, b);
    return LambdaN(a.rep_ * b.rep_, a.level_);
}

Series::Series(Poly poly, std::size_t trunc) : poly_(poly.truncated(trunc)), trunc_(trunc) {}

Series operator+(const Series& a, const Series& b) {
    return Series(a.poly_ + b.poly_, std::min(a.trunc_, b.trunc_));
}

Series operator-(const Series& a, const Series& b) {
    return Series(a.poly_ - b.poly_, std::min(a.trunc_, b.trunc_));
}

Series operator*(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.trunc_, b.trunc_);
    const ContextPtr& ctx = pick(a.context(), b.context());
    const auto& x = a.poly_.coeffs();
    const auto& y = b.poly_.coeffs();
    if (x.empty() || y.empty()) return Series(Poly(ctx), n);
    std::vector<PadicScalar> cs(std::min(n, x.size() + y.size() - 1), PadicScalar::zero(ctx));
    for (std::size_t i = 0; i < x.size() && i < n; ++i) {
        if (x[i].is_exact_zero()) continue;
        for (std::size_t j = 0; j < y.size() && i + j < n; ++j) {
            if (y[j].is_exact_zero()) continue;
            cs[i + j] += x[i] * y[j];
        }
    }
    return Series(Poly(ctx, std::move(cs)), n);
}

Series operator*(const PadicScalar& s, const Series& a) { return Series(s * a.poly_, a.trunc_); }

Series Series::inverse() const {
    const PadicScalar a0 = coeff(0);
    if (a0.is_zero()) fail(ErrorKind::DivisionByZero, "series with vanishing constant term is not invertible");
    const PadicScalar b0 = a0.inv();
    std::vector<PadicScalar> b(trunc_, PadicScalar::zero(context()));
    if (trunc_ == 0) return *this;
    b[0] = b0;
    for (std::size_t k = 1; k < trunc_; ++k) {
        PadicScalar acc = PadicScalar::zero(context());
        for (std::size_t j = 1; j <= k && j < poly_.size(); ++j) {
            if (poly_.coeffs()[j].is_exact_zero()) continue;
            acc += poly_.coeffs()[j] * b[k - j];
        }
        b[k] = -(b0 * acc);
    }
    return Series(Poly(context(), std::move(b)), trunc_);
}

Series Series::compose(const Series& g) const {
    if (!g.coeff(0).is_zero()) fail(ErrorKind::InvalidArgument, "series composition needs g(0) = 0");
    const std::size_t n = std::min(trunc_, g.trunc_);
    Series result(Poly(pick(context(), g.context())), n);
    for (long j = std::min<long>(poly_.degree(), static_cast<long>(n) - 1); j >= 0; --j)
        result = result * g + Series::constant(poly_.coeffs()[static_cast<std::size_t>(j)], n);
    return result;
}

Comparison compare_to_zero(const Series& f) { return compare_to_zero(f.poly()); }

} // namespace padiclog
