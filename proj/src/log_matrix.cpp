#include "padiclog/log_matrix.hpp"

#include <algorithm>

namespace padiclog {

namespace {

PadicScalar scalar(const ContextPtr& ctx, long n) { return PadicScalar::from_integer(ctx, n); }

std::string rat(const mpq_class& q) { return q.get_str(); }

} // namespace

NewtonPolygon newton_polygon(const Poly& f) {
    NewtonPolygon np;
    std::vector<std::pair<long, long>> pts;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!f.coeffs()[i].is_zero()) pts.emplace_back(static_cast<long>(i), f.coeffs()[i].valuation());
    if (pts.empty()) fail(ErrorKind::InvalidArgument, "Newton polygon of a polynomial with no nonzero coefficient");
    std::vector<std::pair<long, long>> hull;
    for (const auto& q : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // Drop b when it lies on or above the segment a-q.
            const long cross = (b.first - a.first) * (q.second - a.second) - (b.second - a.second) * (q.first - a.first);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(q);
    }
    np.vertices = hull;
    // Zero roots (points missing at the left end) have infinite valuation;
    // they are reported with a huge sentinel so range checks fail.
    for (long i = 0; i < hull.front().first; ++i) np.root_valuations.push_back(mpq_class(PadicScalar::kInfinity));
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        const long len = hull[s + 1].first - hull[s].first;
        mpq_class slope(hull[s + 1].second - hull[s].second, len);
        slope.canonicalize();
        for (long k = 0; k < len; ++k) np.root_valuations.push_back(-slope);
    }
    std::sort(np.root_valuations.begin(), np.root_valuations.end());
    // An inexact zero coefficient with bound A could be any value of valuation >= A.
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& c = f.coeffs()[i];
        if (!c.is_zero() || c.is_exact_zero()) continue;
        const long x = static_cast<long>(i);
        if (x < hull.front().first) {
            np.certified = false;
            continue;
        }
        for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
            if (x < hull[s].first || x > hull[s + 1].first) continue;
            mpq_class y = mpq_class(hull[s].second) +
                          mpq_class(hull[s + 1].second - hull[s].second, hull[s + 1].first - hull[s].first) *
                              (x - hull[s].first);
            if (mpq_class(c.abs_prec()) <= y) np.certified = false;
        }
    }
    return np;
}

HypothesisReport check_hypotheses(const ScalarMatrix& C, const ScalarMatrix& C_phi) {
    HypothesisReport h;
    const ContextPtr ctx = C_phi(0, 0).context();
    const std::size_t n = C_phi.rows();
    // x I - C_phi over polynomials in x.
    PolyMatrix xm = to_poly(C_phi).map([](const Poly& f) { return -f; });
    for (std::size_t i = 0; i < n; ++i) xm(i, i) = xm(i, i) + Poly::monomial(ctx, 1, PadicScalar::one(ctx));
    h.charpoly = det(xm);
    h.polygon = newton_polygon(h.charpoly);

    std::string vals;
    for (const auto& v : h.polygon.root_valuations) vals += (vals.empty() ? "" : ", ") + rat(v);
    const std::string summary = "root valuations (" + vals + ")";
    if (!h.polygon.certified) {
        h.report.add(Check::indeterminate("slopes", "characteristic polynomial has coefficients below working precision; " + summary));
    } else {
        bool ok = true;
        for (const auto& v : h.polygon.root_valuations)
            if (!(v > -1 && v <= 0)) ok = false;
        h.report.add(ok ? Check::pass("slopes", summary)
                        : Check::fail("slopes", summary + " not all in (-1, 0]"));
    }

    const PadicScalar d1 = det(C_phi - identity_matrix(ctx, n));
    switch (compare_to_zero(d1)) {
    case Comparison::Unequal: h.report.add(Check::pass("one_not_eigenvalue", "det(C_phi - I) = " + d1.to_string())); break;
    case Comparison::Equal: h.report.add(Check::fail("one_not_eigenvalue", "1 is an eigenvalue: det(C_phi - I) = " + d1.to_string())); break;
    case Comparison::Indistinguishable:
        h.report.add(Check::indeterminate("one_not_eigenvalue", "det(C_phi - I) = " + d1.to_string()));
        break;
    }

    const PadicScalar dc = det(C);
    if (dc.is_zero() && compare_to_zero(dc) == Comparison::Indistinguishable)
        h.report.add(Check::indeterminate("det_C_unit", "det(C) = " + dc.to_string()));
    else if (dc.is_unit()) h.report.add(Check::pass("det_C_unit", "det(C) = " + dc.to_string()));
    else h.report.add(Check::fail("det_C_unit", "det(C) = " + dc.to_string() + " is not a unit"));
    return h;
}

ScalarMatrix frobenius_from_C(const ScalarMatrix& C, std::size_t fil_rank) {
    ScalarMatrix m = C;
    const PadicScalar pinv = scalar(C(0, 0).context(), C(0, 0).context()->p()).inv();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = fil_rank; j < m.cols(); ++j) m(i, j) = pinv * m(i, j);
    return m;
}

ScalarMatrix C_from_frobenius(const ScalarMatrix& C_phi, std::size_t fil_rank) {
    ScalarMatrix m = C_phi;
    const PadicScalar p = scalar(C_phi(0, 0).context(), C_phi(0, 0).context()->p());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = fil_rank; j < m.cols(); ++j) m(i, j) = p * m(i, j);
    return m;
}

FrobeniusData FrobeniusData::make(const ContextPtr& ctx, int d, int d0, int r, const ScalarMatrix& C, bool force) {
    if (d < 1 || r < 1) fail(ErrorKind::InvalidArgument, "d and r must be positive");
    if (d0 < 0 || d0 > d) fail(ErrorKind::InvalidArgument, "d0 must lie in [0, d]");
    const std::size_t n = static_cast<std::size_t>(r * d);
    if (C.rows() != n || C.cols() != n)
        fail(ErrorKind::InvalidArgument, "C must be " + std::to_string(n) + "x" + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!C(i, j).is_integral())
                fail(ErrorKind::InvalidArgument, "C entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not a p-adic integer");
    FrobeniusData fd;
    fd.ctx_ = ctx;
    fd.d_ = d;
    fd.d0_ = d0;
    fd.r_ = r;
    fd.C_ = C;
    fd.C_phi_ = frobenius_from_C(C, fd.fil_rank());
    fd.hyp_ = check_hypotheses(fd.C_, fd.C_phi_);
    if (!force)
        for (const auto& c : fd.hyp_.report.checks)
            if (c.status != Status::Pass)
                fail(ErrorKind::HypothesisFailed, c.name + ": " + (c.witness.empty() ? c.precision : c.witness));
    fd.C_inv_ = inverse(fd.C_);
    fd.C_phi_inv_ = inverse(fd.C_phi_);
    mpq_class lo = 0;
    for (const auto& v : fd.hyp_.polygon.root_valuations) lo = std::min(lo, v);
    fd.slope_bound_ = -lo;
    return fd;
}

FrobeniusData FrobeniusData::make(const ContextPtr& ctx, int d, int d0, int r,
                                  const std::vector<std::vector<mpq_class>>& C, bool force) {
    return make(ctx, d, d0, r, scalar_matrix(ctx, C), force);
}

PolyMatrix build_Cn(const FrobeniusData& fd, int n) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "C_n needs n >= 1");
    PolyMatrix m = to_poly(fd.C_inv());
    if (fd.fil_rank() == fd.size()) return m;
    const Poly phi = phi_cyclo(fd.context(), n);
    for (std::size_t i = fd.fil_rank(); i < fd.size(); ++i)
        for (std::size_t j = 0; j < fd.size(); ++j) m(i, j) = phi * m(i, j);
    return m;
}

LogMatrixApprox build_Mn(const FrobeniusData& fd, int n) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "M_n needs n >= 1");
    const long m = std::min(0L, min_valuation(fd.C_phi()));
    if (fd.context()->denom_budget() < (n + 1) * (-m))
        fail(ErrorKind::DenominatorBudgetExceeded, "M_" + std::to_string(n) + " needs a denominator budget of " +
                                                       std::to_string((n + 1) * (-m)));
    PolyMatrix prod = to_poly(matrix_power(fd.C_phi(), n + 1));
    for (int k = n; k >= 1; --k) prod = prod * build_Cn(fd, k);
    LogMatrixApprox out;
    out.level = n;
    out.raw = prod;
    out.reduced = reduce_mod_omega(prod, n);
    return out;
}

Check stabilization_check(const PolyMatrix& Mm, const PolyMatrix& Mn, int n) {
    const PolyMatrix diff = reduce_mod_omega(Mm - Mn, n);
    return Check::from("stabilization", compare_to_zero(diff), describe_nonzero(diff));
}

Check verify_stabilization(const FrobeniusData& fd, int n, int m) {
    if (n < 1 || m < n) fail(ErrorKind::InvalidArgument, "stabilization needs m >= n >= 1");
    Check c = stabilization_check(build_Mn(fd, m).raw, build_Mn(fd, n).raw, n);
    c.name = "stabilization M_" + std::to_string(m) + " = M_" + std::to_string(n) + " mod omega_" + std::to_string(n);
    return c;
}

Check evaluation_check(const FrobeniusData& fd, const LogMatrixApprox& M) {
    const ScalarMatrix at0 = eval_at_zero(M.reduced);
    const ScalarMatrix diff = at0 - fd.C_phi();
    std::string witness;
    for (std::size_t i = 0; i < diff.rows() && witness.empty(); ++i)
        for (std::size_t j = 0; j < diff.cols(); ++j)
            if (compare_to_zero(diff(i, j)) != Comparison::Equal) {
                witness = "(" + std::to_string(i) + "," + std::to_string(j) + "): M_n(0) = " + at0(i, j).to_string() +
                          ", C_phi = " + fd.C_phi()(i, j).to_string();
                break;
            }
    return Check::from("evaluation M_" + std::to_string(M.level) + "(0) = C_phi", compare(at0, fd.C_phi()), witness);
}

Check valuation_bound_check(const FrobeniusData& fd, const LogMatrixApprox& M) {
    const long bound = (M.level + 1) * std::min(0L, min_valuation(fd.C_phi()));
    const long got = min_valuation(M.reduced);
    const std::string name = "valuation bound M_" + std::to_string(M.level);
    if (got >= bound) return Check::pass(name, "min valuation " + std::to_string(got) + " >= " + std::to_string(bound));
    return Check::fail(name, "min valuation " + std::to_string(got) + " < " + std::to_string(bound));
}

DeterminantCheck det_Mn(const FrobeniusData& fd, int n) {
    const ContextPtr& ctx = fd.context();
    DeterminantCheck out;
    out.det = det(build_Mn(fd, n).raw);
    const int e = fd.lower_rank();
    Poly rhs = Poly::constant(det(fd.C()) * scalar(ctx, ctx->p()).pow(-static_cast<long>((n + 1) * e)));
    for (int k = 1; k <= n; ++k) {
        const Poly phi = phi_cyclo(ctx, k);
        for (int i = 0; i < e; ++i) rhs = rhs * phi;
    }
    out.closed_form = rhs;
    const Poly diff = out.det - rhs;
    PolyMatrix w(1, 1, diff);
    out.check = Check::from("determinant M_" + std::to_string(n), compare_to_zero(diff), describe_nonzero(w));
    return out;
}

bool is_filtration_adapted(const ScalarMatrix& B, std::size_t fil_rank) {
    for (std::size_t i = fil_rank; i < B.rows(); ++i)
        for (std::size_t j = 0; j < fil_rank; ++j)
            if (!B(i, j).is_exact_zero() && compare_to_zero(B(i, j)) != Comparison::Equal) return false;
    return true;
}

FrobeniusData change_basis(const FrobeniusData& fd_v, const ScalarMatrix& B, bool force) {
    if (B.rows() != fd_v.size() || B.cols() != fd_v.size())
        fail(ErrorKind::InvalidArgument, "change of basis matrix has the wrong size");
    if (!is_integral(B) || !det(B).is_unit()) fail(ErrorKind::InvalidArgument, "change of basis matrix is not in GL(Z_p)");
    if (!is_filtration_adapted(B, fd_v.fil_rank()))
        fail(ErrorKind::NotFiltrationAdapted, "B has a nonzero lower-left block");
    const ScalarMatrix Cphi_w = B * fd_v.C_phi() * inverse(B);
    return FrobeniusData::make(fd_v.context(), fd_v.d(), fd_v.d0(), fd_v.r(),
                               C_from_frobenius(Cphi_w, fd_v.fil_rank()), force);
}

Report conjugate_basis_check(const FrobeniusData& fd_v, const ScalarMatrix& B, const std::vector<int>& levels) {
    Report rep;
    const FrobeniusData fd_w = change_basis(fd_v, B);
    const PolyMatrix Bp = to_poly(B);
    const PolyMatrix Binv = to_poly(inverse(B));
    for (int n : levels) {
        const PolyMatrix lhs = reduce_mod_omega(Bp * build_Mn(fd_v, n).raw * Binv, n);
        const PolyMatrix rhs = build_Mn(fd_w, n).reduced;
        const PolyMatrix diff = reduce_mod_omega(lhs - rhs, n);
        rep.add(Check::from("conjugation n=" + std::to_string(n), compare_to_zero(diff), describe_nonzero(diff)));
    }
    return rep;
}

PolyMatrix define_by_conjugation(const PolyMatrix& M_w, const ScalarMatrix& B) {
    return to_poly(inverse(B)) * M_w * to_poly(B);
}

ImageCondition image_condition_at_zero(const FrobeniusData& fd, const std::vector<std::size_t>& I, const Vector& w,
                                       bool trivial_character) {
    const ContextPtr& ctx = fd.context();
    const std::size_t n = fd.size(), f = fd.fil_rank();
    if (w.size() != I.size()) fail(ErrorKind::InvalidArgument, "w must have one coordinate per index in I");
    for (std::size_t i : I)
        if (i >= n) fail(ErrorKind::InvalidArgument, "index set out of range");
    ImageCondition out;
    if (f == 0 || I.empty()) {
        Membership m = Membership::Member;
        for (const auto& x : w) {
            const Comparison c = compare_to_zero(x);
            if (c == Comparison::Unequal) m = Membership::NotMember;
            else if (c == Comparison::Indistinguishable && m == Membership::Member) m = Membership::Indeterminate;
        }
        out.membership = m;
        out.full_rank = I.empty();
        return out;
    }
    ScalarMatrix A = zero_matrix(ctx, n, f);
    for (std::size_t j = 0; j < f; ++j) A(j, j) = PadicScalar::one(ctx);
    if (trivial_character) {
        const ScalarMatrix id = identity_matrix(ctx, n);
        const PadicScalar pinv = scalar(ctx, ctx->p()).inv();
        const ScalarMatrix one_minus_phi = id - fd.C_phi();
        const ScalarMatrix one_minus_phi_p = id - fd.C_phi().scaled(pinv);
        (void)inverse(one_minus_phi); // (1 - phi) must be invertible as well
        A = one_minus_phi * inverse(one_minus_phi_p) * A;
    }
    ScalarMatrix proj = zero_matrix(ctx, I.size(), f);
    for (std::size_t a = 0; a < I.size(); ++a)
        for (std::size_t j = 0; j < f; ++j) proj(a, j) = A(I[a], j);
    const ColumnEchelon e = column_echelon(proj);
    out.rank = e.pivot_rows.size();
    out.full_rank = out.rank == I.size();
    out.membership = lattice_contains(e, w);
    return out;
}

} // namespace padiclog
