#include "padiclog/wach.hpp"

namespace padiclog {

namespace {

void require_rank_one(const FrobeniusData& fd) {
    if (fd.r() != 1) fail(ErrorKind::InvalidArgument, "Wach module matrices are implemented for K = Q_p (r = 1) only");
}

std::string describe_nonzero(const SeriesMatrix& m) {
    return padiclog::describe_nonzero(m.map([](const Series& s) { return s.poly(); }));
}

Comparison compare_to_zero(const SeriesMatrix& m) {
    Comparison acc = Comparison::Equal;
    for (const auto& s : m.data()) acc = combine(acc, padiclog::compare_to_zero(s));
    return acc;
}

std::string first_non_integral(const SeriesMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto& cs = m(i, j).poly().coeffs();
            for (std::size_t k = 0; k < cs.size(); ++k)
                if (!cs[k].is_zero() && !cs[k].is_integral())
                    return "(" + std::to_string(i) + "," + std::to_string(j) + ") pi^" + std::to_string(k) + ": " +
                           cs[k].to_string();
        }
    return {};
}

SeriesMatrix constant_part(const SeriesMatrix& m) {
    return m.map([](const Series& s) { return Series::constant(s.coeff(0), s.trunc()); });
}

} // namespace

GammaElement GammaElement::make(long p, long c) {
    if (((c - 1) % p + p) % p != 0) fail(ErrorKind::InvalidArgument, "chi(gamma) must be congruent to 1 mod p");
    return GammaElement{c};
}

ContextPtr wach_context(long p, int rel_prec, int denom_budget) {
    return PadicContext::make(p, rel_prec, denom_budget);
}

PiSeries phi_of_pi(const ContextPtr& ctx, std::size_t trunc) { return PiSeries(omega(ctx, 1), trunc); }

PiSeries gamma_of_pi(const ContextPtr& ctx, const GammaElement& g, std::size_t trunc) {
    std::vector<mpz_class> cs(trunc, 0);
    const mpz_class c = g.c;
    for (std::size_t k = 1; k < trunc; ++k) {
        mpz_class b;
        mpz_bin_ui(b.get_mpz_t(), c.get_mpz_t(), k);
        cs[k] = b;
    }
    return PiSeries(Poly::from_integers(ctx, cs), trunc);
}

PiSeries phi_act(const PiSeries& f) { return f.compose(phi_of_pi(f.context(), f.trunc())); }

PiSeries gamma_act(const PiSeries& f, const GammaElement& g) {
    if (g.c == 1) return f;
    return f.compose(gamma_of_pi(f.context(), g, f.trunc()));
}

SeriesMatrix phi_act(const SeriesMatrix& m) {
    return m.map([](const Series& s) { return phi_act(s); });
}

SeriesMatrix gamma_act(const SeriesMatrix& m, const GammaElement& g) {
    return m.map([&g](const Series& s) { return gamma_act(s, g); });
}

Poly wach_q(const ContextPtr& ctx) {
    std::vector<mpz_class> cs(static_cast<std::size_t>(ctx->p()), 0);
    for (std::size_t j = 0; j < cs.size(); ++j) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(ctx->p()), j + 1);
        cs[j] = b;
    }
    return Poly::from_integers(ctx, cs);
}

SeriesMatrix to_series(const PolyMatrix& m, std::size_t trunc) {
    return m.map([trunc](const Poly& f) { return Series(f, trunc); });
}

SeriesMatrix identity_series_matrix(const ContextPtr& ctx, std::size_t n, std::size_t trunc) {
    return to_series(identity_poly_matrix(ctx, n), trunc);
}

WachP build_Pn(const FrobeniusData& fd, int n, std::size_t trunc) {
    require_rank_one(fd);
    if (n < 1) fail(ErrorKind::InvalidArgument, "P_n needs n >= 1");
    const ContextPtr& ctx = fd.context();
    // phi^(n-1)(q) as an exact polynomial, by iterating the substitution pi -> (1+pi)^p - 1.
    Poly qn = wach_q(ctx);
    const Poly phi_pi = omega(ctx, 1);
    for (int k = 1; k < n; ++k) qn = qn.compose(phi_pi);
    const Series qinv = Series(qn, trunc).inverse();

    const std::size_t f = fd.fil_rank(), size = fd.size();
    WachP out;
    PolyMatrix C = to_poly(fd.C());
    out.P = to_series(C, trunc);
    out.qP = C;
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            if (j >= f) out.P(i, j) = out.P(i, j) * qinv;
            else out.qP(i, j) = qn * out.qP(i, j);
        }
    out.P_inv = to_poly(fd.C_inv());
    for (std::size_t i = f; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) out.P_inv(i, j) = qn * out.P_inv(i, j);
    return out;
}

WachMatrixTower build_M_prime(const FrobeniusData& fd, int n, std::size_t trunc) {
    require_rank_one(fd);
    if (n < 1) fail(ErrorKind::InvalidArgument, "M'_n needs n >= 1");
    const ContextPtr& ctx = fd.context();
    WachMatrixTower t;
    t.level = n;
    t.trunc = trunc;
    PolyMatrix tail = identity_poly_matrix(ctx, fd.size()); // P_k^-1 ... P_1^-1
    for (int k = 1; k <= n; ++k) {
        t.P.push_back(build_Pn(fd, k, trunc));
        tail = t.P.back().P_inv * tail;
        t.M_primes.push_back(to_poly(matrix_power(fd.C_phi(), k)) * tail);
        const ScalarMatrix at0 = eval_at_zero(t.M_primes.back());
        t.certificate.add(Check::from("M'_" + std::to_string(k) + "(0) = I", compare(at0, identity_matrix(ctx, fd.size())),
                                      "constant term differs from I"));
    }
    for (int k = 1; k <= n; ++k) {
        const Poly modulus = omega(ctx, k); // phi^k(pi) = (1+pi)^(p^k) - 1
        for (int m = k + 1; m <= n; ++m) {
            const PolyMatrix diff = t.M_primes[static_cast<std::size_t>(m - 1)] - t.M_primes[static_cast<std::size_t>(k - 1)];
            const PolyMatrix rem = diff.map([&modulus](const Poly& f) { return divide_exact(f, modulus).remainder; });
            t.certificate.add(Check::from("M'_" + std::to_string(m) + " = M'_" + std::to_string(k) + " mod phi^" +
                                              std::to_string(k) + "(pi)",
                                          compare_to_zero(rem), describe_nonzero(rem)));
        }
    }
    return t;
}

SeriesMatrix series_matrix_inverse(const SeriesMatrix& m) {
    if (!m.is_square() || m.rows() == 0) fail(ErrorKind::InvalidArgument, "inverse of a non-square series matrix");
    const std::size_t n = m.rows();
    std::size_t trunc = m(0, 0).trunc();
    for (const auto& s : m.data()) trunc = std::min(trunc, s.trunc());
    const ContextPtr ctx = m(0, 0).context();
    // Coefficient matrices A_k, then B_0 = A_0^-1, B_k = -B_0 sum_{j=1}^k A_j B_{k-j}.
    std::vector<ScalarMatrix> A, B;
    for (std::size_t k = 0; k < trunc; ++k)
        A.push_back(m.map([k](const Series& s) { return s.coeff(k); }));
    B.push_back(inverse(A[0]));
    const ScalarMatrix zero = zero_matrix(ctx, n, n);
    for (std::size_t k = 1; k < trunc; ++k) {
        ScalarMatrix acc = zero;
        for (std::size_t j = 1; j <= k; ++j) acc = acc + A[j] * B[k - j];
        B.push_back(zero - B[0] * acc);
    }
    SeriesMatrix out(n, n, Series(Poly(ctx), trunc));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<PadicScalar> cs;
            for (std::size_t k = 0; k < trunc; ++k) cs.push_back(B[k](i, j));
            out(i, j) = Series(Poly(ctx, cs), trunc);
        }
    return out;
}

Report certify_G(const SeriesMatrix& G, const std::string& label) {
    Report rep;
    const ContextPtr ctx = G(0, 0).context();
    const std::size_t trunc = G(0, 0).trunc();
    const SeriesMatrix diff = constant_part(G) - identity_series_matrix(ctx, G.rows(), trunc);
    rep.add(Check::from(label + " = I mod pi", compare_to_zero(diff), describe_nonzero(diff)));
    const std::string bad = first_non_integral(G);
    rep.add(bad.empty() ? Check::pass(label + " integral") : Check::fail(label + " integral", bad));
    return rep;
}

SeriesMatrix build_G_gamma(const WachMatrixTower& tower, const GammaElement& g) {
    const SeriesMatrix M = to_series(tower.M_prime(), tower.trunc);
    const SeriesMatrix G = series_matrix_inverse(M) * gamma_act(M, g);
    const Report rep = certify_G(G, "G^(" + std::to_string(tower.level) + ")");
    for (const auto& c : rep.checks)
        if (c.status == Status::Fail) fail(ErrorKind::IntegralityViolation, c.name + ": " + c.witness);
    return G;
}

Check commutation_check(const SeriesMatrix& P1, const SeriesMatrix& Gn, const SeriesMatrix& Gn1, const GammaElement& g) {
    const SeriesMatrix lhs = P1 * phi_act(Gn);
    const SeriesMatrix rhs = Gn1 * gamma_act(P1, g);
    const SeriesMatrix diff = lhs - rhs;
    return Check::from("P_1 phi(G_n) = G_(n+1) gamma(P_1)", compare_to_zero(diff), describe_nonzero(diff));
}

Check verify_commutation(const WachMatrixTower& lower, const WachMatrixTower& upper, const GammaElement& g) {
    if (upper.level != lower.level + 1) fail(ErrorKind::InvalidArgument, "commutation needs consecutive levels");
    Check c = commutation_check(lower.P.front().P, build_G_gamma(lower, g), build_G_gamma(upper, g), g);
    c.name += " n=" + std::to_string(lower.level);
    return c;
}

Report lemma_a_check(const FrobeniusData& fd, const GammaElement& g, std::size_t trunc) {
    const WachP P1 = build_Pn(fd, 1, trunc);
    const SeriesMatrix prod = P1.P * gamma_act(to_series(P1.P_inv, trunc), g);
    return certify_G(prod, "P_1 gamma(P_1^-1)");
}

Report lemma_b_check(const FrobeniusData& fd, const GammaElement& g, const SeriesMatrix& M) {
    const std::size_t trunc = M(0, 0).trunc();
    const WachP P1 = build_Pn(fd, 1, trunc);
    const SeriesMatrix prod = P1.P * phi_act(M) * gamma_act(to_series(P1.P_inv, trunc), g);
    return certify_G(prod, "P_1 phi(M) gamma(P_1^-1)");
}

Check cocycle_check(const WachMatrixTower& tower, const GammaElement& a, const GammaElement& b) {
    const SeriesMatrix Gab = build_G_gamma(tower, a.compose(b));
    const SeriesMatrix rhs = build_G_gamma(tower, a) * gamma_act(build_G_gamma(tower, b), a);
    const SeriesMatrix diff = Gab - rhs;
    return Check::from("cocycle c=" + std::to_string(a.c) + " c'=" + std::to_string(b.c), compare_to_zero(diff),
                       describe_nonzero(diff));
}

} // namespace padiclog
