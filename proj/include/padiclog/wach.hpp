#pragma once

#include <cstddef>
#include <vector>

#include "padiclog/log_matrix.hpp"

namespace padiclog {

/// Truncated series in pi, the variable of A^+ = Z_p[[pi]].
using PiSeries = Series;

/// gamma in Gamma through its cyclotomic character value c = chi(gamma).
/// c is a rational integer congruent to 1 mod p, so (1+pi)^c has exact
/// integer binomial coefficients.
struct GammaElement {
    long c = 1;

    static GammaElement make(long p, long c);
    GammaElement compose(const GammaElement& o) const { return GammaElement{c * o.c}; }
};

/// Working context sized for 1/q at truncation 30: 1/q has coefficients of
/// valuation down to about -N/(p-1).
ContextPtr wach_context(long p, int rel_prec = 60, int denom_budget = 30);

/// phi(pi) = (1+pi)^p - 1 and gamma(pi) = (1+pi)^c - 1 mod pi^trunc.
PiSeries phi_of_pi(const ContextPtr& ctx, std::size_t trunc);
PiSeries gamma_of_pi(const ContextPtr& ctx, const GammaElement& g, std::size_t trunc);

PiSeries phi_act(const PiSeries& f);
PiSeries gamma_act(const PiSeries& f, const GammaElement& g);
SeriesMatrix phi_act(const SeriesMatrix& m);
SeriesMatrix gamma_act(const SeriesMatrix& m, const GammaElement& g);

/// q = phi(pi)/pi = sum_{j<p} binom(p, j+1) pi^j.
Poly wach_q(const ContextPtr& ctx);

struct WachP {
    SeriesMatrix P;   // C diag(I, 1/phi^(n-1)(q))
    PolyMatrix P_inv; // diag(I, phi^(n-1)(q)) C^-1
    PolyMatrix qP;    // phi^(n-1)(q) P = C diag(phi^(n-1)(q) I, I), integral
};

WachP build_Pn(const FrobeniusData& fd, int n, std::size_t trunc);

struct WachMatrixTower {
    int level = 0;
    std::size_t trunc = 0;
    std::vector<WachP> P;               // P_1 .. P_n
    std::vector<PolyMatrix> M_primes;   // M'_1 .. M'_n, exact polynomials
    const PolyMatrix& M_prime() const { return M_primes.back(); }
    Report certificate;                 // M'_k(0) = I and M'_m = M'_k mod phi^k(pi)
};

WachMatrixTower build_M_prime(const FrobeniusData& fd, int n, std::size_t trunc = 30);

/// Inverse of a matrix of series whose constant term is invertible.
SeriesMatrix series_matrix_inverse(const SeriesMatrix& m);

SeriesMatrix to_series(const PolyMatrix& m, std::size_t trunc);
SeriesMatrix identity_series_matrix(const ContextPtr& ctx, std::size_t n, std::size_t trunc);

/// G = I mod pi and every coefficient integral.
Report certify_G(const SeriesMatrix& G, const std::string& label);

/// (M'_n)^-1 gamma(M'_n); throws IntegralityViolation when certify_G fails.
SeriesMatrix build_G_gamma(const WachMatrixTower& tower, const GammaElement& g);

/// P_1 phi(G_n) against G_{n+1} gamma(P_1).
Check commutation_check(const SeriesMatrix& P1, const SeriesMatrix& Gn, const SeriesMatrix& Gn1, const GammaElement& g);
Check verify_commutation(const WachMatrixTower& lower, const WachMatrixTower& upper, const GammaElement& g);

/// P_1 gamma(P_1^-1) = I mod pi with integral entries.
Report lemma_a_check(const FrobeniusData& fd, const GammaElement& g, std::size_t trunc);
/// P_1 phi(M) gamma(P_1^-1) = I mod pi with integral entries, for M = I mod pi integral.
Report lemma_b_check(const FrobeniusData& fd, const GammaElement& g, const SeriesMatrix& M);

/// G_{c c'} = G_c gamma_c(G_{c'}).
Check cocycle_check(const WachMatrixTower& tower, const GammaElement& a, const GammaElement& b);

} // namespace padiclog
