#pragma once

#include <cstddef>
#include <vector>

#include "padiclog/linalg.hpp"
#include "padiclog/report.hpp"

namespace padiclog {

/// Lower convex hull of the points (i, v(a_i)) of a polynomial.
struct NewtonPolygon {
    std::vector<std::pair<long, long>> vertices;
    /// Valuations of the roots (negated slopes), one entry per root, ascending.
    std::vector<mpq_class> root_valuations;
    /// False when a coefficient indistinguishable from zero could still move
    /// the hull; the root valuations are then not certified.
    bool certified = true;
};

NewtonPolygon newton_polygon(const Poly& f);

struct HypothesisReport {
    Poly charpoly; // det(x I - C_phi), coefficient of x^i at index i
    NewtonPolygon polygon;
    Report report; // clauses "slopes", "one_not_eigenvalue", "det_C_unit"
};

HypothesisReport check_hypotheses(const ScalarMatrix& C, const ScalarMatrix& C_phi);

/// A filtered phi-module presented by (d, d0, r, C): the matrix of phi in a
/// filtration-adapted basis is C_phi = C diag(I_{r d0}, p^-1 I_{r(d-d0)}).
class FrobeniusData {
public:
    /// Validates shapes and integrality and runs the hypothesis checks;
    /// throws HypothesisFailed on a failing clause unless `force` is set.
    static FrobeniusData make(const ContextPtr& ctx, int d, int d0, int r, const ScalarMatrix& C, bool force = false);
    static FrobeniusData make(const ContextPtr& ctx, int d, int d0, int r,
                              const std::vector<std::vector<mpq_class>>& C, bool force = false);

    const ContextPtr& context() const noexcept { return ctx_; }
    long p() const { return ctx_->p(); }
    int d() const noexcept { return d_; }
    int d0() const noexcept { return d0_; }
    int r() const noexcept { return r_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(r_ * d_); }
    std::size_t fil_rank() const noexcept { return static_cast<std::size_t>(r_ * d0_); }
    /// r (d - d0): number of coordinates scaled by 1/p.
    int lower_rank() const noexcept { return r_ * (d_ - d0_); }

    const ScalarMatrix& C() const noexcept { return C_; }
    const ScalarMatrix& C_inv() const noexcept { return C_inv_; }
    const ScalarMatrix& C_phi() const noexcept { return C_phi_; }
    const ScalarMatrix& C_phi_inv() const noexcept { return C_phi_inv_; }
    /// h = -(smallest root valuation of the characteristic polynomial).
    const mpq_class& slope_bound() const noexcept { return slope_bound_; }
    const HypothesisReport& hypotheses() const noexcept { return hyp_; }

private:
    FrobeniusData() = default;

    ContextPtr ctx_;
    int d_ = 0, d0_ = 0, r_ = 0;
    ScalarMatrix C_, C_inv_, C_phi_, C_phi_inv_;
    mpq_class slope_bound_;
    HypothesisReport hyp_;
};

/// C diag(I, p^-1 I) and its inverse direction diag(I, p I) for a given block split.
ScalarMatrix frobenius_from_C(const ScalarMatrix& C, std::size_t fil_rank);
ScalarMatrix C_from_frobenius(const ScalarMatrix& C_phi, std::size_t fil_rank);

/// C_n = diag(I, Phi_{p^n}(1+X) I) C^-1.
PolyMatrix build_Cn(const FrobeniusData& fd, int n);

struct LogMatrixApprox {
    int level = 0;
    PolyMatrix raw;     // C_phi^(n+1) C_n ... C_1, exact
    PolyMatrix reduced; // raw mod omega_n
};

LogMatrixApprox build_Mn(const FrobeniusData& fd, int n);

/// reduce(Mm - Mn, n) == 0 with a witness on failure.
Check stabilization_check(const PolyMatrix& Mm, const PolyMatrix& Mn, int n);
Check verify_stabilization(const FrobeniusData& fd, int n, int m);

Check evaluation_check(const FrobeniusData& fd, const LogMatrixApprox& M);
/// min coefficient valuation of M_n >= (n+1) min valuation of C_phi.
Check valuation_bound_check(const FrobeniusData& fd, const LogMatrixApprox& M);

struct DeterminantCheck {
    Poly det;
    Poly closed_form; // det(C) p^(-(n+1) r(d-d0)) prod_{k<=n} Phi_{p^k}^(r(d-d0))
    Check check;
};

DeterminantCheck det_Mn(const FrobeniusData& fd, int n);

/// True when the first r d0 columns of B vanish below row r d0.
bool is_filtration_adapted(const ScalarMatrix& B, std::size_t fil_rank);

/// The data in the basis w = B v: C_phi,w = B C_phi,v B^-1. Throws
/// NotFiltrationAdapted when B does not preserve the filtration and
/// InvalidArgument when B is not in GL(Z_p).
FrobeniusData change_basis(const FrobeniusData& fd_v, const ScalarMatrix& B, bool force = false);

/// B M_{n,v} B^-1 against M_{n,w}, for each level.
Report conjugate_basis_check(const FrobeniusData& fd_v, const ScalarMatrix& B, const std::vector<int>& levels);

/// M_v := B^-1 M_w B, the matrix for a basis that need not be adapted.
PolyMatrix define_by_conjugation(const PolyMatrix& M_w, const ScalarMatrix& B);

struct ImageCondition {
    Membership membership = Membership::Member;
    std::size_t rank = 0;   // rank of pr_I(A)
    bool full_rank = false; // rank == |I|
};

/// Membership of w in U_I = pr_I(A Z_p^{r d0}) where A is (1-phi)(1-phi/p)^-1
/// on Fil^0 for the trivial character and the inclusion of Fil^0 otherwise.
ImageCondition image_condition_at_zero(const FrobeniusData& fd, const std::vector<std::size_t>& I, const Vector& w,
                                       bool trivial_character);

} // namespace padiclog
