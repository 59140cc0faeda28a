#include "padiclog/pollack.hpp"

namespace padiclog {

namespace {

Poly partial_product(const ContextPtr& ctx, int n, int parity) {
    const PadicScalar pinv = PadicScalar::from_integer(ctx, ctx->p()).inv();
    Poly acc = Poly::constant(pinv);
    for (int j = 1; j <= n; ++j)
        if (j % 2 == parity) acc = acc * (pinv * phi_cyclo(ctx, j));
    return acc;
}

Check entry_check(const std::string& name, const Poly& got, const Poly& want) {
    const PolyMatrix diff(1, 1, got - want);
    return Check::from(name, compare_to_zero(diff), describe_nonzero(diff));
}

} // namespace

PollackInstance PollackInstance::make(const ContextPtr& ctx) {
    return PollackInstance{FrobeniusData::make(ctx, 2, 1, 1, std::vector<std::vector<mpq_class>>{{0, -1}, {1, 0}})};
}

Series pollack_log_plus(const ContextPtr& ctx, int n, std::size_t trunc) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "log+ needs n >= 1");
    return Series(partial_product(ctx, n, 0), trunc);
}

Series pollack_log_minus(const ContextPtr& ctx, int n, std::size_t trunc) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "log- needs n >= 1");
    return Series(partial_product(ctx, n, 1), trunc);
}

Report verify_antidiagonal(const PollackInstance& inst, int n) {
    const FrobeniusData& fd = inst.fd;
    const ContextPtr& ctx = fd.context();
    const LogMatrixApprox M = build_Mn(fd, n);
    const std::string lvl = " n=" + std::to_string(n);
    Report rep;
    const Poly zero(ctx);
    rep.add(entry_check("diagonal (0,0)" + lvl, M.reduced(0, 0), zero));
    rep.add(entry_check("diagonal (1,1)" + lvl, M.reduced(1, 1), zero));
    // The raw degree is p^n - 1, so no reduction happens and the polynomials compare exactly.
    const Poly plus = partial_product(ctx, n, 0);
    const Poly minus = partial_product(ctx, n, 1);
    const PadicScalar p = PadicScalar::from_integer(ctx, ctx->p());
    rep.add(entry_check("(0,1) = -log+" + lvl, M.reduced(0, 1), -plus));
    rep.add(entry_check("(1,0) = p log-" + lvl, M.reduced(1, 0), p * minus));
    rep.add(evaluation_check(fd, M));
    const DeterminantCheck dc = det_Mn(fd, n);
    rep.add(entry_check("(0,1)(1,0) = -det" + lvl, M.reduced(0, 1) * M.reduced(1, 0), -dc.det));
    rep.add(dc.check);
    rep.notes.push_back("sign convention: (M_n Col)_1 = -log+ Col_2 and (M_n Col)_2 = p log- Col_1, so with "
                        "Col+ = -Col_2 and Col- = Col_1 the components are log+ Col+ and p log- Col-");
    rep.notes.push_back("the (1,0) entry is p log-, not log-: M_n(0) = C_phi forces its constant term to be 1");
    return rep;
}

} // namespace padiclog
