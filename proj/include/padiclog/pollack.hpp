#pragma once

#include "padiclog/log_matrix.hpp"

namespace padiclog {

/// Supersingular a_p = 0 data: d = 2, d0 = 1, r = 1, C = [[0,-1],[1,0]],
/// so C_phi = [[0,-1/p],[1,0]] and C_phi^2 = -(1/p) I.
struct PollackInstance {
    FrobeniusData fd;

    static PollackInstance make(const ContextPtr& ctx);
};

/// (1/p) prod_{2 <= j <= n, j even} Phi_{p^j}(1+X)/p mod X^trunc.
Series pollack_log_plus(const ContextPtr& ctx, int n, std::size_t trunc);
/// (1/p) prod_{1 <= j <= n, j odd} Phi_{p^j}(1+X)/p mod X^trunc.
Series pollack_log_minus(const ContextPtr& ctx, int n, std::size_t trunc);

/// Checks that M_n = [[0, -log+_n], [p log-_n, 0]] exactly, that M_n(0) =
/// C_phi, and that the product of the off-diagonal entries is -det M_n.
Report verify_antidiagonal(const PollackInstance& inst, int n);

} // namespace padiclog
