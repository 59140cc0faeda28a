#pragma once

#include <string>
#include <vector>

#include "padiclog/log_matrix.hpp"

namespace padiclog {

/// The finite-level regulator vector: one element of Lambda_n per basis vector.
struct RegulatorVector {
    int level = 0;
    std::vector<LambdaN> components;
};

/// Coordinates in Lambda_n^{rd}, meaningful modulo ker h_n where h_n is left
/// multiplication by C_n ... C_1.
struct ColemanVector {
    int level = 0;
    std::vector<LambdaN> components;
    std::string kernel_tag;
};

inline constexpr const char* kKernelTag = "mod ker h_n, h_n = C_n...C_1 on Lambda_n^rd";

ColemanVector make_coleman(int level, const std::vector<Poly>& comps);
RegulatorVector make_regulator(int level, const std::vector<Poly>& comps);

Comparison compare(const RegulatorVector& a, const RegulatorVector& b);

/// (C_n ... C_1) col mod omega_n.
RegulatorVector forward(const FrobeniusData& fd, int n, const ColemanVector& col);

/// Peels C_n, ..., C_1 off L by exact division of the lower block by
/// Phi_{p^k}(1+X) and multiplication by C. NotInImage on a nonzero
/// remainder, PrecisionLoss on one that is zero only below the floor.
/// The result satisfies forward(result) = L mod omega_n.
ColemanVector factor_level(const FrobeniusData& fd, int n, const RegulatorVector& L);

/// C_phi^-(n+1) raw mod omega_n; NotIntegral names the first coefficient of
/// negative valuation.
RegulatorVector integral_shift(const FrobeniusData& fd, int n, const std::vector<Poly>& raw);

/// Q_p-basis of ker h_n viewed as a Z_p-linear map of rank rd p^n, each
/// vector primitive. Only for rd <= 4.
std::vector<ColemanVector> kernel_basis_h(const FrobeniusData& fd, int n);

} // namespace padiclog
