#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padiclog/linalg.hpp"
#include "padiclog/report.hpp"

namespace padiclog {

/// Dual-side data for admissibility: Z_p^g with Fil0 spanned by
/// `fil0_dual` (g_plus vectors) and optionally the matrix of phi.
struct LatticeSetup {
    ContextPtr ctx;
    std::size_t g = 0;
    std::size_t g_minus = 0;
    std::vector<Vector> fil0_dual;
    std::optional<ScalarMatrix> phi_matrix;

    std::size_t g_plus() const { return g - g_minus; }

    /// Validates shapes, g_minus >= 1 and that fil0_dual spans a direct
    /// summand (some maximal minor is a unit).
    static LatticeSetup make(ContextPtr ctx, std::size_t g, std::size_t g_minus, std::vector<Vector> fil0_dual,
                             std::optional<ScalarMatrix> phi_matrix = std::nullopt);
};

struct SubsetEntry {
    std::vector<std::size_t> indices; // 0-based positions in the basis
    Status status = Status::Pass;
    long valuation = PadicScalar::kInfinity; // of det[v_I | fil0]; kInfinity when zero / indistinguishable
};

struct BasisCertificate {
    std::string family; // "plain" or "transformed"
    std::vector<SubsetEntry> entries;
    Status status = Status::Pass;
    bool saturated = false; // every determinant a unit

    std::string witness() const; // first non-passing subset, empty if none
};

struct CandidateBasis {
    std::vector<Vector> vectors;
    BasisCertificate plain;
    std::optional<BasisCertificate> transformed;
    bool admissible = false;
    bool strongly_admissible = false;
    bool saturated = false;
    std::string route;  // how the basis was produced
    std::uint64_t seed = 0;
};

/// Every size-k subset of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

/// Matrix whose columns are the given vectors.
ScalarMatrix columns_matrix(const std::vector<Vector>& cols);

/// Integer vector as p-adic coordinates.
Vector integer_vector(const ContextPtr& ctx, const std::vector<long>& xs);

/// Brute force over all g_minus-subsets I: det[v_I | fil0] != 0 at precision.
/// A determinant of valuation >= rel_prec - g is Indeterminate.
BasisCertificate is_admissible(const LatticeSetup& setup, const std::vector<Vector>& basis);

/// T = (1 - phi)^-1 (p phi - 1); SingularOperator if 1 - phi is not invertible.
ScalarMatrix strong_operator(const LatticeSetup& setup);

/// Certificates for the plain family and for the family T v_i.
std::pair<BasisCertificate, BasisCertificate> is_strongly_admissible(const LatticeSetup& setup,
                                                                     const std::vector<Vector>& basis);

/// A hyperplane of W = Z_p^rank, given by a basis of a rank-(rank-1) summand.
using Hyperplane = std::vector<Vector>;

/// det[H | v]; vanishes exactly on the Q_p-span of H.
PadicScalar hyperplane_form(const Hyperplane& h, const Vector& v);

/// Is v off every hyperplane (a certified nonzero form value for each)?
bool avoids(const std::vector<Hyperplane>& hs, const Vector& v);

/// w not in p^k W and not in any hyperplane. Seeded on the moment curve
/// (1, t, t^2, ...), then divided by p^k while it stays in p^k W.
Vector escape_union(const ContextPtr& ctx, std::size_t rank, const std::vector<Hyperplane>& hyperplanes, int k);

/// Units x, y with cx + dy a unit and (ax + by)/(cx + dy) outside `forbidden`.
/// x is fixed at 1 and y runs over positive integers prime to p.
std::pair<PadicScalar, PadicScalar> avoid_slopes(const PadicScalar& a, const PadicScalar& b, const PadicScalar& c,
                                                 const PadicScalar& d, const std::vector<PadicScalar>& forbidden);

/// v = alpha v1 + beta v2 off every hyperplane of W0 with W1 + Z_p v = W2 + Z_p v = W.
/// DegenerateInput when the inputs do not satisfy the hypotheses.
Vector merge_complement(const Hyperplane& w1, const Hyperplane& w2, const Vector& v1, const Vector& v2,
                        const std::vector<Hyperplane>& w0);

struct ExtendResult {
    std::vector<Vector> vectors;
    bool saturated = true; // every size-rank subset has unit determinant
    std::vector<std::string> routes; // one per added vector: "lemma", "residue-search" or "generic"
};

/// Appends k vectors to a basis of Z_p^rank so that every size-rank subset
/// spans over Q_p, and over Z_p whenever that is possible mod p.
ExtendResult generic_position_extend(const std::vector<Vector>& w_basis, std::size_t k);

CandidateBasis construct_admissible(const LatticeSetup& setup);

struct StrongSearchOptions {
    std::uint64_t seed = 1;
    int attempts = 200;
    long sample_bound = 0;          // entries drawn from [-bound, bound]; 0 means p
    bool deterministic_only = false;
    long enumeration_limit = 200000; // candidates per vector in the fallback
};

CandidateBasis construct_strongly_admissible(const LatticeSetup& setup, const StrongSearchOptions& opts = {});

/// Fills the flags and certificates of `basis` from scratch.
CandidateBasis certify(const LatticeSetup& setup, std::vector<Vector> basis, std::string route);

} // namespace padiclog
