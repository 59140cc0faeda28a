#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "padiclog/basis.hpp"
#include "padiclog/coleman.hpp"
#include "padiclog/log_matrix.hpp"
#include "padiclog/report.hpp"

namespace padiclog {

using Json = nlohmann::json;

/// Scalar record: {"v": valuation, "u": "unit", "prec": k} for nonzero
/// values, {"zero": true, "abs": A} for an inexact zero and {"zero": true}
/// for an exact one. Input also accepts a plain integer or a string "a/b".
Json to_json(const PadicScalar& x);
PadicScalar scalar_from_json(const ContextPtr& ctx, const Json& j, const std::string& where = "");

Json to_json(const Poly& f);
Poly poly_from_json(const ContextPtr& ctx, const Json& j, const std::string& where = "");

Json to_json(const ScalarMatrix& m);
ScalarMatrix scalar_matrix_from_json(const ContextPtr& ctx, const Json& j, const std::string& where = "");

Json to_json(const PolyMatrix& m);
PolyMatrix poly_matrix_from_json(const ContextPtr& ctx, const Json& j, const std::string& where = "");

Json to_json(const Vector& v);
Vector vector_from_json(const ContextPtr& ctx, const Json& j, const std::string& where = "");

Json to_json(const Check& c);
Json to_json(const Report& r);
Report report_from_json(const Json& j);

Json to_json(const LogMatrixApprox& m);
LogMatrixApprox log_matrix_from_json(const ContextPtr& ctx, const Json& j);

Json to_json(const BasisCertificate& c);
BasisCertificate certificate_from_json(const Json& j);
Json to_json(const CandidateBasis& b);
CandidateBasis candidate_from_json(const ContextPtr& ctx, const Json& j);

Json to_json(const ColemanVector& v);
Json to_json(const RegulatorVector& v);

struct BasisSection {
    std::size_t g = 0;
    std::size_t g_minus = 0;
    std::vector<std::vector<mpq_class>> fil0_dual;
    std::optional<std::vector<std::vector<mpq_class>>> phi;
    std::optional<std::vector<std::vector<mpq_class>>> vectors; // candidate basis for "check"

    friend bool operator==(const BasisSection&, const BasisSection&) = default;
};

struct ColemanSection {
    int level = 1;
    std::vector<std::vector<std::vector<mpq_class>>> vectors;    // Coleman vectors, coefficient lists
    std::vector<std::vector<std::vector<mpq_class>>> regulators; // regulator vectors to factor

    friend bool operator==(const ColemanSection&, const ColemanSection&) = default;
};

struct WachSection {
    long c = 4;
    int levels = 3;
    std::size_t trunc = 30;

    friend bool operator==(const WachSection&, const WachSection&) = default;
};

/// Instance file contents. Rationals are kept exactly; contexts are built
/// from (p, rel_prec, denom_budget) when a command runs.
struct InstanceFile {
    long p = 3;
    int d = 2;
    int d0 = 1;
    int r = 1;
    std::vector<std::vector<mpq_class>> C;
    int rel_prec = 20;
    int denom_budget = 10;
    std::optional<BasisSection> basis;
    std::optional<ColemanSection> coleman;
    std::optional<WachSection> wach;

    ContextPtr context() const;
    /// Validates against the FrobeniusData invariants (HypothesisFailed
    /// and friends propagate).
    FrobeniusData frobenius(bool force = false) const;
    LatticeSetup lattice_setup() const;

    friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

/// ParseError carries the JSON pointer of the offending field.
InstanceFile parse_instance(const Json& j);
InstanceFile parse_instance_text(const std::string& text);
InstanceFile load_instance(const std::string& path);
Json to_json(const InstanceFile& inst);

} // namespace padiclog
