#include "padiclog/serialize.hpp"

#include <fstream>
#include <sstream>

namespace padiclog {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    fail(ErrorKind::ParseError, (where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where + "/" + key, "missing field");
    return *it;
}

long as_long(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer");
    return j.get<long>();
}

std::string as_string(const Json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "expected a string");
    return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array");
    return j;
}

mpz_class parse_mpz(const std::string& s, const std::string& where) {
    mpz_class z;
    if (s.empty() || z.set_str(s, 10) != 0) bad(where, "not a decimal integer: \"" + s + "\"");
    return z;
}

mpq_class rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    if (!j.is_string()) bad(where, "expected an integer or a string \"a/b\"");
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return mpq_class(parse_mpz(s, where));
    const mpz_class den = parse_mpz(s.substr(slash + 1), where);
    if (den == 0) bad(where, "zero denominator");
    mpq_class q(parse_mpz(s.substr(0, slash), where), den);
    q.canonicalize();
    return q;
}

Json rational_to_json(const mpq_class& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
}

std::vector<mpq_class> rational_list(const Json& j, const std::string& where) {
    std::vector<mpq_class> out;
    const Json& a = as_array(j, where);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(rational_from_json(a[i], where + "/" + std::to_string(i)));
    return out;
}

std::vector<std::vector<mpq_class>> rational_rows(const Json& j, const std::string& where) {
    std::vector<std::vector<mpq_class>> out;
    const Json& a = as_array(j, where);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(rational_list(a[i], where + "/" + std::to_string(i)));
    return out;
}

std::vector<std::vector<std::vector<mpq_class>>> rational_cube(const Json& j, const std::string& where) {
    std::vector<std::vector<std::vector<mpq_class>>> out;
    const Json& a = as_array(j, where);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(rational_rows(a[i], where + "/" + std::to_string(i)));
    return out;
}

Json rows_to_json(const std::vector<std::vector<mpq_class>>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) {
        Json row = Json::array();
        for (const auto& x : r) row.push_back(rational_to_json(x));
        out.push_back(row);
    }
    return out;
}

Status status_from(const std::string& s, const std::string& where) {
    if (s == "pass") return Status::Pass;
    if (s == "fail") return Status::Fail;
    if (s == "indeterminate") return Status::Indeterminate;
    bad(where, "unknown status \"" + s + "\"");
}

Json valuation_json(long v) { return v == PadicScalar::kInfinity ? Json(nullptr) : Json(v); }

template <typename T, typename F>
Json matrix_json(const Matrix<T>& m, F&& each) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(each(m(i, j)));
        out.push_back(row);
    }
    return out;
}

template <typename T, typename F>
Matrix<T> matrix_parse(const Json& j, const std::string& where, F&& each) {
    std::vector<std::vector<T>> rows;
    const Json& a = as_array(j, where);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string wi = where + "/" + std::to_string(i);
        std::vector<T> row;
        const Json& r = as_array(a[i], wi);
        for (std::size_t k = 0; k < r.size(); ++k) row.push_back(each(r[k], wi + "/" + std::to_string(k)));
        if (!rows.empty() && row.size() != rows.front().size()) bad(wi, "ragged matrix row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) bad(where, "empty matrix");
    return Matrix<T>::from_rows(rows);
}

} // namespace

Json to_json(const PadicScalar& x) {
    if (x.is_exact_zero()) return Json{{"zero", true}};
    if (x.is_zero()) return Json{{"zero", true}, {"abs", x.abs_prec()}};
    return Json{{"v", x.valuation()}, {"u", x.unit().get_str()}, {"prec", x.rel_prec()}};
}

PadicScalar scalar_from_json(const ContextPtr& ctx, const Json& j, const std::string& where) {
    if (!j.is_object()) return PadicScalar::from_rational(ctx, rational_from_json(j, where));
    if (j.contains("zero")) {
        if (!j.contains("abs")) return PadicScalar::zero(ctx);
        return PadicScalar::zero_at(ctx, as_long(j["abs"], where + "/abs"));
    }
    const long v = as_long(field(j, "v", where), where + "/v");
    const mpz_class u = parse_mpz(as_string(field(j, "u", where), where + "/u"), where + "/u");
    const long k = as_long(field(j, "prec", where), where + "/prec");
    if (k < 1) bad(where + "/prec", "relative precision must be positive");
    return PadicScalar::from_parts(ctx, v, u, static_cast<int>(k));
}

Json to_json(const Poly& f) {
    Json out = Json::array();
    for (const auto& c : f.coeffs()) out.push_back(to_json(c));
    return out;
}

Poly poly_from_json(const ContextPtr& ctx, const Json& j, const std::string& where) {
    std::vector<PadicScalar> cs;
    const Json& a = as_array(j, where);
    for (std::size_t i = 0; i < a.size(); ++i) cs.push_back(scalar_from_json(ctx, a[i], where + "/" + std::to_string(i)));
    return Poly(ctx, cs);
}

Json to_json(const ScalarMatrix& m) {
    return matrix_json(m, [](const PadicScalar& x) { return to_json(x); });
}

ScalarMatrix scalar_matrix_from_json(const ContextPtr& ctx, const Json& j, const std::string& where) {
    return matrix_parse<PadicScalar>(j, where, [&](const Json& x, const std::string& w) { return scalar_from_json(ctx, x, w); });
}

Json to_json(const PolyMatrix& m) {
    return matrix_json(m, [](const Poly& f) { return to_json(f); });
}

PolyMatrix poly_matrix_from_json(const ContextPtr& ctx, const Json& j, const std::string& where) {
    return matrix_parse<Poly>(j, where, [&](const Json& x, const std::string& w) { return poly_from_json(ctx, x, w); });
}

Json to_json(const Vector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

Vector vector_from_json(const ContextPtr& ctx, const Json& j, const std::string& where) {
    Vector out;
    const Json& a = as_array(j, where);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(scalar_from_json(ctx, a[i], where + "/" + std::to_string(i)));
    return out;
}

Json to_json(const Check& c) {
    Json out{{"name", c.name}, {"status", std::string(to_string(c.status))}};
    if (!c.witness.empty()) out["witness"] = c.witness;
    if (!c.precision.empty()) out["precision"] = c.precision;
    return out;
}

Json to_json(const Report& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    return Json{{"status", std::string(to_string(r.overall()))}, {"checks", checks}, {"notes", r.notes}};
}

Report report_from_json(const Json& j) {
    Report r;
    const Json& checks = as_array(field(j, "checks", ""), "/checks");
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const std::string w = "/checks/" + std::to_string(i);
        Check c;
        c.name = as_string(field(checks[i], "name", w), w + "/name");
        c.status = status_from(as_string(field(checks[i], "status", w), w + "/status"), w + "/status");
        if (checks[i].contains("witness")) c.witness = as_string(checks[i]["witness"], w + "/witness");
        if (checks[i].contains("precision")) c.precision = as_string(checks[i]["precision"], w + "/precision");
        r.checks.push_back(std::move(c));
    }
    if (j.contains("notes"))
        for (const auto& n : as_array(j["notes"], "/notes")) r.notes.push_back(as_string(n, "/notes"));
    return r;
}

Json to_json(const LogMatrixApprox& m) {
    return Json{{"level", m.level}, {"raw", to_json(m.raw)}, {"reduced", to_json(m.reduced)}};
}

LogMatrixApprox log_matrix_from_json(const ContextPtr& ctx, const Json& j) {
    LogMatrixApprox m;
    m.level = static_cast<int>(as_long(field(j, "level", ""), "/level"));
    m.raw = poly_matrix_from_json(ctx, field(j, "raw", ""), "/raw");
    m.reduced = poly_matrix_from_json(ctx, field(j, "reduced", ""), "/reduced");
    return m;
}

Json to_json(const BasisCertificate& c) {
    Json entries = Json::array();
    for (const auto& e : c.entries) {
        Json idx = Json::array();
        for (auto i : e.indices) idx.push_back(i + 1);
        entries.push_back(Json{{"I", idx}, {"status", std::string(to_string(e.status))}, {"valuation", valuation_json(e.valuation)}});
    }
    return Json{{"family", c.family}, {"status", std::string(to_string(c.status))}, {"saturated", c.saturated}, {"subsets", entries}};
}

BasisCertificate certificate_from_json(const Json& j) {
    BasisCertificate c;
    c.family = as_string(field(j, "family", ""), "/family");
    c.status = status_from(as_string(field(j, "status", ""), "/status"), "/status");
    c.saturated = field(j, "saturated", "").get<bool>();
    const Json& subs = as_array(field(j, "subsets", ""), "/subsets");
    for (std::size_t k = 0; k < subs.size(); ++k) {
        const std::string w = "/subsets/" + std::to_string(k);
        SubsetEntry e;
        for (const auto& i : as_array(field(subs[k], "I", w), w + "/I")) e.indices.push_back(static_cast<std::size_t>(as_long(i, w + "/I") - 1));
        e.status = status_from(as_string(field(subs[k], "status", w), w + "/status"), w + "/status");
        const Json& v = field(subs[k], "valuation", w);
        e.valuation = v.is_null() ? PadicScalar::kInfinity : as_long(v, w + "/valuation");
        c.entries.push_back(std::move(e));
    }
    return c;
}

Json to_json(const CandidateBasis& b) {
    Json vectors = Json::array();
    for (const auto& v : b.vectors) vectors.push_back(to_json(v));
    Json out{{"vectors", vectors},
             {"admissible", b.admissible},
             {"strongly_admissible", b.strongly_admissible},
             {"saturated", b.saturated},
             {"route", b.route},
             {"seed", b.seed},
             {"plain", to_json(b.plain)}};
    if (b.transformed) out["transformed"] = to_json(*b.transformed);
    return out;
}

CandidateBasis candidate_from_json(const ContextPtr& ctx, const Json& j) {
    CandidateBasis b;
    const Json& vs = as_array(field(j, "vectors", ""), "/vectors");
    for (std::size_t i = 0; i < vs.size(); ++i) b.vectors.push_back(vector_from_json(ctx, vs[i], "/vectors/" + std::to_string(i)));
    b.admissible = field(j, "admissible", "").get<bool>();
    b.strongly_admissible = field(j, "strongly_admissible", "").get<bool>();
    b.saturated = field(j, "saturated", "").get<bool>();
    b.route = as_string(field(j, "route", ""), "/route");
    b.seed = field(j, "seed", "").get<std::uint64_t>();
    b.plain = certificate_from_json(field(j, "plain", ""));
    if (j.contains("transformed")) b.transformed = certificate_from_json(j["transformed"]);
    return b;
}

Json to_json(const ColemanVector& v) {
    Json comps = Json::array();
    for (const auto& c : v.components) comps.push_back(to_json(c.rep()));
    return Json{{"level", v.level}, {"components", comps}, {"kernel", v.kernel_tag}};
}

Json to_json(const RegulatorVector& v) {
    Json comps = Json::array();
    for (const auto& c : v.components) comps.push_back(to_json(c.rep()));
    return Json{{"level", v.level}, {"components", comps}};
}

ContextPtr InstanceFile::context() const { return PadicContext::make(p, rel_prec, denom_budget); }

FrobeniusData InstanceFile::frobenius(bool force) const { return FrobeniusData::make(context(), d, d0, r, C, force); }

LatticeSetup InstanceFile::lattice_setup() const {
    if (!basis) fail(ErrorKind::InvalidArgument, "instance has no \"basis\" section");
    const ContextPtr ctx = context();
    std::vector<Vector> fil0;
    for (const auto& v : basis->fil0_dual) {
        Vector w;
        for (const auto& x : v) w.push_back(PadicScalar::from_rational(ctx, x));
        fil0.push_back(std::move(w));
    }
    std::optional<ScalarMatrix> phi;
    if (basis->phi) phi = scalar_matrix(ctx, *basis->phi);
    return LatticeSetup::make(ctx, basis->g, basis->g_minus, fil0, phi);
}

InstanceFile parse_instance(const Json& j) {
    if (!j.is_object()) bad("", "instance must be an object");
    InstanceFile inst;
    inst.p = as_long(field(j, "p", ""), "/p");
    if (inst.p < 3 || !is_prime(inst.p)) bad("/p", "p must be an odd prime");
    inst.d = static_cast<int>(as_long(field(j, "d", ""), "/d"));
    inst.d0 = static_cast<int>(as_long(field(j, "d0", ""), "/d0"));
    inst.r = static_cast<int>(as_long(field(j, "r", ""), "/r"));
    if (inst.d < 1 || inst.d0 < 0 || inst.d0 > inst.d || inst.r < 1) bad("/d", "need d >= 1, 0 <= d0 <= d, r >= 1");
    inst.C = rational_rows(field(j, "C", ""), "/C");
    const std::size_t n = static_cast<std::size_t>(inst.r * inst.d);
    if (inst.C.size() != n) bad("/C", "expected " + std::to_string(n) + " rows");
    for (std::size_t i = 0; i < n; ++i) {
        if (inst.C[i].size() != n) bad("/C/" + std::to_string(i), "expected " + std::to_string(n) + " entries");
        for (std::size_t k = 0; k < n; ++k)
            if (inst.C[i][k].get_den() != 1) bad("/C/" + std::to_string(i) + "/" + std::to_string(k), "C must be an integer matrix");
    }
    if (j.contains("rel_prec")) inst.rel_prec = static_cast<int>(as_long(j["rel_prec"], "/rel_prec"));
    if (j.contains("denom_budget")) inst.denom_budget = static_cast<int>(as_long(j["denom_budget"], "/denom_budget"));
    if (inst.rel_prec < 1) bad("/rel_prec", "must be positive");
    if (inst.denom_budget < 0) bad("/denom_budget", "must be non-negative");

    if (j.contains("basis")) {
        const Json& b = j["basis"];
        BasisSection s;
        s.g = static_cast<std::size_t>(as_long(field(b, "g", "/basis"), "/basis/g"));
        s.g_minus = static_cast<std::size_t>(as_long(field(b, "g_minus", "/basis"), "/basis/g_minus"));
        s.fil0_dual = rational_rows(field(b, "fil0_dual", "/basis"), "/basis/fil0_dual");
        if (b.contains("phi")) s.phi = rational_rows(b["phi"], "/basis/phi");
        if (b.contains("vectors")) s.vectors = rational_rows(b["vectors"], "/basis/vectors");
        inst.basis = std::move(s);
    }
    if (j.contains("coleman")) {
        const Json& c = j["coleman"];
        ColemanSection s;
        s.level = static_cast<int>(as_long(field(c, "level", "/coleman"), "/coleman/level"));
        if (c.contains("vectors")) s.vectors = rational_cube(c["vectors"], "/coleman/vectors");
        if (c.contains("regulators")) s.regulators = rational_cube(c["regulators"], "/coleman/regulators");
        inst.coleman = std::move(s);
    }
    if (j.contains("wach")) {
        const Json& w = j["wach"];
        WachSection s;
        if (w.contains("c")) s.c = as_long(w["c"], "/wach/c");
        if (w.contains("levels")) s.levels = static_cast<int>(as_long(w["levels"], "/wach/levels"));
        if (w.contains("trunc")) s.trunc = static_cast<std::size_t>(as_long(w["trunc"], "/wach/trunc"));
        inst.wach = s;
    }
    return inst;
}

InstanceFile parse_instance_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(ErrorKind::ParseError, std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
    }
    return parse_instance(j);
}

InstanceFile load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_instance_text(ss.str());
    } catch (const Error& e) {
        std::string msg = e.what();
        const std::string prefix = std::string(to_string(e.kind())) + ": ";
        if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
        fail(e.kind(), path + ": " + msg);
    }
}

Json to_json(const InstanceFile& inst) {
    Json out{{"p", inst.p},       {"d", inst.d},
             {"d0", inst.d0},     {"r", inst.r},
             {"C", rows_to_json(inst.C)}, {"rel_prec", inst.rel_prec},
             {"denom_budget", inst.denom_budget}};
    if (inst.basis) {
        Json b{{"g", inst.basis->g}, {"g_minus", inst.basis->g_minus}, {"fil0_dual", rows_to_json(inst.basis->fil0_dual)}};
        if (inst.basis->phi) b["phi"] = rows_to_json(*inst.basis->phi);
        if (inst.basis->vectors) b["vectors"] = rows_to_json(*inst.basis->vectors);
        out["basis"] = b;
    }
    if (inst.coleman) {
        Json vs = Json::array(), rs = Json::array();
        for (const auto& v : inst.coleman->vectors) vs.push_back(rows_to_json(v));
        for (const auto& v : inst.coleman->regulators) rs.push_back(rows_to_json(v));
        out["coleman"] = Json{{"level", inst.coleman->level}, {"vectors", vs}, {"regulators", rs}};
    }
    if (inst.wach) out["wach"] = Json{{"c", inst.wach->c}, {"levels", inst.wach->levels}, {"trunc", inst.wach->trunc}};
    return out;
}

} // namespace padiclog
