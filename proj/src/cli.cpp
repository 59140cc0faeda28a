#include "padiclog/cli.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "padiclog/pollack.hpp"
#include "padiclog/wach.hpp"

namespace padiclog {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Check check_from_error(const std::string& name, const Error& e) {
    if (e.is_precision_issue() || e.kind() == ErrorKind::DenominatorBudgetExceeded)
        return Check::indeterminate(name, e.what());
    return Check::fail(name, e.what());
}

std::vector<Poly> polys(const ContextPtr& ctx, const std::vector<std::vector<mpq_class>>& comps) {
    std::vector<Poly> out;
    for (const auto& c : comps) out.push_back(Poly::from_rationals(ctx, c));
    return out;
}

std::vector<Vector> rational_vectors(const ContextPtr& ctx, const std::vector<std::vector<mpq_class>>& rows) {
    std::vector<Vector> out;
    for (const auto& r : rows) {
        Vector v;
        for (const auto& x : r) v.push_back(PadicScalar::from_rational(ctx, x));
        out.push_back(std::move(v));
    }
    return out;
}

void add_basis_checks(Report& report, const CandidateBasis& b, bool judge_strong) {
    if (b.plain.status != Status::Pass) {
        report.add(b.plain.status == Status::Fail ? Check::fail("admissible", b.plain.witness())
                                                  : Check::indeterminate("admissible", b.plain.witness()));
    } else if (!b.admissible) {
        report.add(Check::fail("admissible", "vectors do not form a Z_p-basis (determinant not a unit)"));
    } else {
        report.add(Check::pass("admissible", "route " + b.route));
    }
    if (b.transformed && judge_strong) {
        const auto& t = *b.transformed;
        if (t.status == Status::Pass && b.admissible) report.add(Check::pass("strongly_admissible"));
        else if (t.status == Status::Indeterminate) report.add(Check::indeterminate("strongly_admissible", t.witness()));
        else report.add(Check::fail("strongly_admissible", t.status == Status::Pass ? "plain family fails" : t.witness()));
    }
    report.notes.push_back(b.saturated ? "saturated: every subset determinant is a unit"
                                       : "not saturated: some subset determinant is a non-unit");
}

} // namespace

int exit_code(const Report& r) {
    switch (r.overall()) {
    case Status::Pass: return kExitPass;
    case Status::Fail: return kExitFail;
    case Status::Indeterminate: return kExitIndeterminate;
    }
    return kExitFail;
}

int exit_code(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::HypothesisFailed:
    case ErrorKind::NotFiltrationAdapted:
    case ErrorKind::DegenerateInput:
        return kExitInputError;
    case ErrorKind::PrecisionLoss:
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::Indeterminate:
    case ErrorKind::DenominatorBudgetExceeded:
    case ErrorKind::SearchExhausted:
        return kExitIndeterminate;
    default:
        return kExitFail;
    }
}

Json to_json(const CommandOutput& out) {
    return Json{{"command", out.command},
                {"parameters", out.parameters},
                {"report", to_json(out.report)},
                {"result", out.result},
                {"timing_ms", out.millis}};
}

CommandOutput cmd_check(const InstanceFile& inst) {
    const auto start = Clock::now();
    CommandOutput out;
    out.command = "check";
    out.parameters = Json{{"p", inst.p}, {"d", inst.d}, {"d0", inst.d0}, {"r", inst.r}, {"rel_prec", inst.rel_prec}};
    const FrobeniusData fd = inst.frobenius(true);
    const HypothesisReport& h = fd.hypotheses();
    out.report = h.report;
    Json slopes = Json::array();
    for (const auto& s : h.polygon.root_valuations) slopes.push_back(s.get_str());
    out.result = Json{{"charpoly", to_json(h.charpoly)},
                      {"root_valuations", slopes},
                      {"polygon_certified", h.polygon.certified},
                      {"C_phi", to_json(fd.C_phi())}};
    out.millis = elapsed_ms(start);
    return out;
}

CommandOutput cmd_logmatrix(const InstanceFile& inst, int n) {
    const auto start = Clock::now();
    if (n < 1) fail(ErrorKind::InvalidArgument, "--n must be at least 1");
    CommandOutput out;
    out.command = "logmatrix";
    out.parameters = Json{{"p", inst.p}, {"n", n}, {"rel_prec", inst.rel_prec}, {"denom_budget", inst.denom_budget}};
    const FrobeniusData fd = inst.frobenius();
    const LogMatrixApprox M = build_Mn(fd, n);
    out.report.add(evaluation_check(fd, M));
    out.report.add(valuation_bound_check(fd, M));
    out.report.add(det_Mn(fd, n).check);
    out.report.add(verify_stabilization(fd, n, n + 1));
    out.result = to_json(M);
    out.millis = elapsed_ms(start);
    return out;
}

CommandOutput cmd_coleman(const InstanceFile& inst, const std::string& mode, int n, std::uint64_t seed, int count) {
    const auto start = Clock::now();
    if (n < 1) fail(ErrorKind::InvalidArgument, "--n must be at least 1");
    CommandOutput out;
    out.command = "coleman";
    out.parameters = Json{{"mode", mode}, {"n", n}, {"seed", seed}, {"p", inst.p}};
    const FrobeniusData fd = inst.frobenius();
    const ContextPtr ctx = fd.context();
    Json items = Json::array();

    if (mode == "roundtrip") {
        std::vector<std::vector<Poly>> inputs;
        if (inst.coleman && !inst.coleman->vectors.empty()) {
            for (const auto& v : inst.coleman->vectors) inputs.push_back(polys(ctx, v));
        } else {
            std::mt19937_64 rng(seed);
            long len = 1;
            for (int i = 0; i < n; ++i) len *= inst.p;
            std::uniform_int_distribution<long> coeff(0, inst.p * inst.p - 1);
            for (int k = 0; k < count; ++k) {
                std::vector<Poly> comps;
                for (std::size_t i = 0; i < fd.size(); ++i) {
                    std::vector<mpz_class> cs;
                    for (long j = 0; j < len; ++j) cs.push_back(coeff(rng));
                    comps.push_back(Poly::from_integers(ctx, cs));
                }
                inputs.push_back(std::move(comps));
            }
        }
        for (std::size_t k = 0; k < inputs.size(); ++k) {
            const std::string name = "roundtrip " + std::to_string(k + 1);
            if (inputs[k].size() != fd.size())
                fail(ErrorKind::InvalidArgument, "/coleman/vectors/" + std::to_string(k) + ": expected " +
                                                     std::to_string(fd.size()) + " components");
            const ColemanVector col = make_coleman(n, inputs[k]);
            const RegulatorVector L = forward(fd, n, col);
            try {
                const ColemanVector back = factor_level(fd, n, L);
                out.report.add(Check::from(name, compare(forward(fd, n, back), L), "forward(factor(L)) differs from L"));
                items.push_back(Json{{"coleman", to_json(col)}, {"regulator", to_json(L)}, {"factored", to_json(back)}});
            } catch (const Error& e) {
                out.report.add(check_from_error(name, e));
            }
        }
    } else if (mode == "factor") {
        if (!inst.coleman || inst.coleman->regulators.empty())
            fail(ErrorKind::InvalidArgument, "factor mode needs /coleman/regulators in the instance");
        for (std::size_t k = 0; k < inst.coleman->regulators.size(); ++k) {
            const std::string name = "factor " + std::to_string(k + 1);
            const auto& comps = inst.coleman->regulators[k];
            if (comps.size() != fd.size())
                fail(ErrorKind::InvalidArgument, "/coleman/regulators/" + std::to_string(k) + ": expected " +
                                                     std::to_string(fd.size()) + " components");
            const RegulatorVector L = make_regulator(n, polys(ctx, comps));
            try {
                const ColemanVector col = factor_level(fd, n, L);
                out.report.add(Check::pass(name, "forward(result) = L verified"));
                items.push_back(Json{{"regulator", to_json(L)}, {"coleman", to_json(col)}});
            } catch (const Error& e) {
                out.report.add(check_from_error(name, e));
            }
        }
    } else {
        fail(ErrorKind::InvalidArgument, "unknown coleman mode \"" + mode + "\" (roundtrip|factor)");
    }
    out.result = Json{{"items", items}};
    out.millis = elapsed_ms(start);
    return out;
}

CommandOutput cmd_basis(const InstanceFile& inst, const std::string& mode, std::uint64_t seed) {
    const auto start = Clock::now();
    CommandOutput out;
    out.command = "basis";
    out.parameters = Json{{"mode", mode}, {"seed", seed}, {"p", inst.p}, {"rel_prec", inst.rel_prec}};
    const LatticeSetup setup = inst.lattice_setup();
    CandidateBasis b;
    if (mode == "check") {
        if (!inst.basis->vectors) fail(ErrorKind::InvalidArgument, "check mode needs /basis/vectors");
        b = certify(setup, rational_vectors(setup.ctx, *inst.basis->vectors), "input");
    } else if (mode == "construct") {
        b = construct_admissible(setup);
    } else if (mode == "construct-strong") {
        StrongSearchOptions opts;
        opts.seed = seed;
        b = construct_strongly_admissible(setup, opts);
    } else {
        fail(ErrorKind::InvalidArgument, "unknown basis mode \"" + mode + "\" (check|construct|construct-strong)");
    }
    add_basis_checks(out.report, b, mode != "construct");
    out.result = to_json(b);
    out.millis = elapsed_ms(start);
    return out;
}

CommandOutput cmd_pollack(long p, int levels) {
    const auto start = Clock::now();
    if (levels < 1) fail(ErrorKind::InvalidArgument, "--levels must be at least 1");
    CommandOutput out;
    out.command = "pollack";
    out.parameters = Json{{"p", p}, {"levels", levels}};
    const PollackInstance inst = PollackInstance::make(PadicContext::make(p, 40, 20));
    Json mats = Json::array();
    for (int n = 1; n <= levels; ++n) {
        out.report.append(verify_antidiagonal(inst, n));
        mats.push_back(to_json(build_Mn(inst.fd, n)));
    }
    std::vector<std::string> notes;
    for (const auto& note : out.report.notes)
        if (std::find(notes.begin(), notes.end(), note) == notes.end()) notes.push_back(note);
    out.report.notes = notes;
    out.result = Json{{"M", mats}};
    out.millis = elapsed_ms(start);
    return out;
}

CommandOutput cmd_wach(long p, long c, int levels, std::size_t trunc, const InstanceFile* inst) {
    const auto start = Clock::now();
    if (levels < 1) fail(ErrorKind::InvalidArgument, "--levels must be at least 1");
    CommandOutput out;
    out.command = "wach";
    out.parameters = Json{{"p", p}, {"c", c}, {"levels", levels}, {"trunc", trunc}};
    const ContextPtr ctx = wach_context(p);
    const FrobeniusData fd = inst ? FrobeniusData::make(ctx, inst->d, inst->d0, inst->r, inst->C)
                                  : FrobeniusData::make(ctx, 2, 1, 1, std::vector<std::vector<mpq_class>>{{0, -1}, {1, 0}});
    const GammaElement g = GammaElement::make(p, c);

    out.report.append(lemma_a_check(fd, g, trunc), "lemma_a ");
    std::vector<WachMatrixTower> towers;
    for (int n = 1; n <= levels; ++n) towers.push_back(build_M_prime(fd, n, trunc));
    out.report.append(towers.back().certificate, "tower ");
    for (int n = 1; n <= levels; ++n)
        out.report.append(certify_G(build_G_gamma(towers[n - 1], g), "G n=" + std::to_string(n)));
    for (int n = 1; n < levels; ++n) out.report.add(verify_commutation(towers[n - 1], towers[n], g));
    Json mp = Json::array();
    for (const auto& m : towers.back().M_primes) mp.push_back(to_json(m));
    out.result = Json{{"M_prime", mp}};
    out.millis = elapsed_ms(start);
    return out;
}

} // namespace padiclog
