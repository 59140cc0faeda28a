#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "padiclog/cli.hpp"

using namespace padiclog;

namespace {

struct Options {
    std::string input;
    std::string out;
    std::string coleman_mode = "roundtrip";
    std::string basis_mode = "check";
    int n = 0;
    std::uint64_t seed = 1;
    std::size_t trunc = 30;
    long pollack_p = 3;
    int pollack_levels = 2;
    long wach_p = 3;
    int wach_levels = 3;
    long c = 4;
    int count = 5;
};

int emit(const CommandOutput& result, const Options& opt) {
    const std::string text = to_json(result).dump(2);
    if (opt.out.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream f(opt.out);
        if (!f) {
            std::cerr << "error: cannot write " << opt.out << '\n';
            return kExitInputError;
        }
        f << text << '\n';
    }
    for (const auto& chk : result.report.checks) {
        if (chk.status == Status::Pass) continue;
        std::cerr << to_string(chk.status) << ": " << chk.name << ": "
                  << (chk.status == Status::Fail ? chk.witness : chk.precision) << '\n';
    }
    std::cerr << result.command << ": " << to_string(result.report.overall()) << " (" << result.report.checks.size()
              << " checks, " << static_cast<long>(result.millis) << " ms)\n";
    return exit_code(result.report);
}

InstanceFile need_input(const Options& opt) {
    if (opt.input.empty()) fail(ErrorKind::InvalidArgument, "--input FILE is required");
    return load_instance(opt.input);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic logarithmic matrices, Coleman maps and admissible bases"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out, "write the JSON result here instead of stdout");
    };

    auto* check = app.add_subcommand("check", "verify the slope / eigenvalue / unit hypotheses");
    check->add_option("--input", opt.input, "instance file")->required();
    add_common(check);

    auto* logm = app.add_subcommand("logmatrix", "build M_n and verify its invariants");
    logm->add_option("--input", opt.input, "instance file")->required();
    logm->add_option("--n", opt.n, "level n >= 1")->required();
    add_common(logm);

    auto* col = app.add_subcommand("coleman", "Coleman map roundtrip or factorisation");
    col->add_option("--input", opt.input, "instance file")->required();
    col->add_option("--mode", opt.coleman_mode, "roundtrip | factor")->capture_default_str();
    col->add_option("--n", opt.n, "level (default: the instance's coleman.level, else 1)");
    col->add_option("--seed", opt.seed, "seed for random Coleman vectors");
    col->add_option("--count", opt.count, "number of random vectors when the instance lists none");
    add_common(col);

    auto* basis = app.add_subcommand("basis", "admissible basis check / construction");
    basis->add_option("--input", opt.input, "instance file with a basis section")->required();
    basis->add_option("--mode", opt.basis_mode, "check | construct | construct-strong")->capture_default_str();
    basis->add_option("--seed", opt.seed, "seed for the randomized strong construction");
    add_common(basis);

    auto* pollack = app.add_subcommand("pollack", "antidiagonal log matrix of the a_p = 0 case");
    pollack->add_option("--p", opt.pollack_p, "odd prime")->capture_default_str();
    pollack->add_option("--levels", opt.pollack_levels, "levels 1..L")->capture_default_str();
    add_common(pollack);

    auto* wach = app.add_subcommand("wach", "Wach module recursions and Gamma-action identities");
    wach->add_option("--p", opt.wach_p, "odd prime")->capture_default_str();
    wach->add_option("--c", opt.c, "gamma acts by the character value c, c = 1 mod p")->capture_default_str();
    wach->add_option("--levels", opt.wach_levels, "levels 1..L")->capture_default_str();
    wach->add_option("--trunc", opt.trunc, "truncation degree in pi")->capture_default_str();
    wach->add_option("--input", opt.input, "optional instance file supplying C");
    add_common(wach);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInputError;
    }

    try {
        if (check->parsed()) return emit(cmd_check(need_input(opt)), opt);
        if (logm->parsed()) return emit(cmd_logmatrix(need_input(opt), opt.n), opt);
        if (col->parsed()) {
            const InstanceFile inst = need_input(opt);
            const int n = opt.n > 0 ? opt.n : (inst.coleman ? inst.coleman->level : 1);
            return emit(cmd_coleman(inst, opt.coleman_mode, n, opt.seed, opt.count), opt);
        }
        if (basis->parsed()) return emit(cmd_basis(need_input(opt), opt.basis_mode, opt.seed), opt);
        if (pollack->parsed()) return emit(cmd_pollack(opt.pollack_p, opt.pollack_levels), opt);
        if (wach->parsed()) {
            std::optional<InstanceFile> inst;
            if (!opt.input.empty()) inst = load_instance(opt.input);
            if (inst && inst->wach) {
                if (wach->count("--c") == 0) opt.c = inst->wach->c;
                if (wach->count("--levels") == 0) opt.wach_levels = inst->wach->levels;
                if (wach->count("--trunc") == 0) opt.trunc = inst->wach->trunc;
                if (wach->count("--p") == 0) opt.wach_p = inst->p;
            }
            return emit(cmd_wach(opt.wach_p, opt.c, opt.wach_levels, opt.trunc, inst ? &*inst : nullptr), opt);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e);
    }
    return kExitInputError;
}
