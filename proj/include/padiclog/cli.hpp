#pragma once

#include <cstdint>
#include <string>

#include "padiclog/serialize.hpp"

namespace padiclog {

/// Result of one batch command: the verification report plus whatever the
/// command computed, ready to be written out.
struct CommandOutput {
    std::string command;
    Report report;
    Json result = Json::object();
    Json parameters = Json::object();
    double millis = 0;
};

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitIndeterminate = 2, kExitInputError = 3 };

int exit_code(const Report& r);
/// Input and validation errors map to 3, precision shortfalls to 2,
/// everything else (a definite mathematical failure) to 1.
int exit_code(const Error& e);

Json to_json(const CommandOutput& out);

CommandOutput cmd_check(const InstanceFile& inst);
CommandOutput cmd_logmatrix(const InstanceFile& inst, int n);
/// mode "roundtrip": forward, factor, forward again on the instance's
/// Coleman vectors (or `count` seeded random ones). mode "factor": factor
/// the instance's regulator vectors.
CommandOutput cmd_coleman(const InstanceFile& inst, const std::string& mode, int n, std::uint64_t seed, int count = 5);
/// mode "check" | "construct" | "construct-strong".
CommandOutput cmd_basis(const InstanceFile& inst, const std::string& mode, std::uint64_t seed);
CommandOutput cmd_pollack(long p, int levels);
/// Pollack-type Frobenius unless `inst` supplies C (r = 1).
CommandOutput cmd_wach(long p, long c, int levels, std::size_t trunc, const InstanceFile* inst = nullptr);

} // namespace padiclog
