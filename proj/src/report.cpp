#include "padiclog/report.hpp"

namespace padiclog {

std::string_view to_string(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Indeterminate: return "indeterminate";
    }
    return "?";
}

Status status_of(Comparison c) {
    switch (c) {
    case Comparison::Equal: return Status::Pass;
    case Comparison::Unequal: return Status::Fail;
    case Comparison::Indistinguishable: return Status::Indeterminate;
    }
    return Status::Fail;
}

Check Check::pass(std::string name, std::string detail) {
    return Check{std::move(name), Status::Pass, std::move(detail), {}};
}

Check Check::fail(std::string name, std::string witness) {
    if (witness.empty()) witness = "(no witness recorded)";
    return Check{std::move(name), Status::Fail, std::move(witness), {}};
}

Check Check::indeterminate(std::string name, std::string shortfall) {
    if (shortfall.empty()) shortfall = "(precision shortfall not recorded)";
    return Check{std::move(name), Status::Indeterminate, {}, std::move(shortfall)};
}

Check Check::from(std::string name, Comparison c, const std::string& witness) {
    switch (c) {
    case Comparison::Equal: return pass(std::move(name));
    case Comparison::Unequal: return fail(std::move(name), witness);
    case Comparison::Indistinguishable:
        return indeterminate(std::move(name), "difference indistinguishable from zero below the certification floor: " + witness);
    }
    return fail(std::move(name), witness);
}

void Report::append(const Report& other, const std::string& prefix) {
    for (const auto& c : other.checks) {
        Check copy = c;
        if (!prefix.empty()) copy.name = prefix + copy.name;
        checks.push_back(std::move(copy));
    }
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

Status Report::overall() const {
    Status s = Status::Pass;
    for (const auto& c : checks) {
        if (c.status == Status::Fail) return Status::Fail;
        if (c.status == Status::Indeterminate) s = Status::Indeterminate;
    }
    return s;
}

const Check* Report::find(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

} // namespace padiclog
