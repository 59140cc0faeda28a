#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "padiclog/padic.hpp"

namespace padiclog {

enum class Status { Pass, Fail, Indeterminate };

std::string_view to_string(Status s);
Status status_of(Comparison c);

/// Outcome of one named verification. A failing check carries a witness,
/// an indeterminate one carries the precision shortfall.
struct Check {
    std::string name;
    Status status = Status::Pass;
    std::string witness;
    std::string precision;

    static Check pass(std::string name, std::string detail = {});
    static Check fail(std::string name, std::string witness);
    static Check indeterminate(std::string name, std::string shortfall);
    /// Pass / Fail / Indeterminate from a three-valued comparison.
    static Check from(std::string name, Comparison c, const std::string& witness);
};

struct Report {
    std::vector<Check> checks;
    std::vector<std::string> notes;

    void add(Check c) { checks.push_back(std::move(c)); }
    void append(const Report& other, const std::string& prefix = {});
    Status overall() const;
    bool passed() const { return overall() == Status::Pass; }
    const Check* find(std::string_view name) const;
};

} // namespace padiclog
