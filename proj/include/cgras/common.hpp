#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cgras {

/// Raised for contract violations that cannot be reported as a list (bad
/// input to a constructor, a pipeline stage that cannot continue).
class Error : public std::runtime_error {
public:
    Error(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage))
    {
    }

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// One finding of a report-style validator.
struct Issue {
    std::string code;    // stable machine tag, e.g. "A1", "empty-tx"
    std::string message; // human readable, names the offending item

    friend bool operator==(const Issue&, const Issue&) = default;
};

using Report = std::vector<Issue>;

inline bool has_code(const Report& r, const std::string& code)
{
    for (const auto& i : r)
        if (i.code == code)
            return true;
    return false;
}

} // namespace cgras
