#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mcw {

struct Violation {
    std::string law;
    std::string instance;     // serialized diagram data
    std::string explanation;

    auto operator<=>(const Violation&) const = default;
};

/// Outcome of an enumerative law check. `pass` iff no violations were found
/// and no instance had to be abandoned for growing past the bound.
struct Report {
    enum class Status { Pass, Fail, BoundExceeded };

    Status status = Status::Pass;
    std::vector<Violation> violations;
    std::size_t instances = 0;  // instances checked
    std::size_t skipped = 0;    // instances outside the bounded fragment

    void add(std::string law, std::string instance, std::string explanation);
    void merge(const Report& other);
    /// Sorts violations canonically and syncs status with the violation list.
    void finalize();
    bool passed() const { return status == Status::Pass; }
};

std::string to_string(Report::Status s);

}  // namespace mcw
