#include "mcw/report.hpp"

#include <algorithm>

namespace mcw {

void Report::add(std::string law, std::string instance, std::string explanation) {
    violations.push_back({std::move(law), std::move(instance), std::move(explanation)});
    status = Status::Fail;
}

void Report::merge(const Report& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    instances += other.instances;
    skipped += other.skipped;
    if (other.status == Status::BoundExceeded && status != Status::Fail)
        status = Status::BoundExceeded;
    if (other.status == Status::Fail) status = Status::Fail;
}

void Report::finalize() {
    std::sort(violations.begin(), violations.end());
    violations.erase(std::unique(violations.begin(), violations.end()), violations.end());
    if (!violations.empty())
        status = Status::Fail;
    else if (status == Status::Fail)
        status = Status::Pass;
}

std::string to_string(Report::Status s) {
    switch (s) {
        case Report::Status::Pass: return "pass";
        case Report::Status::Fail: return "fail";
        case Report::Status::BoundExceeded: return "bound-exceeded";
    }
    return "unknown";
}

}  // namespace mcw
