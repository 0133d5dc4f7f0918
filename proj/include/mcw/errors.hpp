#pragma once

#include <stdexcept>
#include <string>

namespace mcw {

// Malformed input data: wrong shapes, non-total tables, token mismatches.
// Distinct from law violations, which are reported, not thrown.
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// Input data that parses but fails a declared precondition (monoid laws,
// rig laws, sum witnesses, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An enumerative construction outgrew its configured bound.
struct BoundExceeded : std::runtime_error {
    explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A constructive conversion guaranteed by a theorem failed; indicates an
// implementation bug, never bad input.
struct TheoremViolation : std::logic_error {
    explicit TheoremViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace mcw
