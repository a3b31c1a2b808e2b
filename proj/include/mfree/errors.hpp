#pragma once

#include <stdexcept>
#include <string>

namespace mfree {

// Thrown when a request exceeds a configured resource cap (enumeration size,
// state-vector entries, word length).  Callers that surface caps as options
// should map this to a distinct exit status.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a partial-fraction decomposition cannot be completed because the
// denominator has repeated or non-real roots.
class decomposition_error : public std::runtime_error {
public:
    explicit decomposition_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mfree
