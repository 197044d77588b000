#pragma once

#include <stdexcept>
#include <string>

namespace stf {

// Malformed input: bad file contents, out-of-range ids, bad parameters.
struct InputError : std::runtime_error {
    int line = 0;
    explicit InputError(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

// A self-check failed. Always a bug or a violated precondition, never silent.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoundViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// The input contains more disjoint subdivided claws than the caller promised.
struct SIllegalInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation(what);
}

}  // namespace stf
