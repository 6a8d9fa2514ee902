#pragma once

#include <stdexcept>
#include <string>

namespace fundcoef {

// Caller violated an operation's documented precondition.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An internal invariant failed; indicates a bug or corrupted input.
class invariant_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Evaluation point too close to the branch cut of the principal square root.
class branch_cut_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Coefficient data disagrees with itself (e.g. two representatives of one class).
class inconsistent_data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw precondition_error(msg);
}

}  // namespace fundcoef
