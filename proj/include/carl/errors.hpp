#pragma once

#include <stdexcept>
#include <string>

namespace carl {

/// Malformed model document or expression text.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    explicit parse_error(const std::string& msg) : std::runtime_error(msg), position_(0) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Evaluation left the function's domain (division by zero, overflow, tan pole).
class domain_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure: singular system, no convergence, size cap exceeded.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// det(H_{1,4}) = 0: the algebraic constraints do not define z locally.
class regularity_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

} // namespace carl
